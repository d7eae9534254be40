//! Round-trip verification: build an instance, decompose the result,
//! and compare the recovered connecting maps with the construction
//! input, pointwise.

use crate::analyze::{full_analysis_with_flavor, Finding};
use crate::group_semiring::AdditionFlavor;
use crate::sdl::{derive_psi, GroupComponentFamily, IsoFamily, SemiringTable};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoundtripError {
    #[error("analysis did not certify the built semiring as strong: {stage} {detail}")]
    NotStrong { stage: &'static str, detail: String },
    #[error("built table carries no component labeling")]
    NoLabels,
    #[error("expected {expected} idempotents (one per lattice element), found {found}")]
    IdempotentCount { expected: usize, found: usize },
    #[error("idempotent {index} lives in component {actual}, expected {expected}")]
    ComponentOrderMismatch {
        index: usize,
        expected: usize,
        actual: usize,
    },
    #[error("recovered component {component} has {actual} elements, construction used {expected}")]
    ComponentSizeMismatch {
        component: usize,
        expected: usize,
        actual: usize,
    },
    #[error("recovered downward map ({src} -> {target}) differs from the construction input at element {element}")]
    PhiMismatch {
        src: usize,
        target: usize,
        element: usize,
    },
    #[error("recovered upward map ({src} -> {target}) is not the inverse of the input at element {element}")]
    PsiMismatch {
        src: usize,
        target: usize,
        element: usize,
    },
}

/// Checks that decomposing `built` recovers exactly the construction
/// input: the downward maps pointwise equal to `isos` and the upward
/// maps pointwise equal to their inverses.
pub fn verify_roundtrip(
    fam: &GroupComponentFamily,
    isos: &IsoFamily,
    built: &SemiringTable,
    flavor: AdditionFlavor,
) -> Result<(), RoundtripError> {
    let report = full_analysis_with_flavor(built.add_table(), built.mul_table(), flavor);
    let not_strong =
        |stage: &'static str, detail: String| RoundtripError::NotStrong { stage, detail };
    if let Err(v) = &report.semiring {
        return Err(not_strong("semiring", v.to_string()));
    }
    let induced = match &report.idempotent_lattice {
        Finding::Ok(l) => l,
        other => return Err(not_strong("idempotent-lattice", finding_detail(other))),
    };
    let comps = match &report.components {
        Finding::Ok(c) => c,
        other => return Err(not_strong("components", finding_detail(other))),
    };
    let recovered = match &report.recovered {
        Finding::Ok(r) => r,
        other => return Err(not_strong("recovery", finding_detail(other))),
    };
    if let Finding::Failed(d) = &report.strong {
        return Err(not_strong("strong", d.to_string()));
    }
    if !report.strong.is_ok() {
        return Err(not_strong("strong", "not evaluated".into()));
    }

    let labels = built.labels().ok_or(RoundtripError::NoLabels)?;
    let lattice_size = fam.lattice().size();
    if induced.elements.len() != lattice_size {
        return Err(RoundtripError::IdempotentCount {
            expected: lattice_size,
            found: induced.elements.len(),
        });
    }
    // Components were laid out in lattice order, so the ascending
    // idempotents must land one per lattice element, in order, and the
    // sorted H-classes must list each component's members in their
    // original group order. Everything after relies on this alignment.
    for (index, &e) in induced.elements.iter().enumerate() {
        let actual = labels[e].component;
        if actual != index {
            return Err(RoundtripError::ComponentOrderMismatch {
                index,
                expected: index,
                actual,
            });
        }
    }
    for alpha in 0..lattice_size {
        let expected = fam.component(alpha).order();
        let actual = comps.members(alpha).len();
        if actual != expected {
            return Err(RoundtripError::ComponentSizeMismatch {
                component: alpha,
                expected,
                actual,
            });
        }
    }
    for (&(source, target), input_map) in isos.iter() {
        let recovered_map = recovered
            .phi
            .get(source, target)
            .expect("strong analysis recovered every pair");
        if let Some(element) =
            (0..input_map.source_size()).find(|&x| input_map.apply(x) != recovered_map.apply(x))
        {
            return Err(RoundtripError::PhiMismatch {
                src: source,
                target,
                element,
            });
        }
    }
    let expected_psi = derive_psi(isos).expect("construction input is invertible");
    for (&(source, target), expected_map) in expected_psi.iter() {
        let recovered_map = recovered
            .psi
            .get(source, target)
            .expect("strong analysis recovered every pair");
        if let Some(element) = (0..expected_map.source_size())
            .find(|&x| expected_map.apply(x) != recovered_map.apply(x))
        {
            return Err(RoundtripError::PsiMismatch {
                src: source,
                target,
                element,
            });
        }
    }
    Ok(())
}

fn finding_detail<T, W: std::fmt::Display>(f: &Finding<T, W>) -> String {
    match f {
        Finding::Ok(_) => "ok".into(),
        Finding::Failed(w) => w.to_string(),
        Finding::NotEvaluated => "not evaluated".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chain_lattice, constant_family, cyclic_group, twisted_family};
    use crate::hom::HomMap;
    use crate::sdl::{build_strong_sdl, BuildOptions};

    #[test]
    fn identity_instance_round_trips() {
        let (fam, isos) = constant_family(chain_lattice(2).unwrap(), cyclic_group(2).unwrap());
        let built = build_strong_sdl(&fam, &isos, BuildOptions::default()).unwrap();
        verify_roundtrip(&fam, &isos, &built, AdditionFlavor::LeftZero).unwrap();
    }

    #[test]
    fn twisted_instance_round_trips() {
        let twist = HomMap::new(3, 3, vec![0, 2, 1]).unwrap();
        let (fam, isos) =
            twisted_family(chain_lattice(3).unwrap(), cyclic_group(3).unwrap(), &twist).unwrap();
        let built = build_strong_sdl(&fam, &isos, BuildOptions::default()).unwrap();
        verify_roundtrip(&fam, &isos, &built, AdditionFlavor::LeftZero).unwrap();
    }

    #[test]
    fn right_flavor_round_trips_with_matching_analysis() {
        let (fam, isos) = constant_family(chain_lattice(2).unwrap(), cyclic_group(3).unwrap());
        let options = BuildOptions {
            flavor: AdditionFlavor::RightZero,
            self_check: true,
        };
        let built = build_strong_sdl(&fam, &isos, options).unwrap();
        verify_roundtrip(&fam, &isos, &built, AdditionFlavor::RightZero).unwrap();
        // Analyzing with the wrong flavor must not certify it.
        assert!(verify_roundtrip(&fam, &isos, &built, AdditionFlavor::LeftZero).is_err());
    }
}
