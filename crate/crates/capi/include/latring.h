/* C interface for the latring finite-semiring toolkit. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every C-ABI call.
 */
typedef enum LatStatus {
  LAT_STATUS_OK = 0,
  LAT_STATUS_NULL_POINTER = 1,
  LAT_STATUS_INVALID_UTF8 = 2,
  LAT_STATUS_PARSE_ERROR = 3,
  LAT_STATUS_WRONG_KIND = 4,
  LAT_STATUS_CHECK_FAILED = 5,
  LAT_STATUS_VALIDATION_FAILED = 6,
  LAT_STATUS_INDEX_OUT_OF_RANGE = 7,
  LAT_STATUS_PANIC = 8,
} LatStatus;

/**
 * Addition flavor selector for analysis.
 */
typedef enum LatFlavor {
  LAT_FLAVOR_LEFT = 0,
  LAT_FLAVOR_RIGHT = 1,
} LatFlavor;

/**
 * An owned analysis report.
 */
typedef struct LatReport LatReport;

/**
 * An owned semiring: tables plus element names.
 */
typedef struct LatSemiring LatSemiring;

/**
 * The message of the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *lat_last_error_message(void);

/**
 * Parses a semiring structure file.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LatStatus lat_semiring_parse(const char *text, struct LatSemiring **out);

/**
 * Builds a semiring from an instance-spec file: the family is realized,
 * validated, and the constructed tables are re-verified.
 *
 * # Safety
 * `spec_text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LatStatus lat_semiring_build(const char *spec_text, struct LatSemiring **out);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `semiring` must be null or a live handle from this library.
 */
size_t lat_semiring_size(const struct LatSemiring *semiring);

/**
 * Looks up `x + y`.
 *
 * # Safety
 * `semiring` must be a live handle and `out` a valid pointer.
 */
enum LatStatus lat_semiring_add(const struct LatSemiring *semiring,
                                size_t x,
                                size_t y,
                                size_t *out);

/**
 * Looks up `x · y`.
 *
 * # Safety
 * `semiring` must be a live handle and `out` a valid pointer.
 */
enum LatStatus lat_semiring_mul(const struct LatSemiring *semiring,
                                size_t x,
                                size_t y,
                                size_t *out);

/**
 * Verifies both associativities and both distributive laws.
 *
 * # Safety
 * `semiring` must be a live handle.
 */
enum LatStatus lat_semiring_check(const struct LatSemiring *semiring);

/**
 * Serializes the semiring back to the canonical file format.
 *
 * # Safety
 * `semiring` must be a live handle and `out` a valid pointer; the
 * returned string must be freed with [`lat_string_free`].
 */
enum LatStatus lat_semiring_serialize(const struct LatSemiring *semiring, char **out);

/**
 * Runs the full decomposition pipeline.
 *
 * # Safety
 * `semiring` must be a live handle and `out` a valid pointer; the
 * report must be freed with [`lat_report_free`].
 */
enum LatStatus lat_semiring_analyze(const struct LatSemiring *semiring,
                                    enum LatFlavor flavor,
                                    struct LatReport **out);

/**
 * 1 if the analyzed table pair is a semiring, 0 if not, -1 on null.
 *
 * # Safety
 * `report` must be null or a live handle from this library.
 */
int32_t lat_report_is_semiring(const struct LatReport *report);

/**
 * 1 if certified a strong distributive lattice of group semirings,
 * 0 if refuted with a witness, -1 if not evaluated or null.
 *
 * # Safety
 * `report` must be null or a live handle from this library.
 */
int32_t lat_report_is_strong(const struct LatReport *report);

/**
 * Number of multiplicative idempotents, or -1 if not evaluated.
 *
 * # Safety
 * `report` must be null or a live handle from this library.
 */
int64_t lat_report_idempotent_count(const struct LatReport *report);

/**
 * The report as sorted `key=value` lines.
 *
 * # Safety
 * `report` must be a live handle and `out` a valid pointer; the
 * returned string must be freed with [`lat_string_free`].
 */
enum LatStatus lat_report_kv(const struct LatReport *report, char **out);

/**
 * Releases a semiring handle. Null is ignored.
 *
 * # Safety
 * `semiring` must be a handle from this library, not yet freed.
 */
void lat_semiring_free(struct LatSemiring *semiring);

/**
 * Releases a report handle. Null is ignored.
 *
 * # Safety
 * `report` must be a handle from this library, not yet freed.
 */
void lat_report_free(struct LatReport *report);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `text` must come from this library, not yet freed.
 */
void lat_string_free(char *text);
