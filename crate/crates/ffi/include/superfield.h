#ifndef SUPERFIELD_H
#define SUPERFIELD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SfStatus {
  SF_STATUS_OK = 0,
  SF_STATUS_MISMATCH = 1,
  SF_STATUS_PARSE_ERROR = 2,
  SF_STATUS_INVALID_ARGUMENT = 3,
  SF_STATUS_NULL_POINTER = 4,
  SF_STATUS_INTERNAL = 5,
} SfStatus;

typedef struct SfField SfField;

typedef struct SfPoly SfPoly;

typedef struct SfSignature SfSignature;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 Valid until the next call into this library on the same thread.
 */
const char *sf_last_error_message(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void sf_string_free(char *s);

/*
 Standard signature with `r` even variables and `s` odd ones.

 # Safety
 `out` must be writable.
 */
enum SfStatus sf_signature_new(size_t r, size_t s, struct SfSignature **out);

/*
 # Safety
 `sig` must be null or a live handle.
 */
void sf_signature_free(struct SfSignature *sig);

/*
 # Safety
 `sig` must be a live handle, `input` NUL-terminated, `out` writable.
 */
enum SfStatus sf_poly_parse(const struct SfSignature *sig, const char *input, struct SfPoly **out);

/*
 # Safety
 `poly` must be a live handle and `out` writable.
 */
enum SfStatus sf_poly_print(const struct SfPoly *poly, char **out);

/*
 # Safety
 `poly` must be null or a live handle.
 */
void sf_poly_free(struct SfPoly *poly);

/*
 # Safety
 `sig` must be a live handle, `input` NUL-terminated, `out` writable.
 */
enum SfStatus sf_field_parse(const struct SfSignature *sig,
                             const char *input,
                             struct SfField **out);

/*
 # Safety
 `field` must be a live handle and `out` writable.
 */
enum SfStatus sf_field_print(const struct SfField *field, char **out);

/*
 # Safety
 `field` must be null or a live handle.
 */
void sf_field_free(struct SfField *field);

/*
 `X(f)`.

 # Safety
 Handles must be live and `out` writable.
 */
enum SfStatus sf_field_apply(const struct SfField *field,
                             const struct SfPoly *poly,
                             struct SfPoly **out);

/*
 `[X, Y]`.

 # Safety
 Handles must be live and `out` writable.
 */
enum SfStatus sf_field_bracket(const struct SfField *x,
                               const struct SfField *y,
                               struct SfField **out);

/*
 Certificate document (JSON) showing `nu` lies in the ideal generated by
 `eta`. The document is verified before it is returned.

 # Safety
 Handles must be live and `out` writable.
 */
enum SfStatus sf_certify(const struct SfField *eta, const struct SfField *nu, char **out);

/*
 Parses and re-checks a certificate document. Returns `Ok` when it
 verifies, `Mismatch` when the evaluation differs from the claimed target.

 # Safety
 `document` must be NUL-terminated.
 */
enum SfStatus sf_verify_document(const char *document);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERFIELD_H */
