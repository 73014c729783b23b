#ifndef SL2HYPER_H
#define SL2HYPER_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes; the first four match the exit codes of the command line.
 */
typedef enum Sl2Status {
  SL2_STATUS_OK = 0,
  SL2_STATUS_CHECK_FAILED = 1,
  SL2_STATUS_INVALID_ARGUMENT = 2,
  SL2_STATUS_CAP_EXCEEDED = 3,
  SL2_STATUS_INTERNAL = 4,
} Sl2Status;

typedef enum Sl2Level {
  SL2_LEVEL_QUICK = 0,
  SL2_LEVEL_FULL = 1,
} Sl2Level;

/**
 * An element of the hyperalgebra over a fixed prime field.
 */
typedef struct Sl2Element Sl2Element;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null after a success.
 * The pointer stays valid until the next call into this library on the
 * same thread.
 */
const char *sl2_last_error(void);

/**
 * Parses and evaluates `expr` over `F_p`.
 *
 * # Safety
 * `expr` must be a nul-terminated string and `out` a valid pointer.
 */
enum Sl2Status sl2_element_parse(uint32_t p, const char *expr, struct Sl2Element **out);

/**
 * `*out = a * b`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum Sl2Status sl2_element_mul(const struct Sl2Element *a,
                               const struct Sl2Element *b,
                               struct Sl2Element **out);

/**
 * `*out = a + b`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum Sl2Status sl2_element_add(const struct Sl2Element *a,
                               const struct Sl2Element *b,
                               struct Sl2Element **out);

/**
 * Whether two handles hold the same element.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum Sl2Status sl2_element_equal(const struct Sl2Element *a, const struct Sl2Element *b, bool *out);

/**
 * Canonical text of the element, released with [`sl2_string_free`].
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum Sl2Status sl2_element_to_string(const struct Sl2Element *e, char **out);

/**
 * # Safety
 * `e` must be null or a handle from this library not yet freed.
 */
void sl2_element_free(struct Sl2Element *e);

/**
 * JSON report of every block of `A_r`. Returns `CheckFailed` with the
 * report still written when a comparison fails.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum Sl2Status sl2_blocks_json(uint32_t p,
                               uint32_t r,
                               uint64_t dim_cap,
                               enum Sl2Level level,
                               char **out);

/**
 * JSON report of the module generated by `eps` in the block of `pairs`,
 * refused above the default dimension cap.
 *
 * # Safety
 * `pairs` and `eps` must be nul-terminated strings and `out` a valid
 * pointer.
 */
enum Sl2Status sl2_pim_json(uint32_t p,
                            const char *pairs,
                            const char *eps,
                            enum Sl2Level level,
                            char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void sl2_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SL2HYPER_H */
