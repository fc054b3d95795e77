#ifndef SETLAB_H
#define SETLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result of every fallible call.
 */
typedef enum SetlabStatus {
  SETLAB_STATUS_OK = 0,
  /*
   A required pointer was null.
   */
  SETLAB_STATUS_NULL = 1,
  /*
   A precondition of the operation does not hold.
   */
  SETLAB_STATUS_ARGUMENT = 2,
  /*
   Well-formed input beyond what the operation handles.
   */
  SETLAB_STATUS_CAPABILITY = 3,
  /*
   Family text did not parse.
   */
  SETLAB_STATUS_PARSE = 4,
  /*
   A string argument was not UTF-8.
   */
  SETLAB_STATUS_UTF8 = 5,
  /*
   The library panicked; the handle state is unchanged.
   */
  SETLAB_STATUS_PANIC = 6,
  /*
   Internal invariant, checkpoint or I/O failure.
   */
  SETLAB_STATUS_INTERNAL = 7,
} SetlabStatus;

/*
 Opaque family handle.
 */
typedef struct SetlabFamily SetlabFamily;

/*
 Message for the last failed call on this thread; empty after a success.
 The pointer stays valid until the next call on the same thread.
 */
const char *setlab_last_error(void);

/*
 Parses the family text format.
 */
enum SetlabStatus setlab_family_parse(const char *text, struct SetlabFamily **out);

/*
 Releases a handle; null is ignored.
 */
void setlab_family_free(struct SetlabFamily *family);

/*
 Releases a string returned by this library; null is ignored.
 */
void setlab_string_free(char *s);

enum SetlabStatus setlab_family_len(const struct SetlabFamily *family, size_t *out);

enum SetlabStatus setlab_family_ground(const struct SetlabFamily *family, size_t *out);

/*
 The family in the text format.
 */
enum SetlabStatus setlab_family_to_text(const struct SetlabFamily *family, char **out);

enum SetlabStatus setlab_is_conditionally_intersecting(const struct SetlabFamily *family,
                                                       size_t d,
                                                       size_t s,
                                                       size_t t,
                                                       bool *out);

/*
 The image under the shift replacing `j` by `i`.
 */
enum SetlabStatus setlab_shift(const struct SetlabFamily *family,
                               size_t i,
                               size_t j,
                               struct SetlabFamily **out);

enum SetlabStatus setlab_is_stable(const struct SetlabFamily *family, bool *out);

/*
 A stable family reached by repeated shifts.
 */
enum SetlabStatus setlab_stabilize(const struct SetlabFamily *family, struct SetlabFamily **out);

/*
 Least relabeling; fails with `Capability` above the canonicalization
 limit.
 */
enum SetlabStatus setlab_canonical_form(const struct SetlabFamily *family,
                                        struct SetlabFamily **out);

/*
 All `k`-subsets of `[n]` containing `center`.
 */
enum SetlabStatus setlab_construct_star(size_t n,
                                        size_t k,
                                        size_t center,
                                        struct SetlabFamily **out);

/*
 Verifies a named theorem and returns the reports as a JSON array.
 Ranges use the command-line syntax (`6`, `5..7`, `5,7`); unused ranges
 are null. `threads` of 0 uses the default worker count.
 */
enum SetlabStatus setlab_verify_json(const char *theorem,
                                     const char *n,
                                     const char *k,
                                     const char *d,
                                     const char *s,
                                     const char *u,
                                     size_t threads,
                                     char **out);

#endif  /* SETLAB_H */
