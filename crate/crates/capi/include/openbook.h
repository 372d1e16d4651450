#ifndef OPENBOOK_H
#define OPENBOOK_H

/* Generated from the Rust sources by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a call. Anything other than `OB_OK` leaves the out
// parameters untouched and records a message for `ob_last_error`.
typedef enum {
  // Success.
  OB_OK = 0,
  // Invalid input: a bad document, argument, or failed validation.
  OB_INVALID = 1,
  // The operation needs a genus-0 page but the book has positive genus.
  OB_UNSUPPORTED_PAGE = 2,
  // A required pointer argument was NULL.
  OB_NULL_POINTER = 3,
  // A string argument was not valid UTF-8.
  OB_BAD_UTF8 = 4,
  // Unexpected internal failure.
  OB_INTERNAL = 5,
} ObStatus;

// Opaque handle to a planar open book decomposition.
typedef struct ObBook ObBook;

// Opaque handle to a finitely generated abelian group in normal form.
typedef struct ObGroup ObGroup;

// Bounds and filters for `ob_search_csv`, mirroring the `search`
// subcommand of the CLI.
typedef struct {
  // Largest page boundary count to enumerate; at least 1.
  uint32_t max_boundary;
  // Largest total absolute twist exponent per monodromy word.
  uint64_t max_total_exponent;
  // When true, additionally cap each letter's absolute exponent.
  bool has_exponent_bound;
  uint64_t exponent_bound;
  // Optional first-homology filter such as `"Z/5"` or `"Z^2 + Z/2"`;
  // NULL means no filter.
  const char *target;
  // When true, skip books whose norm exceeds `norm_cap`.
  bool has_norm_cap;
  int64_t norm_cap;
  // Worker threads, at least 1. The report bytes do not depend on it.
  size_t jobs;
} ObSearchOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the message recorded by the most recent failing call on this
// thread; the empty string if nothing failed yet. Valid until the next
// failing call on the same thread.
const char *ob_last_error(void);

// Frees a string returned by this library. NULL is allowed.
//
// # Safety
// `s` must have been returned by this library and not freed before.
void ob_string_free(char *s);

// Parses a `page`/`twist` document into a new book handle.
//
// # Safety
// `text` must point to a NUL-terminated string and `out` must be valid
// for a write.
ObStatus ob_book_parse(const char *text, ObBook **out);

// Writes the canonical `page`/`twist` document for `book`.
//
// # Safety
// `book` must be a live handle and `out` valid for a write.
ObStatus ob_book_serialize(const ObBook *book, char **out);

// The open book on the disk page (empty monodromy); underlying manifold
// is the three-sphere.
ObBook *ob_book_disk(void);

// The annulus open book with a single twist of the given power along the
// core curve; `twist` equal to 0 gives the empty word.
ObBook *ob_book_annulus(int64_t twist);

// The trivial (empty-monodromy) book on `boundary_count` boundary
// circles; fails when `boundary_count` is 0.
//
// # Safety
// `out` must be valid for a write.
ObStatus ob_book_trivial(uint32_t boundary_count, ObBook **out);

// Releases a book handle. NULL is allowed.
//
// # Safety
// `book` must have come from this library and not be freed twice.
void ob_book_free(ObBook *book);

// # Safety
// `book` must be a live handle and `out` valid for a write.
ObStatus ob_book_genus(const ObBook *book, uint32_t *out);

// # Safety
// `book` must be a live handle and `out` valid for a write.
ObStatus ob_book_boundary_count(const ObBook *book, uint32_t *out);

// The norm `2g + r - 1` of the book.
//
// # Safety
// `book` must be a live handle and `out` valid for a write.
ObStatus ob_book_norm(const ObBook *book, int64_t *out);

// Euler characteristic `2 - 2g - r` of the page.
//
// # Safety
// `book` must be a live handle and `out` valid for a write.
ObStatus ob_book_euler_char(const ObBook *book, int64_t *out);

// Structural equality of two books (same page, same word).
//
// # Safety
// `a` and `b` must be live handles and `out` valid for a write.
ObStatus ob_book_eq(const ObBook *a, const ObBook *b, bool *out);

// Murasugi sum along outer boundaries; norms add and first homologies
// direct-sum.
//
// # Safety
// `a` and `b` must be live handles and `out` valid for a write.
ObStatus ob_book_plumb(const ObBook *a, const ObBook *b, ObBook **out);

// Hopf-band stabilization: adds one boundary circle and one `+1`/`-1`
// twist running over `attach` (existing holes) and the new hole.
//
// # Safety
// `book` must be a live handle; `attach` must point to `attach_len`
// readable values (NULL is fine when `attach_len` is 0); `out` must be
// valid for a write.
ObStatus ob_book_stabilize(const ObBook *book,
                           bool positive,
                           const uint32_t *attach,
                           size_t attach_len,
                           ObBook **out);

// The canonical representative of the book's equivalence class (cyclic
// reduction plus hole relabeling).
//
// # Safety
// `book` must be a live handle and `out` valid for a write.
ObStatus ob_book_canonical(const ObBook *book, ObBook **out);

// # Safety
// `book` must be a live handle and `out` valid for a write.
ObStatus ob_book_is_canonical(const ObBook *book, bool *out);

// First homology of the 3-manifold underlying the book, via the integer
// surgery presentation. Fails with `OB_UNSUPPORTED_PAGE` on positive
// genus.
//
// # Safety
// `book` must be a live handle and `out` valid for a write.
ObStatus ob_book_h1(const ObBook *book, ObGroup **out);

// First homology of the Seifert space `Y_{p,q,r}`.
ObGroup *ob_seifert_h1(int64_t p, int64_t q, int64_t r);

// Parses a rendered group such as `"0"`, `"Z^2 + Z/4"` back into normal
// form.
//
// # Safety
// `text` must point to a NUL-terminated string and `out` must be valid
// for a write.
ObStatus ob_group_parse(const char *text, ObGroup **out);

// Renders the group, e.g. `"0"`, `"Z"`, `"Z^2 + Z/2 + Z/6"`.
//
// # Safety
// `group` must be a live handle and `out` valid for a write.
ObStatus ob_group_render(const ObGroup *group, char **out);

// # Safety
// `group` must be a live handle and `out` valid for a write.
ObStatus ob_group_rank(const ObGroup *group, uint32_t *out);

// Number of torsion divisors in the normal form.
//
// # Safety
// `group` must be a live handle and `out` valid for a write.
ObStatus ob_group_torsion_len(const ObGroup *group, size_t *out);

// The `index`-th torsion divisor as a decimal string (divisors can
// exceed any machine integer).
//
// # Safety
// `group` must be a live handle and `out` valid for a write.
ObStatus ob_group_torsion_at(const ObGroup *group, size_t index, char **out);

// # Safety
// `group` must be a live handle and `out` valid for a write.
ObStatus ob_group_is_trivial(const ObGroup *group, bool *out);

// # Safety
// `a` and `b` must be live handles and `out` valid for a write.
ObStatus ob_group_eq(const ObGroup *a, const ObGroup *b, bool *out);

// Releases a group handle. NULL is allowed.
//
// # Safety
// `group` must have come from this library and not be freed twice.
void ob_group_free(ObGroup *group);

// d3 of a contact connected sum. Half-integers travel as twice their
// value: passing `a_twice = -1` means `a = -1/2`. Requires torsion first
// Chern class (`c1_torsion`), otherwise fails with `OB_INVALID`.
//
// # Safety
// `out_twice` must be valid for a write.
ObStatus ob_d3_connected_sum(int64_t a_twice, int64_t b_twice, bool c1_torsion, int64_t *out_twice);

// Describes the catalog entry for the book's canonical class as a
// multi-line text block, or writes NULL when the catalog has no entry
// (absence is a normal result).
//
// # Safety
// `book` must be a live handle and `out` valid for a write.
ObStatus ob_catalog_describe(const ObBook *book, char **out);

// Runs the bounded enumeration and writes the CSV report (identical to
// the CLI's `search` output).
//
// # Safety
// `options` must be a readable struct whose `target`, when non-NULL, is a
// NUL-terminated string; `out` must be valid for a write.
ObStatus ob_search_csv(const ObSearchOptions *options, char **out);

// Minimal-norm enumerated book whose first homology equals `target`,
// within the given bounds. Writes NULL to `out_book` (leaving `out_norm`
// alone) when no witness exists in range — an upper bound only: matching
// homology does not identify the manifold.
//
// # Safety
// `target` must be a NUL-terminated string; `out_book` and `out_norm`
// must be valid for writes.
ObStatus ob_cg_upper_bound(uint32_t max_boundary,
                           uint64_t max_total_exponent,
                           const char *target,
                           ObBook **out_book,
                           int64_t *out_norm);

// Writes the annulus-family verification table for twist powers up to
// `m_max` in absolute value (identical to the CLI's `verify-annulus`).
//
// # Safety
// `out` must be valid for a write.
ObStatus ob_verify_annulus(int64_t m_max, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPENBOOK_H */
