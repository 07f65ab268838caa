#ifndef SEQVOTE_H
#define SEQVOTE_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define SEQVOTE_OK 0

#define SEQVOTE_ERR_NULL 1

#define SEQVOTE_ERR_UTF8 2

#define SEQVOTE_ERR_PARSE 3

#define SEQVOTE_ERR_INVALID 4

#define SEQVOTE_ERR_EVEN_WEIGHT 5

#define SEQVOTE_ERR_INCOMPLETE 6

#define SEQVOTE_ERR_CAPACITY 7

#define SEQVOTE_ERR_UNDECIDED 8

#define SEQVOTE_ERR_BUFFER 9

#define SEQVOTE_ERR_PANIC 10

#define SEQVOTE_SUCCESSIVE 0

#define SEQVOTE_AMENDMENT 1

#define SEQVOTE_TIES_REJECT 0

#define SEQVOTE_TIES_STATUS_QUO 1

// A possibly partial agenda over a profile's alternatives.
typedef struct SeqvoteAgenda SeqvoteAgenda;

// A weighted, possibly partial, preference profile.
typedef struct SeqvoteProfile SeqvoteProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL after a
// success. Owned by the library.
const char *seqvote_last_error(void);

// Parses Preflib text (soc, soi, toc or toi).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
int32_t seqvote_profile_parse_preflib(const char *text, struct SeqvoteProfile **out);

// Parses a JSON instance. When `agenda_out` is non-NULL it receives the
// instance's agenda, or NULL if the file has none.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable;
// `agenda_out` may be NULL.
int32_t seqvote_profile_parse_json(const char *text,
                                   struct SeqvoteProfile **out,
                                   struct SeqvoteAgenda **agenda_out);

// # Safety
// `profile` must come from a parse function and not be freed twice.
void seqvote_profile_free(struct SeqvoteProfile *profile);

// # Safety
// `profile` must be a live handle; `out` must be writable.
int32_t seqvote_profile_num_alternatives(const struct SeqvoteProfile *profile, size_t *out);

// Total voter weight.
//
// # Safety
// `profile` must be a live handle; `out` must be writable.
int32_t seqvote_profile_total_weight(const struct SeqvoteProfile *profile, uint64_t *out);

// Id of the alternative labelled `label`.
//
// # Safety
// `profile` must be a live handle; `label` NUL-terminated; `out` writable.
int32_t seqvote_profile_alternative_id(const struct SeqvoteProfile *profile,
                                       const char *label,
                                       size_t *out);

// Parses `a>b>c` agenda text against a profile's labels; `,` separates
// independent fragments of a partial agenda.
//
// # Safety
// `profile` must be a live handle; `text` NUL-terminated; `out` writable.
int32_t seqvote_agenda_parse(const struct SeqvoteProfile *profile,
                             const char *text,
                             struct SeqvoteAgenda **out);

// # Safety
// `agenda` must come from a parse function and not be freed twice.
void seqvote_agenda_free(struct SeqvoteAgenda *agenda);

// Winner under a complete agenda.
//
// # Safety
// Handles must be live; `out` writable.
int32_t seqvote_winner(const struct SeqvoteProfile *profile,
                       const struct SeqvoteAgenda *agenda,
                       uint32_t procedure_code,
                       uint32_t tie_policy_code,
                       size_t *out);

// Writes the ids of every controllable alternative, ascending, into
// `buffer` and their number into `len`. `capacity` must be at least the
// number of alternatives.
//
// # Safety
// `profile` must be live; `buffer` must hold `capacity` entries; `len`
// writable.
int32_t seqvote_controllable_set(const struct SeqvoteProfile *profile,
                                 uint32_t procedure_code,
                                 uint32_t tie_policy_code,
                                 size_t *buffer,
                                 size_t capacity,
                                 size_t *len);

// Whether `k` added unit voters can make `target` win under a complete
// agenda.
//
// # Safety
// Handles must be live; `out` writable.
int32_t seqvote_manipulate(const struct SeqvoteProfile *profile,
                           const struct SeqvoteAgenda *agenda,
                           size_t target,
                           uint64_t k,
                           uint32_t procedure_code,
                           bool *out);

// Least coalition weight that makes `target` win; total weight + 1 when
// none up to that size does.
//
// # Safety
// Handles must be live; `out` writable.
int32_t seqvote_min_coalition_size(const struct SeqvoteProfile *profile,
                                   const struct SeqvoteAgenda *agenda,
                                   size_t target,
                                   uint32_t procedure_code,
                                   uint64_t *out);

// Whether `target` wins in some completion of the profile and agenda.
// A NULL agenda leaves the order entirely open.
//
// # Safety
// `profile` must be live; `agenda` live or NULL; `out` writable.
int32_t seqvote_possible_winner(const struct SeqvoteProfile *profile,
                                const struct SeqvoteAgenda *agenda,
                                size_t target,
                                uint32_t procedure_code,
                                uint32_t tie_policy_code,
                                bool *out);

// Whether `target` wins in every completion of the profile and agenda.
// A NULL agenda leaves the order entirely open.
//
// # Safety
// `profile` must be live; `agenda` live or NULL; `out` writable.
int32_t seqvote_necessary_winner(const struct SeqvoteProfile *profile,
                                 const struct SeqvoteAgenda *agenda,
                                 size_t target,
                                 uint32_t procedure_code,
                                 uint32_t tie_policy_code,
                                 bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEQVOTE_H */
