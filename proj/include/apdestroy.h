/* C interface to the AP-destroying permutation library.
 *
 * All functions return APD_OK (0) on success; on failure a nonzero code
 * is returned and apd_last_error() describes the problem (thread-local).
 * Strings returned through char** are heap-allocated; release them with
 * apd_string_free().  Handles are opaque and must be destroyed with the
 * matching *_destroy function.
 */
#ifndef APDESTROY_H
#define APDESTROY_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t apd_status;

#define APD_OK 0
#define APD_ERR_INVALID 1   /* bad argument (non-prime p, reducible modulus, ...) */
#define APD_ERR_DOMAIN 2    /* operation undefined (inverse of 0, p = 2, ...) */
#define APD_ERR_NOT_FOUND 3 /* search exhausted without a witness */
#define APD_ERR_VERIFY 4    /* certificate failed verification */
#define APD_ERR_IO 5        /* parse or file error */
#define APD_ERR_INTERNAL 6

typedef struct apd_field apd_field;
typedef struct apd_perm apd_perm;

const char* apd_last_error(void);
void apd_string_free(char* s);
const char* apd_version(void);

/* --- fields --------------------------------------------------------- */

/* modulus may be NULL (length 0) to request the default modulus;
 * otherwise it is the length-(k+1) digit vector, constant term first. */
apd_status apd_field_create(uint32_t p, uint32_t k, const uint32_t* modulus,
                            size_t modulus_len, apd_field** out);
void apd_field_destroy(apd_field* f);
uint32_t apd_field_p(const apd_field* f);
uint32_t apd_field_k(const apd_field* f);
uint64_t apd_field_q(const apd_field* f);
/* Copies the k+1 modulus digits into buf; *outlen receives the count. */
apd_status apd_field_modulus(const apd_field* f, uint32_t* buf, size_t buflen,
                             size_t* outlen);

apd_status apd_add(const apd_field* f, uint32_t a, uint32_t b, uint32_t* out);
apd_status apd_sub(const apd_field* f, uint32_t a, uint32_t b, uint32_t* out);
apd_status apd_neg(const apd_field* f, uint32_t a, uint32_t* out);
apd_status apd_mul(const apd_field* f, uint32_t a, uint32_t b, uint32_t* out);
apd_status apd_inv(const apd_field* f, uint32_t a, uint32_t* out);
apd_status apd_legendre(const apd_field* f, uint32_t a, int32_t* out);
apd_status apd_embed_rational(const apd_field* f, int64_t num, int64_t den,
                              uint32_t* out);

/* --- permutations ---------------------------------------------------- */

apd_status apd_perm_base_f(const apd_field* f, apd_perm** out);
apd_status apd_perm_identity(const apd_field* f, apd_perm** out);
apd_status apd_perm_from_images(const apd_field* f, const uint32_t* images,
                                size_t n, apd_perm** out);
void apd_perm_destroy(apd_perm* pi);
apd_status apd_perm_image(const apd_perm* pi, uint32_t x, uint32_t* out);
apd_status apd_perm_swap_images(const apd_perm* pi, uint32_t a, uint32_t b,
                                apd_perm** out);
apd_status apd_perm_is_involution(const apd_perm* pi, int32_t* out);

/* --- AP checking ------------------------------------------------------ */

apd_status apd_survivor_count(const apd_perm* pi, uint64_t* count);
/* {"field":{...},"count":N,"survivors":[[enc(a-r),enc(a),enc(a+r)],...]} */
apd_status apd_survivors_json(const apd_perm* pi, char** json_out);
apd_status apd_exhaustive_nonexistence(const apd_field* f,
                                       int32_t* nonexistent,
                                       uint64_t* best_count);

/* --- construction and certificates ----------------------------------- */

/* 1 if an AP-destroying permutation exists, 0 if not, -1 on bad input. */
int32_t apd_exists_ap_destroying(uint32_t p, uint32_t k);
apd_status apd_construct_json(uint32_t p, uint32_t k, const uint32_t* modulus,
                              size_t modulus_len, uint64_t seed,
                              char** cert_json_out);
/* *ok is 1 when the certificate verifies; report describes any failure. */
apd_status apd_verify_certificate_json(const char* cert_json, int32_t* ok,
                                       char** report_out);
apd_status apd_run_table_json(uint64_t max_q, uint32_t nthreads,
                              char** db_json_out, char** summary_json_out);

/* check is one of "weil2", "hasse", "aq", "bq". */
apd_status apd_charsum_check_json(const apd_field* f, const char* check,
                                  uint64_t seed, uint64_t trials,
                                  char** result_json_out);

#ifdef __cplusplus
}
#endif

#endif /* APDESTROY_H */
