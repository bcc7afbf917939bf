#include "apdestroy.h"

#include <cstring>
#include <new>
#include <string>

#include "apd/apcheck.hpp"
#include "apd/charsum.hpp"
#include "apd/construct.hpp"
#include "apd/field.hpp"
#include "apd/perm.hpp"
#include "apd/store.hpp"
#include "json.hpp"

struct apd_field {
  apd::Field field;
};

struct apd_perm {
  apd::Permutation perm;
};

namespace {

thread_local std::string g_last_error;

apd_status fail(apd_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename Fn>
apd_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(APD_ERR_INVALID, e.what());
  } catch (const std::domain_error& e) {
    return fail(APD_ERR_DOMAIN, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(APD_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(APD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(APD_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nlohmann::json field_json(const apd::Field& f) {
  return {{"p", f.p()}, {"k", f.k()}, {"modulus", f.modulus()}};
}

}  // namespace

extern "C" {

const char* apd_last_error(void) { return g_last_error.c_str(); }

void apd_string_free(char* s) { delete[] s; }

const char* apd_version(void) { return apd::kArtifactVersion; }

apd_status apd_field_create(uint32_t p, uint32_t k, const uint32_t* modulus,
                            size_t modulus_len, apd_field** out) {
  if (!out) return fail(APD_ERR_INVALID, "null output pointer");
  return guarded([&] {
    std::optional<std::vector<std::uint32_t>> m;
    if (modulus && modulus_len > 0)
      m = std::vector<std::uint32_t>(modulus, modulus + modulus_len);
    *out = new apd_field{apd::Field::make(p, k, m)};
    return APD_OK;
  });
}

void apd_field_destroy(apd_field* f) { delete f; }

uint32_t apd_field_p(const apd_field* f) { return f->field.p(); }
uint32_t apd_field_k(const apd_field* f) { return f->field.k(); }
uint64_t apd_field_q(const apd_field* f) { return f->field.q(); }

apd_status apd_field_modulus(const apd_field* f, uint32_t* buf, size_t buflen,
                             size_t* outlen) {
  const auto& m = f->field.modulus();
  if (outlen) *outlen = m.size();
  if (buflen < m.size()) return fail(APD_ERR_INVALID, "buffer too small");
  std::memcpy(buf, m.data(), m.size() * sizeof(uint32_t));
  return APD_OK;
}

#define APD_CHECK_ELEM(f, x)                                  \
  if ((x) >= (f)->field.q())                                  \
  return fail(APD_ERR_INVALID, "element encoding out of range")

apd_status apd_add(const apd_field* f, uint32_t a, uint32_t b, uint32_t* out) {
  APD_CHECK_ELEM(f, a);
  APD_CHECK_ELEM(f, b);
  *out = f->field.add(a, b);
  return APD_OK;
}

apd_status apd_sub(const apd_field* f, uint32_t a, uint32_t b, uint32_t* out) {
  APD_CHECK_ELEM(f, a);
  APD_CHECK_ELEM(f, b);
  *out = f->field.sub(a, b);
  return APD_OK;
}

apd_status apd_neg(const apd_field* f, uint32_t a, uint32_t* out) {
  APD_CHECK_ELEM(f, a);
  *out = f->field.neg(a);
  return APD_OK;
}

apd_status apd_mul(const apd_field* f, uint32_t a, uint32_t b, uint32_t* out) {
  APD_CHECK_ELEM(f, a);
  APD_CHECK_ELEM(f, b);
  *out = f->field.mul(a, b);
  return APD_OK;
}

apd_status apd_inv(const apd_field* f, uint32_t a, uint32_t* out) {
  APD_CHECK_ELEM(f, a);
  return guarded([&] {
    *out = f->field.inv(a);
    return APD_OK;
  });
}

apd_status apd_legendre(const apd_field* f, uint32_t a, int32_t* out) {
  APD_CHECK_ELEM(f, a);
  return guarded([&] {
    *out = f->field.legendre(a);
    return APD_OK;
  });
}

apd_status apd_embed_rational(const apd_field* f, int64_t num, int64_t den,
                              uint32_t* out) {
  return guarded([&] {
    *out = f->field.embed_rational(num, den);
    return APD_OK;
  });
}

apd_status apd_perm_base_f(const apd_field* f, apd_perm** out) {
  return guarded([&] {
    *out = new apd_perm{apd::Permutation::base_f(f->field)};
    return APD_OK;
  });
}

apd_status apd_perm_identity(const apd_field* f, apd_perm** out) {
  return guarded([&] {
    *out = new apd_perm{apd::Permutation::identity(f->field)};
    return APD_OK;
  });
}

apd_status apd_perm_from_images(const apd_field* f, const uint32_t* images,
                                size_t n, apd_perm** out) {
  return guarded([&] {
    *out = new apd_perm{apd::Permutation(
        f->field, std::vector<apd::elem>(images, images + n))};
    return APD_OK;
  });
}

void apd_perm_destroy(apd_perm* pi) { delete pi; }

apd_status apd_perm_image(const apd_perm* pi, uint32_t x, uint32_t* out) {
  if (x >= pi->perm.field().q())
    return fail(APD_ERR_INVALID, "element encoding out of range");
  *out = pi->perm(x);
  return APD_OK;
}

apd_status apd_perm_swap_images(const apd_perm* pi, uint32_t a, uint32_t b,
                                apd_perm** out) {
  return guarded([&] {
    if (a >= pi->perm.field().q() || b >= pi->perm.field().q())
      return fail(APD_ERR_INVALID, "element encoding out of range");
    *out = new apd_perm{pi->perm.swapped(a, b)};
    return APD_OK;
  });
}

apd_status apd_perm_is_involution(const apd_perm* pi, int32_t* out) {
  *out = pi->perm.is_involution() ? 1 : 0;
  return APD_OK;
}

apd_status apd_survivor_count(const apd_perm* pi, uint64_t* count) {
  return guarded([&] {
    *count = apd::survivors(pi->perm).count;
    return APD_OK;
  });
}

apd_status apd_survivors_json(const apd_perm* pi, char** json_out) {
  return guarded([&] {
    const apd::SurvivorReport rep = apd::survivors(pi->perm);
    const apd::Field& f = pi->perm.field();
    nlohmann::json j;
    j["field"] = field_json(f);
    j["count"] = rep.count;
    nlohmann::json triples = nlohmann::json::array();
    for (const auto& ap : rep.survivors)
      triples.push_back({f.sub(ap.a, ap.r), ap.a, f.add(ap.a, ap.r)});
    j["survivors"] = triples;
    *json_out = dup_string(j.dump());
    return APD_OK;
  });
}

apd_status apd_exhaustive_nonexistence(const apd_field* f, int32_t* nonexistent,
                                       uint64_t* best_count) {
  return guarded([&] {
    const apd::NonexistenceResult r = apd::exhaustive_nonexistence(f->field);
    *nonexistent = r.nonexistent ? 1 : 0;
    *best_count = r.best_survivor_count;
    return APD_OK;
  });
}

int32_t apd_exists_ap_destroying(uint32_t p, uint32_t k) {
  try {
    return apd::exists_ap_destroying(p, k) ? 1 : 0;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return -1;
  }
}

apd_status apd_construct_json(uint32_t p, uint32_t k, const uint32_t* modulus,
                              size_t modulus_len, uint64_t seed,
                              char** cert_json_out) {
  return guarded([&] {
    apd::ConstructOptions opts;
    if (modulus && modulus_len > 0)
      opts.modulus = std::vector<std::uint32_t>(modulus, modulus + modulus_len);
    opts.seed = seed;
    const apd::Certificate cert = apd::full_construct(p, k, opts);
    *cert_json_out = dup_string(apd::certificate_to_json(cert, 1));
    return APD_OK;
  });
}

apd_status apd_verify_certificate_json(const char* cert_json, int32_t* ok,
                                       char** report_out) {
  return guarded([&] {
    apd::VerifyResult res;
    try {
      const apd::Certificate cert = apd::certificate_from_json(cert_json);
      res = apd::verify_certificate(cert);
    } catch (const std::exception& e) {
      res = {false, std::string("certificate parse failed: ") + e.what()};
    }
    *ok = res.ok ? 1 : 0;
    if (report_out) *report_out = dup_string(res.message);
    return APD_OK;
  });
}

apd_status apd_run_table_json(uint64_t max_q, uint32_t nthreads,
                              char** db_json_out, char** summary_json_out) {
  return guarded([&] {
    apd::TableSummary sum;
    const apd::Database db =
        apd::run_table(max_q, nthreads == 0 ? 1 : nthreads, &sum);
    *db_json_out = dup_string(apd::database_to_json(db, 1));
    if (summary_json_out) {
      nlohmann::json j = {{"total", sum.total},
                          {"p3_swap", sum.p3_swap},
                          {"two_swap", sum.two_swap},
                          {"two_swap_plus_repair", sum.two_swap_plus_repair},
                          {"max_repair_swaps", sum.max_repair_swaps}};
      *summary_json_out = dup_string(j.dump());
    }
    return APD_OK;
  });
}

apd_status apd_charsum_check_json(const apd_field* f, const char* check,
                                  uint64_t seed, uint64_t trials,
                                  char** result_json_out) {
  return guarded([&] {
    const std::string name = check ? check : "";
    apd::SweepResult res;
    if (name == "weil2")
      res = apd::weil2_sweep(f->field, seed, trials);
    else if (name == "hasse")
      res = apd::hasse_sweep(f->field, seed, trials);
    else if (name == "aq")
      res = apd::aq_check(f->field);
    else if (name == "bq")
      res = apd::bq_check(f->field);
    else
      return fail(APD_ERR_INVALID, "unknown check (use weil2|hasse|aq|bq)");
    nlohmann::json j;
    j["field"] = field_json(f->field);
    j["check"] = res.check;
    j["trials"] = res.trials;
    j["failures"] = res.failures;
    j["extremal_lhs"] = res.extremal_lhs;
    j["bound"] = res.bound;
    j["seed"] = seed;
    *result_json_out = dup_string(j.dump());
    return APD_OK;
  });
}

}  // extern "C"
