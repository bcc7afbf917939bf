#include "apd/construct.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace apd {

namespace {

using nlohmann::json;

// Candidate values the p > 3 swaps must avoid: {0, 1/3, 2/3, 1, 3/2, 3}.
std::vector<elem> base_exclusions(const Field& f) {
  return {0,
          f.embed_rational(1, 3),
          f.embed_rational(2, 3),
          1,
          f.embed_rational(3, 2),
          f.embed_int(3)};
}

bool excluded(const std::vector<elem>& excl, elem v) {
  return std::find(excl.begin(), excl.end(), v) != excl.end();
}

// The four chi-conditions of the y-search, evaluated at v (for the
// z-search they are applied to w = 1/z).
bool chi_filter(const Field& f, elem v) {
  const elem three = f.embed_int(3);
  const elem t = f.sub(three, v);  // 3 - v
  const elem a = f.mul(t, f.sub(three, f.mul(f.embed_int(9), v)));
  const elem b = f.mul(three, t);
  const elem c = f.mul(t, f.sub(f.embed_int(27), v));
  const elem d = f.neg(f.mul(v, t));
  return f.legendre(a) != 1 && f.legendre(b) != 1 && f.legendre(c) != 1 &&
         f.legendre(d) != 1;
}

Certificate finalize(Field field, Permutation perm, Construction construction,
                     std::optional<elem> y, std::optional<elem> z,
                     std::vector<std::pair<elem, elem>> repair_swaps,
                     std::optional<std::uint64_t> seed) {
  Certificate cert{std::move(field),
                   std::move(perm),
                   construction,
                   y,
                   z,
                   std::move(repair_swaps),
                   seed,
                   false,
                   0,
                   ""};
  // Independent re-check: the full survivor scan, not the capped
  // variants used during the search.
  const SurvivorReport rep = survivors(cert.perm);
  cert.survivor_count = rep.count;
  cert.verified = rep.count == 0;
  cert.content_hash = images_hash(cert.perm);
  return cert;
}

}  // namespace

const char* construction_name(Construction c) {
  switch (c) {
    case Construction::p3_swap:
      return "p3_swap";
    case Construction::two_swap:
      return "two_swap";
    case Construction::two_swap_plus_repair:
      return "two_swap_plus_repair";
    case Construction::exhaustive:
      return "exhaustive";
  }
  throw std::logic_error("bad construction");
}

Construction construction_from_name(const std::string& name) {
  if (name == "p3_swap") return Construction::p3_swap;
  if (name == "two_swap") return Construction::two_swap;
  if (name == "two_swap_plus_repair") return Construction::two_swap_plus_repair;
  if (name == "exhaustive") return Construction::exhaustive;
  throw std::invalid_argument("unknown construction: " + name);
}

bool exists_ap_destroying(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (p == 2) return false;
  if (k == 1 && (p == 3 || p == 5 || p == 7)) return false;
  return true;
}

CanonicalAP single_survivor_target(const Field& field) {
  if (field.p() <= 3) throw std::domain_error("target defined for p > 3");
  return canonicalize(field, field.embed_rational(2, 3),
                      field.embed_rational(1, 3));
}

Certificate construct_p3(const Field& field) {
  if (field.p() != 3) throw std::invalid_argument("construct_p3 needs p = 3");
  if (field.k() < 2)
    throw std::invalid_argument("no admissible y in F_3");
  const Permutation f = Permutation::base_f(field);
  const elem minus1 = field.neg(1);
  for (std::uint64_t ye = 2; ye < field.q(); ++ye) {
    const elem y = static_cast<elem>(ye);
    if (y == minus1) continue;
    if (field.legendre(field.add(y, 1)) == 1) continue;
    if (field.legendre(field.mul(y, field.add(y, 1))) == 1) continue;
    const Permutation f1 = f.swapped(minus1, y);
    if (destroys_all(f1))
      return finalize(field, f1, Construction::p3_swap, y, std::nullopt, {},
                      std::nullopt);
  }
  throw std::runtime_error("construct_p3 exhausted all candidates");
}

std::optional<SwapWitness> search_y(const Field& field, bool use_filter) {
  if (field.p() <= 3) throw std::invalid_argument("search_y needs p > 3");
  if (field.q() <= 5) return std::nullopt;
  const Permutation f = Permutation::base_f(field);
  const elem three = field.embed_int(3);
  const std::vector<elem> excl = base_exclusions(field);
  const std::vector<CanonicalAP> target = {single_survivor_target(field)};
  for (std::uint64_t ye = 0; ye < field.q(); ++ye) {
    const elem y = static_cast<elem>(ye);
    if (excluded(excl, y)) continue;
    if (use_filter && !chi_filter(field, y)) continue;
    Permutation f1 = f.swapped(three, y);
    if (survivors_exactly(f1, target))
      return SwapWitness{y, std::move(f1)};
  }
  return std::nullopt;
}

std::optional<SwapWitness> search_z(const Field& field, elem y,
                                    const Permutation& f_prime,
                                    bool use_filter) {
  if (field.p() <= 3) throw std::invalid_argument("search_z needs p > 3");
  const elem third = field.embed_rational(1, 3);
  std::vector<elem> excl = base_exclusions(field);
  excl.push_back(y);
  for (std::uint64_t ze = 0; ze < field.q(); ++ze) {
    const elem z = static_cast<elem>(ze);
    if (excluded(excl, z)) continue;
    if (use_filter && !chi_filter(field, field.inv(z))) continue;
    Permutation f2 = f_prime.swapped(third, z);
    if (destroys_all(f2)) return SwapWitness{z, std::move(f2)};
  }
  return std::nullopt;
}

RepairResult repair(const Permutation& start, const RepairOptions& opts) {
  const Field& field = start.field();
  if (field.p() == 2) throw std::invalid_argument("repair needs odd p");
  const std::uint64_t q = field.q();
  const std::uint64_t total = canonical_ap_count(field);

  RepairResult best;
  best.best_count = total + 1;

  for (unsigned restart = 0; restart <= opts.restarts; ++restart) {
    Permutation cur = start;
    std::vector<std::pair<elem, elem>> swaps;
    if (restart > 0) {
      std::mt19937_64 rng(opts.seed + restart);
      std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
      for (int i = 0; i < 3; ++i) {
        elem a = static_cast<elem>(pick(rng));
        elem b = static_cast<elem>(pick(rng));
        while (b == a) b = static_cast<elem>(pick(rng));
        cur = cur.swapped(a, b);
        swaps.emplace_back(a, b);
      }
    }
    std::uint64_t cur_count = count_survivors_capped(cur, total);

    for (std::uint64_t step = 0; step < opts.max_steps && cur_count > 0;
         ++step) {
      // Steepest descent over all single swaps; ascending (a, b) order
      // plus a strict cap implements the smallest-pair tie-break.
      std::uint64_t best_c = cur_count;
      elem best_a = 0, best_b = 0;
      bool improved = false;
      for (elem a = 0; a + 1 < q; ++a)
        for (elem b = a + 1; b < q; ++b) {
          const std::uint64_t c =
              count_survivors_capped(cur.swapped(a, b), best_c - 1);
          if (c < best_c) {
            best_c = c;
            best_a = a;
            best_b = b;
            improved = true;
            if (c == 0) break;
          }
        }
      if (!improved) break;  // local minimum
      cur = cur.swapped(best_a, best_b);
      swaps.emplace_back(best_a, best_b);
      cur_count = best_c;
    }

    if (cur_count < best.best_count) {
      best.best_count = cur_count;
      best.perm = cur;
      best.swaps = swaps;
    }
    if (cur_count == 0) {
      best.success = true;
      return best;
    }
  }
  return best;
}

Certificate full_construct(std::uint32_t p, std::uint32_t k,
                           const ConstructOptions& opts) {
  if (!exists_ap_destroying(p, k))
    throw std::domain_error("no AP-destroying permutation exists for (p, k)");
  const Field field = Field::make(p, k, opts.modulus);

  if (p == 3) return construct_p3(field);

  const Permutation f = Permutation::base_f(field);
  const elem three = field.embed_int(3);
  const elem third = field.embed_rational(1, 3);
  const std::vector<elem> excl = base_exclusions(field);
  const std::vector<CanonicalAP> target = {single_survivor_target(field)};

  std::optional<Permutation> best_perm;
  std::optional<elem> best_y, best_z;
  std::uint64_t best_count = canonical_ap_count(field) + 1;

  // Two passes over y: chi-filtered first, then the remaining candidates.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::uint64_t ye = 0; ye < field.q(); ++ye) {
      const elem y = static_cast<elem>(ye);
      if (excluded(excl, y)) continue;
      const bool filtered = chi_filter(field, y);
      if ((pass == 0) != filtered) continue;
      const Permutation f1 = f.swapped(three, y);
      if (!survivors_exactly(f1, target)) continue;
      for (int zpass = 0; zpass < 2; ++zpass) {
        for (std::uint64_t ze = 0; ze < field.q(); ++ze) {
          const elem z = static_cast<elem>(ze);
          if (excluded(excl, z) || z == y) continue;
          const bool zfiltered = chi_filter(field, field.inv(z));
          if ((zpass == 0) != zfiltered) continue;
          const Permutation f2 = f1.swapped(third, z);
          const std::uint64_t c = count_survivors_capped(f2, best_count - 1);
          if (c == 0)
            return finalize(field, f2, Construction::two_swap, y, z, {},
                            std::nullopt);
          if (c < best_count) {
            best_count = c;
            best_perm = f2;
            best_y = y;
            best_z = z;
          }
        }
      }
    }
  }

  if (!best_perm && field.q() <= 100) {
    // No y reached the single-survivor stage; scan all admissible
    // (y, z) pairs for the least-bad repair start (tiny q only).
    for (std::uint64_t ye = 0; ye < field.q(); ++ye) {
      const elem y = static_cast<elem>(ye);
      if (excluded(excl, y)) continue;
      const Permutation f1 = f.swapped(three, y);
      for (std::uint64_t ze = 0; ze < field.q(); ++ze) {
        const elem z = static_cast<elem>(ze);
        if (excluded(excl, z) || z == y) continue;
        const Permutation f2 = f1.swapped(third, z);
        const std::uint64_t c = count_survivors_capped(f2, best_count - 1);
        if (c < best_count) {
          best_count = c;
          best_perm = f2;
          best_y = y;
          best_z = z;
        }
      }
    }
  } else if (!best_perm) {
    // Greedy repair start: the y minimizing the survivor count, then
    // the best z on top of it.  A full pair scan is too slow here and
    // the repair step tolerates an imperfect start.
    std::uint64_t y_count = canonical_ap_count(field) + 1;
    std::optional<Permutation> y_perm;
    for (std::uint64_t ye = 0; ye < field.q(); ++ye) {
      const elem y = static_cast<elem>(ye);
      if (excluded(excl, y)) continue;
      const Permutation f1 = f.swapped(three, y);
      const std::uint64_t c = count_survivors_capped(f1, y_count - 1);
      if (c < y_count) {
        y_count = c;
        y_perm = f1;
        best_y = y;
      }
    }
    if (y_perm) {
      for (std::uint64_t ze = 0; ze < field.q(); ++ze) {
        const elem z = static_cast<elem>(ze);
        if (excluded(excl, z) || z == *best_y) continue;
        const Permutation f2 = y_perm->swapped(third, z);
        const std::uint64_t c = count_survivors_capped(f2, best_count - 1);
        if (c < best_count) {
          best_count = c;
          best_perm = f2;
          best_z = z;
        }
      }
    }
  }
  if (!best_perm)
    throw std::runtime_error("two-swap search produced no repair start");

  RepairOptions ropts = opts.repair;
  ropts.seed = opts.seed;
  const RepairResult rep = repair(*best_perm, ropts);
  if (!rep.success)
    throw std::runtime_error(
        "repair budget exhausted; best survivor count " +
        std::to_string(rep.best_count));
  return finalize(field, *rep.perm, Construction::two_swap_plus_repair, best_y,
                  best_z, rep.swaps, opts.seed);
}

std::string images_hash(const Permutation& pi) {
  std::string payload;
  payload.reserve(pi.images().size() * 4);
  bool first = true;
  for (elem v : pi.images()) {
    if (!first) payload.push_back(',');
    payload += std::to_string(v);
    first = false;
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(payload.data(), payload.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1)
    throw std::runtime_error("SHA-256 failure");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

Permutation replay_trace(const Certificate& cert) {
  const Field& field = cert.field;
  if (cert.construction == Construction::exhaustive) return cert.perm;
  Permutation pi = Permutation::base_f(field);
  switch (cert.construction) {
    case Construction::p3_swap:
      if (!cert.y) throw std::invalid_argument("p3_swap trace missing y");
      pi = pi.swapped(field.neg(1), *cert.y);
      break;
    case Construction::two_swap:
    case Construction::two_swap_plus_repair:
      if (!cert.y || !cert.z)
        throw std::invalid_argument("two-swap trace missing y or z");
      pi = pi.swapped(field.embed_int(3), *cert.y);
      pi = pi.swapped(field.embed_rational(1, 3), *cert.z);
      break;
    default:
      break;
  }
  for (const auto& [a, b] : cert.repair_swaps) pi = pi.swapped(a, b);
  return pi;
}

std::string certificate_to_json(const Certificate& cert, int indent) {
  json j;
  j["artifact_version"] = kArtifactVersion;
  j["p"] = cert.field.p();
  j["k"] = cert.field.k();
  j["modulus"] = cert.field.modulus();
  j["construction"] = construction_name(cert.construction);
  j["y"] = cert.y ? json(*cert.y) : json(nullptr);
  j["z"] = cert.z ? json(*cert.z) : json(nullptr);
  json swaps = json::array();
  for (const auto& [a, b] : cert.repair_swaps) swaps.push_back({a, b});
  j["repair_swaps"] = swaps;
  j["seed"] = cert.seed ? json(*cert.seed) : json(nullptr);
  j["images"] = cert.perm.images();
  j["survivor_count"] = cert.survivor_count;
  j["content_hash"] = cert.content_hash;
  return indent >= 0 ? j.dump(indent) : j.dump();
}

Certificate certificate_from_json(const std::string& text) {
  const json j = json::parse(text);
  const std::uint32_t p = j.at("p").get<std::uint32_t>();
  const std::uint32_t k = j.at("k").get<std::uint32_t>();
  const auto modulus = j.at("modulus").get<std::vector<std::uint32_t>>();
  Field field = Field::make(p, k, modulus);
  Permutation perm(field, j.at("images").get<std::vector<elem>>());
  Certificate cert{field,
                   std::move(perm),
                   construction_from_name(j.at("construction").get<std::string>()),
                   std::nullopt,
                   std::nullopt,
                   {},
                   std::nullopt,
                   false,
                   0,
                   j.at("content_hash").get<std::string>()};
  if (!j.at("y").is_null()) cert.y = j.at("y").get<elem>();
  if (!j.at("z").is_null()) cert.z = j.at("z").get<elem>();
  if (!j.at("seed").is_null()) cert.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& s : j.at("repair_swaps"))
    cert.repair_swaps.emplace_back(s.at(0).get<elem>(), s.at(1).get<elem>());
  cert.survivor_count = j.at("survivor_count").get<std::uint64_t>();
  cert.verified = cert.survivor_count == 0;
  return cert;
}

}  // namespace apd
