#include "apd/apcheck.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace apd {

namespace {

// Shared scan state; survive test specialized for k = 1 to keep the
// O(q^2) kernels free of digit arithmetic.
struct Scanner {
  const Field& field;
  const elem* img;
  std::uint32_t p;
  std::uint64_t q;
  bool prime_field;

  explicit Scanner(const Permutation& pi)
      : field(pi.field()),
        img(pi.images().data()),
        p(pi.field().p()),
        q(pi.field().q()),
        prime_field(pi.field().k() == 1) {}

  bool survives(elem a, elem r) const {
    elem left, right;
    if (prime_field) {
      left = a >= r ? a - r : static_cast<elem>(a + q - r);
      const std::uint64_t s = std::uint64_t{a} + r;
      right = static_cast<elem>(s >= q ? s - q : s);
    } else {
      left = field.sub(a, r);
      right = field.add(a, r);
    }
    const elem x = img[left], y = img[a], z = img[right];
    if (p == 3) {
      // In characteristic 3 a distinct triple is an AP in some ordering
      // iff its sum vanishes.
      if (prime_field) return (x + y + z) % 3 == 0;
      return field.add(field.add(x, y), z) == 0;
    }
    if (prime_field) {
      const std::uint64_t lhs = (std::uint64_t{x} + z) % q;
      const std::uint64_t rhs = (2 * std::uint64_t{y}) % q;
      return lhs == rhs;
    }
    return field.add(x, z) == field.add(y, y);
  }
};

}  // namespace

std::vector<elem> canonical_diffs(const Field& field) {
  std::vector<elem> out;
  for (std::uint64_t r = 1; r < field.q(); ++r) {
    const elem e = static_cast<elem>(r);
    if (e <= field.neg(e)) out.push_back(e);
  }
  return out;
}

std::uint64_t canonical_ap_count(const Field& field) {
  const std::uint64_t q = field.q();
  return field.p() == 2 ? q * (q - 1) : q * (q - 1) / 2;
}

CanonicalAP canonicalize(const Field& field, elem a, elem r) {
  if (r == 0) throw std::invalid_argument("AP difference must be nonzero");
  const elem m = field.neg(r);
  return CanonicalAP{a, std::min(r, m)};
}

bool ap_survives(const Permutation& pi, const CanonicalAP& ap) {
  if (ap.r == 0) throw std::invalid_argument("AP difference must be nonzero");
  return Scanner(pi).survives(ap.a, ap.r);
}

SurvivorReport survivors(const Permutation& pi, unsigned nthreads) {
  const Scanner sc(pi);
  const std::vector<elem> diffs = canonical_diffs(pi.field());
  const std::uint64_t q = sc.q;

  auto scan_range = [&](std::uint64_t lo, std::uint64_t hi,
                        std::vector<CanonicalAP>& out) {
    for (std::uint64_t a = lo; a < hi; ++a)
      for (elem r : diffs)
        if (sc.survives(static_cast<elem>(a), r))
          out.push_back({static_cast<elem>(a), r});
  };

  SurvivorReport rep;
  if (nthreads <= 1 || q < 64) {
    scan_range(0, q, rep.survivors);
  } else {
    std::vector<std::vector<CanonicalAP>> parts(nthreads);
    std::vector<std::thread> workers;
    const std::uint64_t chunk = (q + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
      const std::uint64_t lo = std::min<std::uint64_t>(t * chunk, q);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, q);
      workers.emplace_back(scan_range, lo, hi, std::ref(parts[t]));
    }
    for (auto& w : workers) w.join();
    for (auto& part : parts)
      rep.survivors.insert(rep.survivors.end(), part.begin(), part.end());
  }
  rep.count = rep.survivors.size();
  return rep;
}

std::uint64_t count_survivors_capped(const Permutation& pi,
                                     std::uint64_t cap) {
  const Scanner sc(pi);
  const std::vector<elem> diffs = canonical_diffs(pi.field());
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < sc.q; ++a)
    for (elem r : diffs)
      if (sc.survives(static_cast<elem>(a), r))
        if (++count > cap) return count;
  return count;
}

bool destroys_all(const Permutation& pi) {
  return count_survivors_capped(pi, 0) == 0;
}

bool survivors_exactly(const Permutation& pi,
                       const std::vector<CanonicalAP>& expected) {
  const Scanner sc(pi);
  const std::vector<elem> diffs = canonical_diffs(pi.field());
  std::size_t hits = 0;
  for (std::uint64_t a = 0; a < sc.q; ++a)
    for (elem r : diffs)
      if (sc.survives(static_cast<elem>(a), r)) {
        const CanonicalAP ap{static_cast<elem>(a), r};
        if (std::find(expected.begin(), expected.end(), ap) == expected.end())
          return false;
        ++hits;
      }
  return hits == expected.size();
}

NonexistenceResult exhaustive_nonexistence(const Field& field) {
  const std::uint64_t q = field.q();
  if (q > 8) throw std::invalid_argument("exhaustive search limited to q <= 8");
  std::vector<elem> img(q);
  std::iota(img.begin(), img.end(), 0);
  NonexistenceResult res;
  res.best_survivor_count = canonical_ap_count(field) + 1;
  do {
    Permutation pi(field, img);
    const std::uint64_t c =
        count_survivors_capped(pi, res.best_survivor_count - 1);
    if (c < res.best_survivor_count) res.best_survivor_count = c;
    if (c == 0) break;
  } while (std::next_permutation(img.begin(), img.end()));
  res.nonexistent = res.best_survivor_count > 0;
  return res;
}

}  // namespace apd
