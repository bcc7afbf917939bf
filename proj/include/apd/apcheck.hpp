#pragma once

#include <cstdint>
#include <vector>

#include "apd/field.hpp"
#include "apd/perm.hpp"

namespace apd {

// 3-term AP (a-r, a, a+r) by midpoint and difference, canonical under
// r <-> -r: the representative has enc(r) <= enc(-r).
struct CanonicalAP {
  elem a;
  elem r;
  friend bool operator==(const CanonicalAP&, const CanonicalAP&) = default;
};

struct SurvivorReport {
  std::vector<CanonicalAP> survivors;  // sorted by (enc(a), enc(r))
  std::uint64_t count = 0;
};

// Canonical differences in increasing encoding.
std::vector<elem> canonical_diffs(const Field& field);
std::uint64_t canonical_ap_count(const Field& field);
CanonicalAP canonicalize(const Field& field, elem a, elem r);

// True when the image of the AP is again an AP (for p = 3, in any
// ordering; for p > 3 and p = 2, as written or reversed).
bool ap_survives(const Permutation& pi, const CanonicalAP& ap);

SurvivorReport survivors(const Permutation& pi, unsigned nthreads = 1);

// Counts survivors, stopping once the count exceeds cap; the return
// value is exact when <= cap.
std::uint64_t count_survivors_capped(const Permutation& pi,
                                     std::uint64_t cap);
bool destroys_all(const Permutation& pi);
// True iff the survivor set is exactly the given (canonical, sorted) set.
bool survivors_exactly(const Permutation& pi,
                       const std::vector<CanonicalAP>& expected);

struct NonexistenceResult {
  bool nonexistent = false;
  std::uint64_t best_survivor_count = 0;
};

// Enumerates all q! permutations; requires q <= 8.
NonexistenceResult exhaustive_nonexistence(const Field& field);

}  // namespace apd
