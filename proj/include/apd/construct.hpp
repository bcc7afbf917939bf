#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apd/apcheck.hpp"
#include "apd/field.hpp"
#include "apd/perm.hpp"

namespace apd {

inline constexpr const char* kArtifactVersion = "1.0.0";

enum class Construction { p3_swap, two_swap, two_swap_plus_repair, exhaustive };

const char* construction_name(Construction c);
Construction construction_from_name(const std::string& name);

// A verified AP-destroying permutation with its construction trace.
// The permutation is reconstructible from the trace alone.
struct Certificate {
  Field field;
  Permutation perm;
  Construction construction;
  std::optional<elem> y;
  std::optional<elem> z;
  std::vector<std::pair<elem, elem>> repair_swaps;
  std::optional<std::uint64_t> seed;
  bool verified = false;
  std::uint64_t survivor_count = 0;
  std::string content_hash;
};

// Closed-form existence predicate; pure, no search.
bool exists_ap_destroying(std::uint32_t p, std::uint32_t k);

// p = 3, k >= 2: swap the images of -1 and the first admissible y.
Certificate construct_p3(const Field& field);

struct SwapWitness {
  elem witness;
  Permutation perm;
};

// p > 3: swap the images of 3 and y, targeting the single surviving AP
// (1/3, 2/3, 1).  Scans y in increasing encoding; with use_filter the
// four chi-conditions act as a fast pre-filter.
std::optional<SwapWitness> search_y(const Field& field, bool use_filter = true);

// Swap the images of 1/3 and z on top of a search_y output, targeting
// zero survivors.  The filter applies the same chi-conditions at w = 1/z.
std::optional<SwapWitness> search_z(const Field& field, elem y,
                                    const Permutation& f_prime,
                                    bool use_filter = true);

struct RepairOptions {
  std::uint64_t max_steps = 10000;  // per restart
  unsigned restarts = 32;
  std::uint64_t seed = 0;
};

struct RepairResult {
  bool success = false;
  std::optional<Permutation> perm;
  std::vector<std::pair<elem, elem>> swaps;  // applied to the start, in order
  std::uint64_t best_count = 0;
};

// Steepest-descent hill climb over single image swaps, with seeded
// random restarts from perturbations of the start.
RepairResult repair(const Permutation& start, const RepairOptions& opts = {});

struct ConstructOptions {
  std::optional<std::vector<std::uint32_t>> modulus;
  std::uint64_t seed = 0;
  RepairOptions repair;
};

// Full pipeline with brute-force verification as the acceptance
// authority; throws when existence fails or the budget is exhausted.
Certificate full_construct(std::uint32_t p, std::uint32_t k,
                           const ConstructOptions& opts = {});

// SHA-256 of the decimal images joined by commas, lowercase hex.
std::string images_hash(const Permutation& pi);

// Rebuild the permutation from the certificate trace.
Permutation replay_trace(const Certificate& cert);

std::string certificate_to_json(const Certificate& cert, int indent = -1);
Certificate certificate_from_json(const std::string& text);

// The canonical form of the AP (1/3, 2/3, 1); requires p > 3.
CanonicalAP single_survivor_target(const Field& field);

}  // namespace apd
