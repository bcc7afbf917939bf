#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "apd/construct.hpp"

namespace apd {

struct Database {
  std::map<std::string, Certificate> entries;  // key "p^k/[c0,...,ck]"
  std::string artifact_version = kArtifactVersion;
  std::string created_at;
};

std::string database_key(const Field& field);

struct TableSummary {
  std::uint64_t total = 0;
  std::uint64_t p3_swap = 0;
  std::uint64_t two_swap = 0;
  std::uint64_t two_swap_plus_repair = 0;
  std::uint64_t max_repair_swaps = 0;
};

// Certificates for every admissible odd prime power q = p^k <= max_q.
Database run_table(std::uint64_t max_q, unsigned nthreads = 1,
                   TableSummary* summary = nullptr);

std::string database_to_json(const Database& db, int indent = -1);
Database database_from_json(const std::string& text);
void save_database(const Database& db, const std::string& path);
Database load_database(const std::string& path);

struct VerifyResult {
  bool ok = false;
  std::string message;
};

// Re-verifies a parsed certificate: existence, bijection, trace replay,
// survivor recount, content hash.
VerifyResult verify_certificate(const Certificate& cert);
VerifyResult verify_certificate_file(const std::string& path);

// Admissible (p, k) pairs with p odd, ordered by q.
std::vector<std::pair<std::uint32_t, std::uint32_t>> admissible_pairs(
    std::uint64_t max_q);

}  // namespace apd
