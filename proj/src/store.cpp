#include "apd/store.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace apd {

namespace {

using nlohmann::json;

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string database_key(const Field& field) {
  std::ostringstream os;
  os << field.p() << '^' << field.k() << "/[";
  for (std::size_t i = 0; i < field.modulus().size(); ++i) {
    if (i) os << ',';
    os << field.modulus()[i];
  }
  os << ']';
  return os.str();
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> admissible_pairs(
    std::uint64_t max_q) {
  std::vector<std::pair<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>>>
      found;
  for (std::uint64_t p = 3; p <= max_q; p += 2) {
    if (!is_prime(p)) continue;
    std::uint64_t q = p;
    for (std::uint32_t k = 1; q <= max_q; ++k, q *= p) {
      if (exists_ap_destroying(static_cast<std::uint32_t>(p), k))
        found.push_back({q, {static_cast<std::uint32_t>(p), k}});
      if (q > max_q / p) break;
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(found.size());
  for (const auto& f : found) out.push_back(f.second);
  return out;
}

Database run_table(std::uint64_t max_q, unsigned nthreads,
                   TableSummary* summary) {
  if (max_q > 100000) throw std::invalid_argument("max_q capped at 1e5");
  const auto pairs = admissible_pairs(max_q);
  std::vector<std::optional<Certificate>> certs(pairs.size());

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex fail_mu;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= pairs.size() || failed.load()) return;
      try {
        certs[i] = full_construct(pairs[i].first, pairs[i].second);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(fail_mu);
        failed = true;
        failure = "construction failed for p=" +
                  std::to_string(pairs[i].first) + " k=" +
                  std::to_string(pairs[i].second) + ": " + e.what();
        return;
      }
    }
  };

  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed) throw std::runtime_error(failure);

  Database db;
  db.created_at = now_iso8601();
  TableSummary sum;
  for (auto& c : certs) {
    if (!c) continue;
    ++sum.total;
    switch (c->construction) {
      case Construction::p3_swap:
        ++sum.p3_swap;
        break;
      case Construction::two_swap:
        ++sum.two_swap;
        break;
      case Construction::two_swap_plus_repair:
        ++sum.two_swap_plus_repair;
        sum.max_repair_swaps =
            std::max<std::uint64_t>(sum.max_repair_swaps,
                                    c->repair_swaps.size());
        break;
      default:
        break;
    }
    db.entries.emplace(database_key(c->field), std::move(*c));
  }
  if (summary) *summary = sum;
  return db;
}

std::string database_to_json(const Database& db, int indent) {
  json j;
  j["metadata"] = {{"artifact_version", db.artifact_version},
                   {"created_at", db.created_at}};
  json entries = json::object();
  for (const auto& [key, cert] : db.entries)
    entries[key] = json::parse(certificate_to_json(cert));
  j["entries"] = entries;
  return indent >= 0 ? j.dump(indent) : j.dump();
}

Database database_from_json(const std::string& text) {
  const json j = json::parse(text);
  Database db;
  db.artifact_version =
      j.at("metadata").at("artifact_version").get<std::string>();
  db.created_at = j.at("metadata").at("created_at").get<std::string>();
  for (const auto& [key, value] : j.at("entries").items())
    db.entries.emplace(key, certificate_from_json(value.dump()));
  return db;
}

void save_database(const Database& db, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << database_to_json(db, 1) << '\n';
}

Database load_database(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return database_from_json(ss.str());
}

VerifyResult verify_certificate(const Certificate& cert) {
  if (!exists_ap_destroying(cert.field.p(), cert.field.k()))
    return {false, "existence impossible for this (p, k)"};
  // Bijection is enforced by the Permutation constructor on parse.
  if (cert.content_hash != images_hash(cert.perm))
    return {false, "content hash mismatch"};
  try {
    const Permutation replayed = replay_trace(cert);
    if (replayed.images() != cert.perm.images())
      return {false, "trace replay does not reproduce the images"};
  } catch (const std::exception& e) {
    return {false, std::string("trace replay failed: ") + e.what()};
  }
  const std::uint64_t count = count_survivors_capped(cert.perm, 0);
  if (count != 0) return {false, "surviving APs found"};
  return {true, "ok"};
}

VerifyResult verify_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {false, "cannot open " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    const Certificate cert = certificate_from_json(ss.str());
    return verify_certificate(cert);
  } catch (const std::exception& e) {
    return {false, std::string("certificate parse failed: ") + e.what()};
  }
}

}  // namespace apd
