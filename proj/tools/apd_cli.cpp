// Command-line front end; talks to the core exclusively through the
// C API in apdestroy.h.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "apdestroy.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct FieldDeleter {
  void operator()(apd_field* f) const { apd_field_destroy(f); }
};
struct PermDeleter {
  void operator()(apd_perm* p) const { apd_perm_destroy(p); }
};
using FieldPtr = std::unique_ptr<apd_field, FieldDeleter>;
using PermPtr = std::unique_ptr<apd_perm, PermDeleter>;

struct CString {
  char* s = nullptr;
  ~CString() { apd_string_free(s); }
};

int die(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitUsage;
}

int die_api(const std::string& what) {
  std::cerr << "error: " << what << ": " << apd_last_error() << "\n";
  return kExitUsage;
}

std::optional<std::vector<uint32_t>> reference_modulus(uint32_t p, uint32_t k) {
  if (p == 3 && k == 2) return std::vector<uint32_t>{2, 2, 1};
  if (p == 3 && k == 3) return std::vector<uint32_t>{1, 2, 0, 1};
  return std::nullopt;
}

struct FieldArgs {
  uint32_t p = 0;
  uint32_t k = 1;
  std::vector<uint32_t> modulus;
  bool reference_moduli = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--p", p, "characteristic (prime)")->required();
    cmd->add_option("--k", k, "extension degree");
    cmd->add_option("--modulus", modulus,
                    "modulus digits, constant term first (k+1 values)");
    cmd->add_flag("--reference-moduli", reference_moduli,
                  "use the fixed reference F_9 / F_27 presentations");
  }

  // Returns false (after printing) when the arguments are inconsistent.
  bool resolve(std::string& err) {
    if (reference_moduli) {
      if (!modulus.empty()) {
        err = "--modulus and --reference-moduli are mutually exclusive";
        return false;
      }
      const auto m = reference_modulus(p, k);
      if (!m) {
        err = "--reference-moduli is only defined for (3,2) and (3,3)";
        return false;
      }
      modulus = *m;
    }
    return true;
  }

  FieldPtr open() const {
    apd_field* raw = nullptr;
    if (apd_field_create(p, k, modulus.empty() ? nullptr : modulus.data(),
                         modulus.size(), &raw) != APD_OK)
      return nullptr;
    return FieldPtr(raw);
  }
};

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) return false;
  out << text << '\n';
  return out.good();
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_construct(const FieldArgs& fa, uint64_t seed, const std::string& out,
                  bool json_summary) {
  CString cert;
  if (apd_construct_json(fa.p, fa.k,
                         fa.modulus.empty() ? nullptr : fa.modulus.data(),
                         fa.modulus.size(), seed, &cert.s) != APD_OK)
    return die_api("construct");
  if (!out.empty()) {
    if (!write_file(out, cert.s)) return die("cannot write " + out);
  } else {
    std::cout << cert.s << "\n";
  }
  if (json_summary && !out.empty()) {
    const json j = json::parse(cert.s);
    std::cout << json({{"p", fa.p},
                       {"k", fa.k},
                       {"construction", j["construction"]},
                       {"content_hash", j["content_hash"]},
                       {"out", out}})
                     .dump()
              << "\n";
  } else if (!out.empty()) {
    std::cout << "certificate written to " << out << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& path, bool json_out) {
  const auto text = read_file(path);
  if (!text) return die("cannot open " + path);
  int32_t ok = 0;
  CString report;
  if (apd_verify_certificate_json(text->c_str(), &ok, &report.s) != APD_OK)
    return die_api("verify");
  if (json_out)
    std::cout << json({{"file", path},
                       {"verified", ok == 1},
                       {"report", report.s}})
                     .dump()
              << "\n";
  else
    std::cout << path << ": " << (ok ? "VERIFIED" : "FAILED") << " ("
              << report.s << ")\n";
  return ok ? kExitOk : kExitNegative;
}

int cmd_survivors(const FieldArgs& fa, const std::string& perm_spec,
                  bool json_out) {
  const FieldPtr field = fa.open();
  if (!field) return die_api("field");
  PermPtr perm;
  if (perm_spec == "base-f") {
    apd_perm* raw = nullptr;
    if (apd_perm_base_f(field.get(), &raw) != APD_OK)
      return die_api("base-f");
    perm.reset(raw);
  } else {
    const auto text = read_file(perm_spec);
    if (!text) return die("cannot open " + perm_spec);
    json j;
    try {
      j = json::parse(*text);
    } catch (const std::exception& e) {
      return die(std::string("parse failed: ") + e.what());
    }
    const auto images = j.at("images").get<std::vector<uint32_t>>();
    apd_perm* raw = nullptr;
    if (apd_perm_from_images(field.get(), images.data(), images.size(),
                             &raw) != APD_OK)
      return die_api("permutation");
    perm.reset(raw);
  }
  CString rep;
  if (apd_survivors_json(perm.get(), &rep.s) != APD_OK)
    return die_api("survivors");
  const json j = json::parse(rep.s);
  if (json_out) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "survivors: " << j["count"] << "\n";
    for (const auto& t : j["survivors"])
      std::cout << "  (" << t[0].get<uint32_t>() << ", "
                << t[1].get<uint32_t>() << ", " << t[2].get<uint32_t>()
                << ")\n";
  }
  return j["count"].get<uint64_t>() == 0 ? kExitOk : kExitNegative;
}

int cmd_table(uint64_t max_q, uint32_t threads, const std::string& out,
              bool json_out) {
  CString db, summary;
  if (apd_run_table_json(max_q, threads, &db.s, &summary.s) != APD_OK)
    return die_api("table");
  if (!write_file(out, db.s)) return die("cannot write " + out);
  if (json_out) {
    json j = json::parse(summary.s);
    j["out"] = out;
    std::cout << j.dump() << "\n";
  } else {
    const json j = json::parse(summary.s);
    std::cout << "database written to " << out << "\n"
              << "  certificates:          " << j["total"] << "\n"
              << "  p3_swap:               " << j["p3_swap"] << "\n"
              << "  two_swap:              " << j["two_swap"] << "\n"
              << "  two_swap_plus_repair:  " << j["two_swap_plus_repair"]
              << "\n"
              << "  max repair swaps:      " << j["max_repair_swaps"] << "\n";
  }
  return kExitOk;
}

int cmd_nonexist(uint32_t q, bool json_out) {
  // q is a prime power <= 8; recover (p, k).
  uint32_t p = 0, k = 0;
  for (uint32_t cand = 2; cand <= q; ++cand) {
    uint32_t pw = cand, kk = 1;
    while (pw < q) {
      pw *= cand;
      ++kk;
    }
    if (pw == q) {
      bool prime = cand >= 2;
      for (uint32_t d = 2; d * d <= cand; ++d)
        if (cand % d == 0) prime = false;
      if (prime) {
        p = cand;
        k = kk;
        break;
      }
    }
  }
  if (p == 0) return die("q must be a prime power");
  const FieldArgs fa{p, k, {}, false};
  const FieldPtr field = fa.open();
  if (!field) return die_api("field");
  int32_t nonexistent = 0;
  uint64_t best = 0;
  if (apd_exhaustive_nonexistence(field.get(), &nonexistent, &best) != APD_OK)
    return die_api("nonexist");
  if (json_out)
    std::cout << json({{"q", q},
                       {"nonexistent", nonexistent == 1},
                       {"best_survivor_count", best}})
                     .dump()
              << "\n";
  else
    std::cout << "q=" << q << ": "
              << (nonexistent ? "no AP-destroying permutation"
                              : "AP-destroying permutation exists")
              << " (best survivor count " << best << ")\n";
  // Exit 0 when the search confirms nonexistence, 1 otherwise.
  return nonexistent ? kExitOk : kExitNegative;
}

int cmd_charsum(const FieldArgs& fa, const std::string& check, uint64_t seed,
                uint64_t trials) {
  const FieldPtr field = fa.open();
  if (!field) return die_api("field");
  CString res;
  if (apd_charsum_check_json(field.get(), check.c_str(), seed, trials,
                             &res.s) != APD_OK)
    return die_api("charsum");
  std::cout << res.s << "\n";
  const json j = json::parse(res.s);
  return j["failures"].get<uint64_t>() == 0 ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AP-destroying permutations of F_q: construction, "
               "verification and character-sum checks"};
  app.require_subcommand(1);

  // construct
  auto* c_construct =
      app.add_subcommand("construct", "build and verify one certificate");
  FieldArgs construct_fa;
  construct_fa.attach(c_construct);
  uint64_t construct_seed = 0;
  std::string construct_out;
  bool construct_json = false;
  c_construct->add_option("--seed", construct_seed, "repair RNG seed");
  c_construct->add_option("--out", construct_out, "certificate output path");
  c_construct->add_flag("--json", construct_json, "machine-readable summary");

  // verify
  auto* c_verify = app.add_subcommand("verify", "re-verify a certificate file");
  std::string verify_path;
  bool verify_json = false;
  c_verify->add_option("file", verify_path, "certificate JSON file")
      ->required();
  c_verify->add_flag("--json", verify_json, "machine-readable output");

  // survivors
  auto* c_surv =
      app.add_subcommand("survivors", "list APs a permutation fails to destroy");
  FieldArgs surv_fa;
  surv_fa.attach(c_surv);
  std::string surv_perm = "base-f";
  bool surv_json = false;
  c_surv->add_option("--perm", surv_perm,
                     "'base-f' or a certificate/permutation JSON file");
  c_surv->add_flag("--json", surv_json, "machine-readable output");

  // table
  auto* c_table =
      app.add_subcommand("table", "certificates for all admissible q <= max-q");
  uint64_t table_max_q = 0;
  uint32_t table_threads = 1;
  std::string table_out;
  bool table_json = false;
  c_table->add_option("--max-q", table_max_q, "upper bound on q")->required();
  c_table->add_option("--threads", table_threads, "worker threads");
  c_table->add_option("--out", table_out, "database output path")->required();
  c_table->add_flag("--json", table_json, "machine-readable summary");

  // nonexist
  auto* c_nonexist =
      app.add_subcommand("nonexist", "exhaustive nonexistence proof, q <= 8");
  uint32_t nonexist_q = 0;
  bool nonexist_json = false;
  c_nonexist->add_option("--q", nonexist_q, "field order (<= 8)")->required();
  c_nonexist->add_flag("--json", nonexist_json, "machine-readable output");

  // charsum
  auto* c_charsum =
      app.add_subcommand("charsum", "character-sum identity and bound checks");
  FieldArgs charsum_fa;
  charsum_fa.attach(c_charsum);
  std::string charsum_check;
  uint64_t charsum_seed = 1;
  uint64_t charsum_trials = 10000;
  c_charsum
      ->add_option("--check", charsum_check, "one of weil2|hasse|aq|bq")
      ->required();
  c_charsum->add_option("--seed", charsum_seed, "RNG seed (echoed in output)");
  c_charsum->add_option("--trials", charsum_trials, "random trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::string err;
  if (c_construct->parsed()) {
    if (!construct_fa.resolve(err)) return die(err);
    return cmd_construct(construct_fa, construct_seed, construct_out,
                         construct_json);
  }
  if (c_verify->parsed()) return cmd_verify(verify_path, verify_json);
  if (c_surv->parsed()) {
    if (!surv_fa.resolve(err)) return die(err);
    return cmd_survivors(surv_fa, surv_perm, surv_json);
  }
  if (c_table->parsed())
    return cmd_table(table_max_q, table_threads, table_out, table_json);
  if (c_nonexist->parsed()) return cmd_nonexist(nonexist_q, nonexist_json);
  if (c_charsum->parsed()) {
    if (!charsum_fa.resolve(err)) return die(err);
    return cmd_charsum(charsum_fa, charsum_check, charsum_seed,
                       charsum_trials);
  }
  return kExitUsage;
}
