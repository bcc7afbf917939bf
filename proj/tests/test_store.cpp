#include <cstdio>
#include <fstream>

#include "apd/store.hpp"
#include "doctest.h"
#include "json.hpp"

using apd::Database;
using apd::Field;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("admissible pairs up to 31") {
  const auto pairs = apd::admissible_pairs(31);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> expected = {
      {3, 2}, {11, 1}, {13, 1}, {17, 1}, {19, 1},
      {23, 1}, {5, 2}, {3, 3}, {29, 1}, {31, 1}};
  CHECK(pairs == expected);
}

TEST_CASE("database keys") {
  CHECK(apd::database_key(Field::make(3, 2, {{2, 2, 1}})) == "3^2/[2,2,1]");
  CHECK(apd::database_key(Field::make(13, 1)) == "13^1/[0,1]");
}

TEST_CASE("run_table to q = 31 verifies every entry") {
  apd::TableSummary summary;
  const Database db = apd::run_table(31, 2, &summary);
  CHECK(db.entries.size() == 10);
  CHECK(summary.total == 10);
  CHECK(summary.p3_swap + summary.two_swap + summary.two_swap_plus_repair ==
        summary.total);
  CHECK(summary.two_swap_plus_repair >= 4);  // q in {11, 13, 29, 31}
  for (const auto& [key, cert] : db.entries) {
    INFO("entry ", key);
    CHECK(cert.verified);
    CHECK(cert.survivor_count == 0);
    const apd::VerifyResult res = apd::verify_certificate(cert);
    CHECK_MESSAGE(res.ok, res.message);
  }
}

TEST_CASE("run_table is deterministic apart from the timestamp") {
  apd::Database a = apd::run_table(27, 2);
  apd::Database b = apd::run_table(27, 1);
  a.created_at.clear();
  b.created_at.clear();
  CHECK(apd::database_to_json(a) == apd::database_to_json(b));
}

TEST_CASE("database JSON and file round trip") {
  const Database db = apd::run_table(13);
  const std::string text = apd::database_to_json(db, 2);
  const Database back = apd::database_from_json(text);
  CHECK(back.entries.size() == db.entries.size());
  CHECK(back.artifact_version == db.artifact_version);
  for (const auto& [key, cert] : db.entries) {
    REQUIRE(back.entries.count(key) == 1);
    CHECK(back.entries.at(key).perm.images() == cert.perm.images());
    CHECK(back.entries.at(key).content_hash == cert.content_hash);
  }

  TempFile tmp("apd_store_test_db.json");
  apd::save_database(db, tmp.path);
  const Database loaded = apd::load_database(tmp.path);
  CHECK(apd::database_to_json(loaded) == apd::database_to_json(db));
}

TEST_CASE("verify_certificate_file accepts the genuine artifact") {
  const apd::Certificate cert = apd::full_construct(13, 1);
  TempFile tmp("apd_store_test_cert.json");
  {
    std::ofstream out(tmp.path);
    out << apd::certificate_to_json(cert, 2);
  }
  const apd::VerifyResult res = apd::verify_certificate_file(tmp.path);
  CHECK_MESSAGE(res.ok, res.message);
}

TEST_CASE("verify_certificate_file rejects tampering") {
  const apd::Certificate cert = apd::full_construct(13, 1);
  nlohmann::json j = nlohmann::json::parse(apd::certificate_to_json(cert));

  TempFile tmp("apd_store_test_tamper.json");
  auto write_and_verify = [&](const nlohmann::json& doc) {
    std::ofstream out(tmp.path);
    out << doc.dump();
    out.close();
    return apd::verify_certificate_file(tmp.path);
  };

  // Swap two images: hash mismatch.
  nlohmann::json bad_images = j;
  std::swap(bad_images["images"][0], bad_images["images"][1]);
  CHECK_FALSE(write_and_verify(bad_images).ok);

  // Consistent images + hash, but the trace no longer reproduces them.
  nlohmann::json bad_trace = j;
  bad_trace["y"] = (j["y"].get<std::uint64_t>() + 1) % 13;
  CHECK_FALSE(write_and_verify(bad_trace).ok);

  // Unparseable file.
  {
    std::ofstream out(tmp.path);
    out << "not json";
  }
  const apd::VerifyResult res = apd::verify_certificate_file(tmp.path);
  CHECK_FALSE(res.ok);
  CHECK(res.message.find("parse") != std::string::npos);

  CHECK_FALSE(apd::verify_certificate_file("/tmp/definitely-missing.json").ok);
}

TEST_CASE("verify_certificate rejects nonexistent parameters") {
  // Forge a (7, 1) certificate around the identity-free best effort.
  const Field f7 = Field::make(7, 1);
  apd::Certificate fake{f7,
                        apd::Permutation::base_f(f7),
                        apd::Construction::exhaustive,
                        std::nullopt,
                        std::nullopt,
                        {},
                        std::nullopt,
                        true,
                        0,
                        ""};
  fake.content_hash = apd::images_hash(fake.perm);
  const apd::VerifyResult res = apd::verify_certificate(fake);
  CHECK_FALSE(res.ok);
}

TEST_CASE("run_table input validation") {
  CHECK_THROWS_AS(apd::run_table(200000), std::invalid_argument);
  CHECK(apd::run_table(7).entries.empty());
}
