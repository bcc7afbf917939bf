#include <random>
#include <set>

#include "apd/charsum.hpp"
#include "doctest.h"
#include "oracles.hpp"

using apd::Field;
using apd::PolyOverF;
using apd::elem;

namespace {

PolyOverF make_poly(std::vector<elem> c) { return PolyOverF{std::move(c)}; }

}  // namespace

TEST_CASE("chi_sum worked examples") {
  const Field f13 = Field::make(13, 1);
  CHECK(apd::chi_sum(f13, make_poly({0, 1})) == 0);       // g = x
  CHECK(apd::chi_sum(f13, make_poly({0, 0, 1})) == 12);   // g = x^2

  const Field f7 = Field::make(7, 1);
  const PolyOverF g = make_poly({1, 0, 1});  // x^2 + 1
  CHECK(apd::chi_sum(f7, g) == -1);
  // Cross-check against the root-counting chi oracle.
  long long oracle_sum = 0;
  for (elem y = 0; y < 7; ++y)
    oracle_sum += oracle::chi_by_roots(f7, apd::poly_eval(f7, g, y));
  CHECK(oracle_sum == -1);
}

TEST_CASE("square-multiple detection") {
  const Field f7 = Field::make(7, 1);
  CHECK(apd::is_square_multiple(f7, make_poly({1, 2, 1})));   // (x+1)^2
  CHECK_FALSE(apd::is_square_multiple(f7, make_poly({1, 0, 1})));
  CHECK_FALSE(apd::is_square_multiple(f7, make_poly({0, 6, 0, 1})));
  // 3 * (x^2 + 2x + 5)^2
  const PolyOverF h = make_poly({0, 2, 1});
  PolyOverF sq = make_poly({5, 0, 0, 0, 0});
  const Field f13 = Field::make(13, 1);
  {
    // expand 3*(x^2+2x+5)^2 over F_13 by evaluation-free arithmetic
    const elem c = 3;
    std::vector<elem> hh = {5, 2, 1};
    std::vector<elem> prod(5, 0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        prod[i + j] = f13.add(prod[i + j], f13.mul(hh[i], hh[j]));
    for (auto& v : prod) v = f13.mul(v, c);
    CHECK(apd::is_square_multiple(f13, make_poly(prod)));
  }
}

TEST_CASE("Weil degree <= 2 identity") {
  const Field f7 = Field::make(7, 1);
  CHECK(apd::weil_deg2_check(f7, make_poly({1, 0, 1})));
  CHECK_THROWS_AS(apd::weil_deg2_check(f7, make_poly({1, 2, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(apd::weil_deg2_check(f7, make_poly({3})),
                  std::invalid_argument);

  // g = x(x+1): sum is -1 over any odd field.
  for (const Field& f : {Field::make(7, 1), Field::make(3, 2, {{2, 2, 1}}),
                         Field::make(13, 1), Field::make(3, 3, {{1, 2, 0, 1}})}) {
    const PolyOverF g = make_poly({0, 1, 1});
    CHECK(apd::chi_sum(f, g) == -1);
    CHECK(apd::weil_deg2_check(f, g));
  }

  // Degree 1: the identity specializes with a2 = 0.
  CHECK(apd::weil_deg2_check(f7, make_poly({4, 2})));
}

TEST_CASE("Hasse bound on worked examples") {
  const Field f7 = Field::make(7, 1);
  const apd::HasseResult odd = apd::hasse_check(f7, make_poly({0, 6, 0, 1}));
  CHECK(odd.holds);
  CHECK(odd.lhs == 0);

  // y(3-y)(3y-1), the cubic inside B_q, over F_443.
  const Field f443 = Field::make(443, 1);
  const elem three = f443.embed_int(3);
  // expand y*(3-y)*(3y-1) = -3y^3 + 10y^2 - 3y
  const PolyOverF cubic = make_poly(
      {0, f443.neg(three), f443.embed_int(10), f443.neg(three)});
  CHECK(apd::hasse_check(f443, cubic).holds);

  CHECK_THROWS_AS(apd::hasse_check(f7, make_poly({1, 0, 1})),
                  std::invalid_argument);
}

TEST_CASE("random squarefree quartics over F_121 obey the bound") {
  const Field f = Field::make(11, 2);
  const apd::SweepResult res = apd::hasse_sweep(f, 123, 200);
  CHECK(res.failures == 0);
  CHECK(static_cast<double>(res.extremal_lhs) <= res.bound);
}

TEST_CASE("a_q identity") {
  CHECK(apd::a_q_identity(Field::make(3, 2, {{2, 2, 1}})) == 10);
  CHECK(apd::a_q_identity(Field::make(3, 3, {{1, 2, 0, 1}})) == 28);
  CHECK(apd::a_q_identity(Field::make(13, 1)) == 14);
}

TEST_CASE("B_q expansion equals the product form away from y = 3") {
  for (const Field& f : {Field::make(7, 2), Field::make(11, 2)}) {
    const elem three = f.embed_int(3);
    for (std::uint64_t ye = 0; ye < f.q(); ++ye) {
      const elem y = static_cast<elem>(ye);
      if (y == three) continue;
      CHECK(apd::b_q(f, y) == apd::b_q_product(f, y));
    }
    // Literal evaluation at the excluded point.
    CHECK(apd::b_q_product(f, three) == 1);
  }
  CHECK_THROWS_AS(apd::b_q(Field::make(3, 2), 0), std::domain_error);
}

TEST_CASE("B_q full-field sum meets the lower bound at q = 443") {
  const apd::SweepResult res = apd::bq_check(Field::make(443, 1));
  CHECK(res.failures == 0);
  CHECK(static_cast<double>(res.extremal_lhs) >= res.bound);
}

TEST_CASE("the 16 exceptional rationals embed per the collision oracle") {
  // S from the y-search analysis.
  const std::vector<std::pair<std::int64_t, std::int64_t>> S = {
      {-3, 2}, {-3, 5}, {0, 1},  {1, 3}, {3, 7}, {2, 3}, {3, 4}, {1, 1},
      {5, 4},  {12, 7}, {3, 2},  {3, 1}, {5, 1}, {10, 1}, {11, 1}, {12, 1}};
  for (std::uint64_t p = 17; p <= 500; ++p) {
    if (!apd::is_prime(p)) continue;
    // Exact-rational oracle: a/b == c/d mod p iff p | (ad - cb).
    std::size_t expected = 0;
    for (std::size_t i = 0; i < S.size(); ++i) {
      bool duplicate = false;
      for (std::size_t j = 0; j < i; ++j) {
        const std::int64_t num = S[i].first * S[j].second -
                                 S[j].first * S[i].second;
        if (((num % static_cast<std::int64_t>(p)) +
             static_cast<std::int64_t>(p)) %
                static_cast<std::int64_t>(p) ==
            0)
          duplicate = true;
      }
      if (!duplicate) ++expected;
    }
    const Field f = Field::make(static_cast<std::uint32_t>(p), 1);
    std::set<elem> embedded;
    for (const auto& [n, d] : S) embedded.insert(f.embed_rational(n, d));
    CHECK(embedded.size() == expected);
    CHECK(embedded.size() >= 13);  // the budget 13*16 + 0 + 8 + 8 only needs
                                   // |S \ {0, 1/3, 3}| <= 13
  }
  // Collision-free samples: every cross-difference numerator n_i d_j -
  // n_j d_i has magnitude < 169, so primes above that never collide.
  for (std::uint32_t p : {443, 1307}) {
    const Field f = Field::make(p, 1);
    std::set<elem> embedded;
    for (const auto& [n, d] : S) embedded.insert(f.embed_rational(n, d));
    CHECK(embedded.size() == 16);
  }
}

TEST_CASE("weil2 sweep has zero failures on a sample field") {
  const apd::SweepResult res = apd::weil2_sweep(Field::make(7, 2), 5, 2000);
  CHECK(res.failures == 0);
  CHECK(res.extremal_lhs == 0);
}
