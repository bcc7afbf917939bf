#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apd/field.hpp"

namespace apd {

// Polynomial over F_q, coefficients by ascending degree (canonical
// encodings); trailing zeros allowed, degree() ignores them.
struct PolyOverF {
  std::vector<elem> coeffs;
};

int poly_deg(const PolyOverF& g);
elem poly_eval(const Field& field, const PolyOverF& g, elem y);
PolyOverF poly_derivative(const Field& field, const PolyOverF& g);
// gcd(g, g') has degree 0.
bool poly_squarefree(const Field& field, const PolyOverF& g);
// g = c * h^2 for some constant c and polynomial h.
bool is_square_multiple(const Field& field, const PolyOverF& g);

// Sum of chi(g(y)) over the whole field.
long long chi_sum(const Field& field, const PolyOverF& g);

// The degree <= 2 identity: sum_y chi(g(y)) = -chi(a2).  Rejects
// constants and square multiples.
bool weil_deg2_check(const Field& field, const PolyOverF& g);

struct HasseResult {
  bool holds = false;
  long long lhs = 0;
  double bound = 0;
};

// |chi(a4) + sum_y chi(g(y))| <= 2 sqrt(q) for squarefree g of degree
// 3 or 4 (a4 = 0 for cubics).
HasseResult hasse_check(const Field& field, const PolyOverF& g);

// sum_y (1 + chi(y) - chi(y+1) - chi(y(y+1))); equals q + 1 for odd q.
long long a_q_identity(const Field& field);

// The expanded 16-term character sum B_q(y) and its 4-factor product
// form; equal for y != 3.  Requires p > 3.
int b_q(const Field& field, elem y);
int b_q_product(const Field& field, elem y);
long long b_q_field_sum(const Field& field);

struct SweepResult {
  std::string check;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  long long extremal_lhs = 0;
  double bound = 0;
};

// Randomized sweeps (seeded, reproducible) and exhaustive identity checks.
SweepResult weil2_sweep(const Field& field, std::uint64_t seed,
                        std::uint64_t trials);
SweepResult hasse_sweep(const Field& field, std::uint64_t seed,
                        std::uint64_t trials);
SweepResult aq_check(const Field& field);
// Exhaustive expansion/product equality for y != 3 plus the full-field
// lower bound q - 10 sqrt(q) - 1.
SweepResult bq_check(const Field& field);

}  // namespace apd
