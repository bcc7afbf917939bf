#include "apd/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>

namespace apd {

namespace {

std::vector<elem> trimmed(const std::vector<elem>& c) {
  std::vector<elem> out = c;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// Remainder of a mod b (b nonzero) with field-coefficient arithmetic.
std::vector<elem> rem(const Field& f, std::vector<elem> a,
                      const std::vector<elem>& b) {
  const std::size_t db = b.size() - 1;
  const elem lead_inv = f.inv(b.back());
  while (a.size() > db) {
    const elem c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - db;
    if (c != 0)
      for (std::size_t i = 0; i <= db; ++i)
        a[i + shift] = f.sub(a[i + shift], f.mul(c, b[i]));
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

std::vector<elem> poly_gcd(const Field& f, std::vector<elem> a,
                           std::vector<elem> b) {
  a = trimmed(a);
  b = trimmed(b);
  while (!b.empty()) {
    auto r = rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

int poly_deg(const PolyOverF& g) {
  for (int i = static_cast<int>(g.coeffs.size()) - 1; i >= 0; --i)
    if (g.coeffs[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

elem poly_eval(const Field& field, const PolyOverF& g, elem y) {
  elem acc = 0;
  for (std::size_t i = g.coeffs.size(); i-- > 0;)
    acc = field.add(field.mul(acc, y), g.coeffs[i]);
  return acc;
}

PolyOverF poly_derivative(const Field& field, const PolyOverF& g) {
  PolyOverF d;
  for (std::size_t i = 1; i < g.coeffs.size(); ++i)
    d.coeffs.push_back(
        field.mul(g.coeffs[i], field.embed_int(static_cast<std::int64_t>(i))));
  return d;
}

bool poly_squarefree(const Field& field, const PolyOverF& g) {
  if (poly_deg(g) <= 0) return false;
  const auto gd = poly_derivative(field, g);
  const auto gcd = poly_gcd(field, g.coeffs, gd.coeffs);
  return gcd.size() == 1;
}

bool is_square_multiple(const Field& field, const PolyOverF& g) {
  const int d = poly_deg(g);
  if (d < 0) return true;  // zero polynomial
  if (d == 0) return true;
  if (d % 2 != 0) return false;
  if (d == 2) {
    // c*(x - r)^2 <=> discriminant b^2 - 4ac = 0.
    const elem a = g.coeffs[2], b = g.coeffs[1], c = g.coeffs[0];
    const elem disc = field.sub(
        field.mul(b, b), field.mul(field.embed_int(4), field.mul(a, c)));
    return disc == 0;
  }
  if (d == 4) {
    if (field.p() == 2) throw std::domain_error("odd characteristic required");
    // Try g = a4 * (x^2 + u x + v)^2 by matching coefficients.
    const elem a4 = g.coeffs[4];
    const elem a4inv = field.inv(a4);
    const elem b3 = field.mul(g.coeffs[3], a4inv);
    const elem b2 = field.mul(g.coeffs[2], a4inv);
    const elem b1 = field.mul(g.coeffs[1], a4inv);
    const elem b0 = field.mul(g.coeffs[0], a4inv);
    const elem half = field.inv(field.embed_int(2));
    const elem u = field.mul(b3, half);
    const elem v = field.mul(field.sub(b2, field.mul(u, u)), half);
    return field.mul(field.embed_int(2), field.mul(u, v)) == b1 &&
           field.mul(v, v) == b0;
  }
  return false;  // degrees > 4 are outside the bound checks
}

long long chi_sum(const Field& field, const PolyOverF& g) {
  if (field.p() == 2) throw std::domain_error("chi_sum requires odd p");
  long long sum = 0;
  for (std::uint64_t y = 0; y < field.q(); ++y)
    sum += field.legendre(poly_eval(field, g, static_cast<elem>(y)));
  return sum;
}

bool weil_deg2_check(const Field& field, const PolyOverF& g) {
  const int d = poly_deg(g);
  if (d <= 0) throw std::invalid_argument("constant polynomial excluded");
  if (d > 2) throw std::invalid_argument("degree must be at most 2");
  if (d == 2 && is_square_multiple(field, g))
    throw std::invalid_argument("square-multiple polynomial excluded");
  const elem a2 = d == 2 ? g.coeffs[2] : 0;
  return chi_sum(field, g) == -field.legendre(a2);
}

HasseResult hasse_check(const Field& field, const PolyOverF& g) {
  const int d = poly_deg(g);
  if (d != 3 && d != 4) throw std::invalid_argument("degree must be 3 or 4");
  if (is_square_multiple(field, g))
    throw std::invalid_argument("square-multiple polynomial excluded");
  if (!poly_squarefree(field, g))
    throw std::invalid_argument("polynomial must be squarefree");
  HasseResult res;
  const elem a4 = d == 4 ? g.coeffs[4] : 0;
  res.lhs = std::llabs(field.legendre(a4) + chi_sum(field, g));
  res.bound = 2.0 * std::sqrt(static_cast<double>(field.q()));
  res.holds = static_cast<double>(res.lhs) <= res.bound;
  return res;
}

long long a_q_identity(const Field& field) {
  if (field.p() == 2) throw std::domain_error("requires odd p");
  long long sum = 0;
  for (std::uint64_t ye = 0; ye < field.q(); ++ye) {
    const elem y = static_cast<elem>(ye);
    const elem y1 = field.add(y, 1);
    sum += 1 + field.legendre(y) - field.legendre(y1) -
           field.legendre(field.mul(y, y1));
  }
  return sum;
}

namespace {

struct BqConstants {
  elem three, nine, twenty_seven, third, one;
  explicit BqConstants(const Field& f)
      : three(f.embed_int(3)),
        nine(f.embed_int(9)),
        twenty_seven(f.embed_int(27)),
        third(f.embed_rational(1, 3)),
        one(1) {}
};

void require_p_gt_3(const Field& field) {
  if (field.p() <= 3) throw std::domain_error("requires p > 3");
}

}  // namespace

int b_q(const Field& f, elem y) {
  require_p_gt_3(f);
  const BqConstants c(f);
  const elem t3y = f.sub(c.three, y);            // 3 - y
  const elem t27y = f.sub(c.twenty_seven, y);    // 27 - y
  const elem t13y = f.sub(c.third, y);           // 1/3 - y
  const elem t13m = f.sub(c.one, f.mul(c.three, y));  // 1 - 3y
  const elem ym3 = f.sub(y, c.three);            // y - 3
  const elem ym13 = f.sub(y, c.third);           // y - 1/3
  const elem ym27 = f.sub(y, c.twenty_seven);    // y - 27
  const elem m3y1 = f.neg(t13m);                 // 3y - 1

  auto chi = [&](elem x) { return f.legendre(x); };
  int sum = 1;
  sum -= chi(f.mul(t3y, t13y));
  sum -= chi(f.sub(c.nine, f.mul(c.three, y)));
  sum -= chi(f.mul(t3y, t27y));
  sum -= chi(f.mul(y, ym3));
  sum += chi(t13m);
  sum += chi(f.mul(t27y, t13y));
  sum += chi(f.mul(y, ym13));
  sum += chi(f.mul(c.three, t27y));
  sum += chi(f.neg(f.mul(c.three, y)));
  sum += chi(f.mul(y, ym27));
  sum -= chi(f.mul(f.mul(t3y, t27y), t13m));
  sum -= chi(f.mul(f.mul(y, t3y), m3y1));
  sum -= chi(f.mul(f.mul(y, t3y), f.mul(t27y, ym13)));
  sum -= chi(f.mul(f.mul(c.three, y), f.mul(t3y, ym27)));
  sum += chi(f.mul(f.mul(y, t27y), m3y1));
  return sum;
}

int b_q_product(const Field& f, elem y) {
  require_p_gt_3(f);
  const BqConstants c(f);
  const elem t3y = f.sub(c.three, y);
  const elem a = f.mul(t3y, f.sub(c.three, f.mul(c.nine, y)));  // (3-y)(3-9y)
  const elem b = f.mul(c.three, t3y);                           // 3(3-y)
  const elem d = f.mul(t3y, f.sub(c.twenty_seven, y));          // (3-y)(27-y)
  const elem e = f.neg(f.mul(y, t3y));                          // -y(3-y)
  return (1 - f.legendre(a)) * (1 - f.legendre(b)) * (1 - f.legendre(d)) *
         (1 - f.legendre(e));
}

long long b_q_field_sum(const Field& field) {
  require_p_gt_3(field);
  long long sum = 0;
  for (std::uint64_t y = 0; y < field.q(); ++y)
    sum += b_q(field, static_cast<elem>(y));
  return sum;
}

namespace {

elem random_elem(const Field& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, f.q() - 1);
  return static_cast<elem>(dist(rng));
}

}  // namespace

SweepResult weil2_sweep(const Field& field, std::uint64_t seed,
                        std::uint64_t trials) {
  std::mt19937_64 rng(seed);
  SweepResult res{"weil2", trials, 0, 0, 0};
  for (std::uint64_t t = 0; t < trials; ++t) {
    PolyOverF g;
    do {
      g.coeffs = {random_elem(field, rng), random_elem(field, rng),
                  random_elem(field, rng)};
    } while (poly_deg(g) < 1 || is_square_multiple(field, g));
    const int d = poly_deg(g);
    const elem a2 = d == 2 ? g.coeffs[2] : 0;
    const long long dev = chi_sum(field, g) + field.legendre(a2);
    res.extremal_lhs = std::max(res.extremal_lhs, std::llabs(dev));
    if (dev != 0) ++res.failures;
  }
  return res;
}

SweepResult hasse_sweep(const Field& field, std::uint64_t seed,
                        std::uint64_t trials) {
  std::mt19937_64 rng(seed);
  SweepResult res{"hasse", trials, 0, 0,
                  2.0 * std::sqrt(static_cast<double>(field.q()))};
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int deg = (t % 2 == 0) ? 3 : 4;  // alternate cubics and quartics
    PolyOverF g;
    do {
      g.coeffs.assign(static_cast<std::size_t>(deg) + 1, 0);
      for (auto& c : g.coeffs) c = random_elem(field, rng);
      while (g.coeffs.back() == 0) g.coeffs.back() = random_elem(field, rng);
    } while (is_square_multiple(field, g) || !poly_squarefree(field, g));
    const HasseResult h = hasse_check(field, g);
    res.extremal_lhs = std::max(res.extremal_lhs, h.lhs);
    if (!h.holds) ++res.failures;
  }
  return res;
}

SweepResult aq_check(const Field& field) {
  SweepResult res{"aq", 1, 0, 0, 0};
  const long long value = a_q_identity(field);
  res.extremal_lhs = value;
  res.bound = static_cast<double>(field.q() + 1);
  if (value != static_cast<long long>(field.q() + 1)) res.failures = 1;
  return res;
}

SweepResult bq_check(const Field& field) {
  require_p_gt_3(field);
  const elem three = field.embed_int(3);
  SweepResult res{"bq", field.q(), 0, 0, 0};
  long long sum = 0;
  for (std::uint64_t ye = 0; ye < field.q(); ++ye) {
    const elem y = static_cast<elem>(ye);
    const int expanded = b_q(field, y);
    sum += expanded;
    if (y != three && expanded != b_q_product(field, y)) ++res.failures;
  }
  res.extremal_lhs = sum;
  res.bound = static_cast<double>(field.q()) -
              10.0 * std::sqrt(static_cast<double>(field.q())) - 1.0;
  if (static_cast<double>(sum) < res.bound) ++res.failures;
  return res;
}

}  // namespace apd
