// Test-only oracles, kept independent of the implementation paths they
// check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "apd/apcheck.hpp"
#include "apd/field.hpp"
#include "apd/perm.hpp"

namespace oracle {

// Inverse by extended Euclid on digit polynomials over Z/pZ (the
// implementation uses exponentiation).
inline apd::elem inv_euclid(const apd::Field& f, apd::elem x) {
  using Poly = std::vector<std::int64_t>;
  const std::int64_t p = f.p();
  auto trim = [](Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  };
  auto modp = [&](std::int64_t v) { return ((v % p) + p) % p; };
  auto scale = [&](Poly a, std::int64_t c) {
    for (auto& v : a) v = modp(v * c);
    return a;
  };
  auto subm = [&](Poly a, const Poly& b, std::int64_t c, std::size_t shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] = modp(a[i + shift] - c * b[i]);
    return a;
  };
  auto scalar_inv = [&](std::int64_t c) {
    for (std::int64_t t = 1; t < p; ++t)
      if (modp(t * c) == 1) return t;
    throw std::logic_error("scalar not invertible");
  };

  Poly a(f.modulus().begin(), f.modulus().end());
  Poly b;
  for (auto d : f.digits(x)) b.push_back(d);
  trim(a);
  trim(b);
  if (b.empty()) throw std::domain_error("zero has no inverse");

  // Euclid with Bezout tracking: sa*m + ta*x = a (coeffs of x only).
  Poly ta = {}, tb = {1};
  while (!b.empty()) {
    // a = qb + r
    Poly r = a, tr = ta;
    const std::int64_t lead_inv = scalar_inv(b.back());
    while (r.size() >= b.size() && !r.empty()) {
      const std::int64_t c = modp(r.back() * lead_inv);
      const std::size_t shift = r.size() - b.size();
      r = subm(r, b, c, shift);
      tr = subm(tr, tb, c, shift);
      trim(r);
    }
    a = b;
    ta = tb;
    b = r;
    tb = tr;
    trim(b);
  }
  if (a.size() != 1) throw std::logic_error("gcd not constant");
  ta = scale(ta, scalar_inv(a[0]));
  std::vector<std::uint32_t> digits(f.k(), 0);
  for (std::size_t i = 0; i < ta.size() && i < digits.size(); ++i)
    digits[i] = static_cast<std::uint32_t>(ta[i]);
  return f.from_digits(digits);
}

// Survivor set by direct enumeration of ordered (midpoint, difference)
// pairs, checking every ordering that counts as a survival.
inline std::set<std::pair<apd::elem, apd::elem>> naive_survivors(
    const apd::Permutation& pi) {
  const apd::Field& f = pi.field();
  const std::uint64_t q = f.q();
  auto is_ap = [&](apd::elem u, apd::elem v, apd::elem w) {
    return f.sub(v, u) == f.sub(w, v) && f.sub(v, u) != 0;
  };
  std::set<std::pair<apd::elem, apd::elem>> out;
  for (std::uint64_t ae = 0; ae < q; ++ae)
    for (std::uint64_t re = 1; re < q; ++re) {
      const apd::elem a = static_cast<apd::elem>(ae);
      const apd::elem r = static_cast<apd::elem>(re);
      const apd::elem x = pi(f.sub(a, r)), y = pi(a), z = pi(f.add(a, r));
      bool survives;
      if (f.p() == 3) {
        apd::elem t[3] = {x, y, z};
        std::sort(t, t + 3);
        survives = false;
        do {
          if (is_ap(t[0], t[1], t[2])) survives = true;
        } while (std::next_permutation(t, t + 3));
      } else {
        survives = is_ap(x, y, z) || is_ap(z, y, x);
      }
      if (survives) out.insert({a, std::min(r, f.neg(r))});
    }
  return out;
}

// chi by counting square roots: chi(u) = #{w : w^2 = u} - 1.
inline int chi_by_roots(const apd::Field& f, apd::elem u) {
  int roots = 0;
  for (std::uint64_t w = 0; w < f.q(); ++w)
    if (f.mul(static_cast<apd::elem>(w), static_cast<apd::elem>(w)) == u)
      ++roots;
  return roots - 1;
}

}  // namespace oracle
