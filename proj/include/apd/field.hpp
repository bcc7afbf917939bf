#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace apd {

// Canonical encoding of a field element: sum digits[i] * p^i, in [0, q).
using elem = std::uint32_t;

// Immutable description of F_{p^k} together with precomputed arithmetic
// tables (built when q is small enough).  Cheap to copy; all operations
// are pure and thread-safe.
class Field {
public:
  // modulus, when given, is the length-(k+1) digit vector of a monic
  // irreducible polynomial over Z/pZ (constant term first).  When omitted
  // the lexicographically least monic irreducible of degree k is used
  // (constant term most significant in the comparison).
  static Field make(std::uint32_t p, std::uint32_t k,
                    const std::optional<std::vector<std::uint32_t>>& modulus =
                        std::nullopt);

  std::uint32_t p() const;
  std::uint32_t k() const;
  std::uint64_t q() const;
  const std::vector<std::uint32_t>& modulus() const;

  elem add(elem a, elem b) const;
  elem sub(elem a, elem b) const;
  elem neg(elem a) const;
  elem mul(elem a, elem b) const;
  elem pow(elem a, std::uint64_t e) const;
  elem inv(elem a) const;  // throws std::domain_error on a = 0

  // Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
  // Requires odd p.
  int legendre(elem a) const;

  // Image of the integer n under Z -> F_q.
  elem embed_int(std::int64_t n) const;
  // Image of n/d; throws std::domain_error when p divides d.
  elem embed_rational(std::int64_t n, std::int64_t d) const;

  std::vector<std::uint32_t> digits(elem a) const;
  elem from_digits(const std::vector<std::uint32_t>& d) const;

  bool same(const Field& other) const;

private:
  struct Impl;
  explicit Field(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

bool is_prime(std::uint64_t n);

}  // namespace apd
