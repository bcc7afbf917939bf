#include "apd/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace apd {

namespace {

constexpr std::uint64_t kQCap = std::uint64_t{1} << 31;
// Above this order we skip the per-element tables and compute digitwise.
constexpr std::uint64_t kTableCap = std::uint64_t{1} << 21;

using Poly = std::vector<std::uint32_t>;  // coeffs over Z/pZ, constant first

int poly_degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

// Remainder of a mod b over Z/pZ; b monic.
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db && db >= 0; da = poly_degree(a)) {
    const std::uint64_t c = a[static_cast<std::size_t>(da)];
    const int shift = da - db;
    for (int i = 0; i <= db; ++i) {
      const std::uint64_t s = (c * b[static_cast<std::size_t>(i)]) % p;
      const std::uint64_t t =
          (a[static_cast<std::size_t>(i + shift)] + p - s) % p;
      a[static_cast<std::size_t>(i + shift)] = static_cast<std::uint32_t>(t);
    }
  }
  return a;
}

bool poly_divides(const Poly& divisor, const Poly& a, std::uint32_t p) {
  return poly_degree(poly_rem(a, divisor, p)) < 0;
}

// Trial division by every monic polynomial of degree 1..deg(m)/2.
bool is_irreducible(const Poly& m, std::uint32_t p) {
  const int k = poly_degree(m);
  if (k <= 0) return false;
  if (k == 1) return true;
  for (int d = 1; d <= k / 2; ++d) {
    // Enumerate monic candidates of degree d via an odometer on the
    // lower d coefficients.
    Poly cand(static_cast<std::size_t>(d) + 1, 0);
    cand[static_cast<std::size_t>(d)] = 1;
    while (true) {
      if (poly_divides(cand, m, p)) return false;
      int i = 0;
      for (; i < d; ++i) {
        if (++cand[static_cast<std::size_t>(i)] < p) break;
        cand[static_cast<std::size_t>(i)] = 0;
      }
      if (i == d) break;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct Field::Impl {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint64_t q = 0;
  std::vector<std::uint32_t> modulus;
  // x^(k+i) reduced mod modulus, i in [0, k-1); digit vectors of length k.
  std::vector<std::vector<std::uint32_t>> red;
  bool tables = false;
  std::vector<std::int8_t> chi;
  std::vector<elem> negt;
  std::vector<std::uint32_t> dig;  // q * k flattened digits (k > 1 only)

  std::vector<std::uint32_t> decompose(elem a) const {
    std::vector<std::uint32_t> d(k);
    for (std::uint32_t i = 0; i < k; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  }

  elem encode(const std::vector<std::uint32_t>& d) const {
    std::uint64_t e = 0;
    for (std::uint32_t i = k; i-- > 0;) e = e * p + d[i];
    return static_cast<elem>(e);
  }

  elem add_impl(elem a, elem b) const {
    if (k == 1) {
      const std::uint64_t s = std::uint64_t{a} + b;
      return static_cast<elem>(s >= q ? s - q : s);
    }
    std::vector<std::uint32_t> da = decompose(a), db = decompose(b);
    for (std::uint32_t i = 0; i < k; ++i) {
      da[i] += db[i];
      if (da[i] >= p) da[i] -= p;
    }
    return encode(da);
  }

  elem neg_impl(elem a) const {
    if (k == 1) return a == 0 ? 0 : static_cast<elem>(q - a);
    std::vector<std::uint32_t> d = decompose(a);
    for (std::uint32_t i = 0; i < k; ++i)
      if (d[i] != 0) d[i] = p - d[i];
    return encode(d);
  }

  elem mul_impl(elem a, elem b) const {
    if (k == 1) return static_cast<elem>((std::uint64_t{a} * b) % p);
    const std::vector<std::uint32_t> da = decompose(a), db = decompose(b);
    std::vector<std::uint64_t> prod(2 * k - 1, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
      if (da[i] == 0) continue;
      for (std::uint32_t j = 0; j < k; ++j)
        prod[i + j] += std::uint64_t{da[i]} * db[j];
    }
    std::vector<std::uint64_t> acc(k, 0);
    for (std::uint32_t i = 0; i < k; ++i) acc[i] = prod[i] % p;
    for (std::uint32_t i = k; i < 2 * k - 1; ++i) {
      const std::uint64_t c = prod[i] % p;
      if (c == 0) continue;
      const auto& r = red[i - k];
      for (std::uint32_t j = 0; j < k; ++j) acc[j] += c * r[j];
    }
    std::vector<std::uint32_t> out(k);
    for (std::uint32_t i = 0; i < k; ++i)
      out[i] = static_cast<std::uint32_t>(acc[i] % p);
    return encode(out);
  }
};

Field::Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Field Field::make(std::uint32_t p, std::uint32_t k,
                  const std::optional<std::vector<std::uint32_t>>& modulus) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kQCap) throw std::invalid_argument("p^k exceeds the 2^31 cap");
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->k = k;
  impl->q = q;

  if (modulus) {
    const auto& m = *modulus;
    if (m.size() != static_cast<std::size_t>(k) + 1 || m[k] != 1)
      throw std::invalid_argument("modulus must be monic of degree k");
    for (auto c : m)
      if (c >= p) throw std::invalid_argument("modulus digit out of range");
    if (!is_irreducible(m, p))
      throw std::invalid_argument("modulus is reducible over Z/pZ");
    impl->modulus = m;
  } else if (k == 1) {
    impl->modulus = {0, 1};
  } else {
    // Lexicographically least monic irreducible, constant term most
    // significant in the comparison.
    std::vector<std::uint32_t> m(static_cast<std::size_t>(k) + 1, 0);
    m[k] = 1;
    bool found = false;
    // Odometer with the constant term as the slowest digit.
    while (!found) {
      if (is_irreducible(m, p)) {
        found = true;
        break;
      }
      std::uint32_t i = k;
      while (i-- > 0) {
        if (++m[i] < p) break;
        m[i] = 0;
        if (i == 0) throw std::logic_error("no irreducible of degree k");
      }
    }
    impl->modulus = m;
  }

  if (k > 1) {
    // red[i] = x^(k+i) mod modulus.
    std::vector<std::uint32_t> cur(k, 0);  // x^k mod m = -lower part of m
    for (std::uint32_t j = 0; j < k; ++j)
      cur[j] = impl->modulus[j] == 0 ? 0 : p - impl->modulus[j];
    impl->red.push_back(cur);
    for (std::uint32_t i = 1; i < k - 1; ++i) {
      std::vector<std::uint32_t> nxt(k, 0);
      const std::uint32_t carry = cur[k - 1];
      for (std::uint32_t j = k - 1; j > 0; --j) nxt[j] = cur[j - 1];
      nxt[0] = 0;
      if (carry != 0) {
        const auto& r0 = impl->red[0];
        for (std::uint32_t j = 0; j < k; ++j)
          nxt[j] = static_cast<std::uint32_t>(
              (nxt[j] + std::uint64_t{carry} * r0[j]) % p);
      }
      impl->red.push_back(nxt);
      cur = nxt;
    }
  }

  if (q <= kTableCap) {
    impl->tables = true;
    impl->negt.resize(q);
    for (std::uint64_t a = 0; a < q; ++a)
      impl->negt[a] = impl->neg_impl(static_cast<elem>(a));
    if (k > 1) {
      impl->dig.resize(q * k);
      for (std::uint64_t a = 0; a < q; ++a) {
        const auto d = impl->decompose(static_cast<elem>(a));
        std::copy(d.begin(), d.end(), impl->dig.begin() + a * k);
      }
    }
    if (p != 2) {
      impl->chi.assign(q, -1);
      impl->chi[0] = 0;
      for (std::uint64_t a = 1; a < q; ++a) {
        const elem s = impl->mul_impl(static_cast<elem>(a), static_cast<elem>(a));
        impl->chi[s] = 1;
      }
    }
  }

  return Field(std::move(impl));
}

std::uint32_t Field::p() const { return impl_->p; }
std::uint32_t Field::k() const { return impl_->k; }
std::uint64_t Field::q() const { return impl_->q; }
const std::vector<std::uint32_t>& Field::modulus() const {
  return impl_->modulus;
}

elem Field::add(elem a, elem b) const {
  const auto& im = *impl_;
  if (im.k == 1 || !im.tables) return im.add_impl(a, b);
  const std::uint32_t k = im.k, p = im.p;
  const std::uint32_t* da = im.dig.data() + std::uint64_t{a} * k;
  const std::uint32_t* db = im.dig.data() + std::uint64_t{b} * k;
  std::uint64_t e = 0;
  for (std::uint32_t i = k; i-- > 0;) {
    std::uint32_t s = da[i] + db[i];
    if (s >= p) s -= p;
    e = e * p + s;
  }
  return static_cast<elem>(e);
}

elem Field::neg(elem a) const {
  return impl_->tables ? impl_->negt[a] : impl_->neg_impl(a);
}

elem Field::sub(elem a, elem b) const { return add(a, neg(b)); }

elem Field::mul(elem a, elem b) const { return impl_->mul_impl(a, b); }

elem Field::pow(elem a, std::uint64_t e) const {
  elem r = 1, base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

elem Field::inv(elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return pow(a, impl_->q - 2);
}

int Field::legendre(elem a) const {
  if (impl_->p == 2) throw std::domain_error("Legendre symbol needs odd p");
  if (!impl_->chi.empty()) return impl_->chi[a];
  if (a == 0) return 0;
  return pow(a, (impl_->q - 1) / 2) == 1 ? 1 : -1;
}

elem Field::embed_int(std::int64_t n) const {
  const std::int64_t p = impl_->p;
  std::int64_t r = n % p;
  if (r < 0) r += p;
  return static_cast<elem>(r);
}

elem Field::embed_rational(std::int64_t n, std::int64_t d) const {
  const elem dd = embed_int(d);
  if (dd == 0) throw std::domain_error("denominator vanishes mod p");
  return mul(embed_int(n), inv(dd));
}

std::vector<std::uint32_t> Field::digits(elem a) const {
  return impl_->decompose(a);
}

elem Field::from_digits(const std::vector<std::uint32_t>& d) const {
  if (d.size() != impl_->k) throw std::invalid_argument("wrong digit count");
  for (auto c : d)
    if (c >= impl_->p) throw std::invalid_argument("digit out of range");
  return impl_->encode(d);
}

bool Field::same(const Field& other) const {
  return impl_ == other.impl_ ||
         (impl_->p == other.impl_->p && impl_->k == other.impl_->k &&
          impl_->modulus == other.impl_->modulus);
}

}  // namespace apd
