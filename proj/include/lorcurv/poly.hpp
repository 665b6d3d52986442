#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "lorcurv/scalar.hpp"

namespace lorcurv {

// Polynomial over a field S, coefficients ascending. Zero polynomial has
// empty coefficient vector and degree -1.
template <class S>
struct Poly {
  std::vector<S> c;

  Poly() = default;
  explicit Poly(std::vector<S> coeffs) : c(std::move(coeffs)) { normalize(); }
  static Poly constant(const S& x) { return Poly(std::vector<S>{x}); }

  void normalize() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
  const S& lead() const { return c.back(); }

  S eval(const S& x) const {
    S r(0);
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<S> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * S(static_cast<int>(i));
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (zero()) return *this;
    Poly r = *this;
    S inv = S(1) / lead();
    for (auto& x : r.c) x *= inv;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<S> r(std::max(a.c.size(), b.c.size()), S(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<S> r(std::max(a.c.size(), b.c.size()), S(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.zero() || b.zero()) return Poly();
    std::vector<S> r(a.c.size() + b.c.size() - 1, S(0));
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(r));
  }

  // Euclidean division; requires b nonzero.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.zero()) throw std::domain_error("polynomial division by zero");
    Poly rem = a;
    std::vector<S> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1, S(0));
    S inv = S(1) / b.lead();
    while (!rem.zero() && rem.deg() >= b.deg()) {
      size_t shift = rem.deg() - b.deg();
      S f = rem.lead() * inv;
      q[shift] = f;
      for (size_t i = 0; i < b.c.size(); ++i) rem.c[shift + i] -= f * b.c[i];
      rem.normalize();
    }
    return {Poly(std::move(q)), rem};
  }
};

template <class S>
Poly<S> poly_gcd(Poly<S> a, Poly<S> b) {
  while (!b.zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    if (!b.zero()) b = b.monic();  // keeps coefficient growth down over Rat
  }
  return a.monic();
}

// p / gcd(p, p'): same roots, each simple.
template <class S>
Poly<S> squarefree_radical(const Poly<S>& p) {
  if (p.deg() <= 1) return p.monic();
  Poly<S> g = poly_gcd(p, p.derivative());
  if (g.deg() <= 0) return p.monic();
  return divmod(p, g).first.monic();
}

namespace detail {

inline int sgn(const Rat& x) { return x.v < 0 ? -1 : (x.v > 0 ? 1 : 0); }

inline int sign_at_infinity(const Poly<Rat>& p, bool positive) {
  if (p.zero()) return 0;
  int s = sgn(p.lead());
  if (!positive && p.deg() % 2 == 1) s = -s;
  return s;
}

}  // namespace detail

// Number of distinct real roots, by Sturm's theorem. Exact scalars only.
inline int real_root_count(const Poly<Rat>& p_in) {
  Poly<Rat> p = squarefree_radical(p_in);
  if (p.deg() <= 0) return 0;
  std::vector<Poly<Rat>> chain{p, p.derivative()};
  while (!chain.back().zero() && chain.back().deg() > 0) {
    auto rem = divmod(chain[chain.size() - 2], chain.back()).second;
    for (auto& x : rem.c) x = -x;
    rem.normalize();
    if (rem.zero()) break;
    chain.push_back(rem);
  }
  auto variations = [&](bool positive) {
    int v = 0, prev = 0;
    for (const auto& q : chain) {
      int s = detail::sign_at_infinity(q, positive);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  };
  return variations(false) - variations(true);
}

struct RationalRoots {
  std::vector<std::pair<Rat, int>> roots;  // (root, multiplicity)
  bool complete;  // true when the list is guaranteed exhaustive
};

namespace detail {

// Trial-division factorization. Large rough cofactors are kept as single
// entries; `certain` is false when such a cofactor may be composite.
inline std::vector<bigint> prime_factors(bigint n, bool& certain) {
  std::vector<bigint> ps;
  certain = true;
  if (n < 0) n = -n;
  if (n <= 1) return ps;
  const long long bound = 1000000;
  for (long long d = 2; d <= bound && bigint(d) * d <= n; d == 2 ? d = 3 : d += 2) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) {
    ps.push_back(n);
    if (n > bigint(bound) * bound) certain = false;
  }
  return ps;
}

inline std::vector<bigint> divisors_from(const std::vector<bigint>& primes, const bigint& n) {
  std::vector<bigint> divs{1};
  for (const auto& p : primes) {
    size_t base = divs.size();
    bigint pk = p;
    while (n % pk == 0) {
      for (size_t i = 0; i < base; ++i) {
        if (divs[i] * pk > boost::multiprecision::abs(n)) continue;
        if (n % (divs[i] * pk) == 0) divs.push_back(divs[i] * pk);
      }
      if (divs.size() > 20000) break;  // defensive cap; fixtures stay tiny
      pk *= p;
    }
  }
  std::sort(divs.begin(), divs.end());
  divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
  return divs;
}

}  // namespace detail

// All rational roots with multiplicities, by the rational root theorem on the
// cleared-denominator form. `complete` reports whether the residual factor is
// constant (so no roots were missed even if some large cofactor resisted
// factorization).
inline RationalRoots rational_roots(const Poly<Rat>& p_in) {
  RationalRoots out;
  out.complete = false;
  Poly<Rat> p = p_in;
  if (p.zero() || p.deg() == 0) {
    out.complete = true;
    return out;
  }
  // Factor out x^k first.
  int zero_mult = 0;
  while (!p.c.empty() && is_zero(p.c[0])) {
    p.c.erase(p.c.begin());
    ++zero_mult;
  }
  if (zero_mult) out.roots.push_back({Rat(0), zero_mult});
  if (p.deg() <= 0) {
    out.complete = true;
    return out;
  }
  // Clear denominators to an integer polynomial.
  bigint lcm = 1;
  for (const auto& x : p.c) lcm = boost::multiprecision::lcm(lcm, x.den());
  std::vector<bigint> ic(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) ic[i] = (p.c[i] * Rat(lcm, 1)).num();
  bigint a0 = ic.front(), an = ic.back();
  bool cert0 = true, certn = true;
  auto p0 = detail::prime_factors(a0, cert0);
  auto pn = detail::prime_factors(an, certn);
  auto d0 = detail::divisors_from(p0, a0);
  auto dn = detail::divisors_from(pn, an);
  bool candidates_complete = cert0 && certn;

  for (const auto& num : d0) {
    for (const auto& den : dn) {
      for (int sign = 1; sign >= -1; sign -= 2) {
        Rat cand(sign == 1 ? num : bigint(-num), den);
        int mult = 0;
        while (p.deg() > 0 && is_zero(p.eval(cand))) {
          Poly<Rat> lin(std::vector<Rat>{-cand, Rat(1)});
          p = divmod(p, lin).first;
          ++mult;
        }
        if (mult) out.roots.push_back({cand, mult});
        if (p.deg() <= 0) break;
      }
      if (p.deg() <= 0) break;
    }
    if (p.deg() <= 0) break;
  }
  out.complete = (p.deg() <= 0) || candidates_complete;
  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace lorcurv
