#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

namespace lorcurv {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// Exact rational scalar. Equality is decidable; arithmetic never rounds.
struct Rat {
  bigrat v;

  Rat() : v(0) {}
  Rat(int n) : v(n) {}
  Rat(long long n) : v(n) {}
  Rat(bigrat x) : v(std::move(x)) {}
  Rat(const bigint& num, const bigint& den) : v(bigrat(num, den)) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
  }

  bigint num() const { return boost::multiprecision::numerator(v); }
  bigint den() const { return boost::multiprecision::denominator(v); }

  Rat operator-() const { return Rat(bigrat(-v)); }
  Rat& operator+=(const Rat& o) { v += o.v; return *this; }
  Rat& operator-=(const Rat& o) { v -= o.v; return *this; }
  Rat& operator*=(const Rat& o) { v *= o.v; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.v == 0) throw std::domain_error("division by zero");
    v /= o.v;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.v == b.v; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v != b.v; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v < b.v; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v <= b.v; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v > b.v; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v >= b.v; }
};

// Relative tolerance for float-mode comparisons. Initialized once from
// LORCURV_TOL; call sites receive it through here, never a literal.
inline double& float_tol() {
  static double tol = [] {
    if (const char* env = std::getenv("LORCURV_TOL")) {
      char* end = nullptr;
      double t = std::strtod(env, &end);
      if (end != env && t > 0) return t;
    }
    return 1e-9;
  }();
  return tol;
}

// Temporarily widens/narrows the comparison tolerance in a scope.
struct ToleranceGuard {
  double saved;
  explicit ToleranceGuard(double t) : saved(float_tol()) { float_tol() = t; }
  ~ToleranceGuard() { float_tol() = saved; }
  ToleranceGuard(const ToleranceGuard&) = delete;
  ToleranceGuard& operator=(const ToleranceGuard&) = delete;
};

// Floating scalar; comparisons use the context tolerance relative to the
// larger magnitude (absolute near zero).
struct Fp {
  double v;

  Fp() : v(0) {}
  Fp(int n) : v(n) {}
  Fp(double x) : v(x) {}

  Fp operator-() const { return Fp(-v); }
  Fp& operator+=(const Fp& o) { v += o.v; return *this; }
  Fp& operator-=(const Fp& o) { v -= o.v; return *this; }
  Fp& operator*=(const Fp& o) { v *= o.v; return *this; }
  Fp& operator/=(const Fp& o) { v /= o.v; return *this; }

  friend Fp operator+(Fp a, const Fp& b) { a += b; return a; }
  friend Fp operator-(Fp a, const Fp& b) { a -= b; return a; }
  friend Fp operator*(Fp a, const Fp& b) { a *= b; return a; }
  friend Fp operator/(Fp a, const Fp& b) { a /= b; return a; }
  friend bool operator==(const Fp& a, const Fp& b) {
    double m = std::max({1.0, std::fabs(a.v), std::fabs(b.v)});
    return std::fabs(a.v - b.v) <= float_tol() * m;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
  friend bool operator<(const Fp& a, const Fp& b) { return a.v < b.v && a != b; }
  friend bool operator>(const Fp& a, const Fp& b) { return b < a; }
  friend bool operator<=(const Fp& a, const Fp& b) { return !(b < a); }
  friend bool operator>=(const Fp& a, const Fp& b) { return !(a < b); }
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static bool is_zero(const Rat& x) { return x.v == 0; }
  static Rat abs(const Rat& x) { return x.v < 0 ? Rat(bigrat(-x.v)) : x; }
  // Pivot preference: any nonzero works in exact mode; prefer small height.
  static bool better_pivot(const Rat& cand, const Rat& cur) {
    return boost::multiprecision::denominator(cand.v) +
               boost::multiprecision::abs(boost::multiprecision::numerator(cand.v)) <
           boost::multiprecision::denominator(cur.v) +
               boost::multiprecision::abs(boost::multiprecision::numerator(cur.v));
  }
  static std::string to_string(const Rat& x) {
    std::string s = x.num().str();
    if (x.den() != 1) s += "/" + x.den().str();
    return s;
  }
  static double to_double(const Rat& x) { return static_cast<double>(x.v); }
};

template <>
struct scalar_traits<Fp> {
  static constexpr bool exact = false;
  static bool is_zero(const Fp& x) { return std::fabs(x.v) <= float_tol(); }
  static Fp abs(const Fp& x) { return Fp(std::fabs(x.v)); }
  static bool better_pivot(const Fp& cand, const Fp& cur) {
    return std::fabs(cand.v) > std::fabs(cur.v);
  }
  static std::string to_string(const Fp& x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x.v);
    return buf;
  }
  static double to_double(const Fp& x) { return x.v; }
};

template <class S>
bool is_zero(const S& x) {
  return scalar_traits<S>::is_zero(x);
}

// Parses "p", "-p", "p/q". Returns nullopt on malformed input.
inline std::optional<Rat> parse_rational(const std::string& s) {
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rat(bigrat(bigint(s)));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    bigint d(den);
    if (d == 0) return std::nullopt;
    return Rat(bigint(num), d);
  } catch (...) {
    return std::nullopt;
  }
}

// Exact square root of a nonnegative rational, when it exists.
inline std::optional<Rat> rational_sqrt(const Rat& x) {
  if (x.v < 0) return std::nullopt;
  if (x.v == 0) return Rat(0);
  bigint n = x.num(), d = x.den();
  bigint sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rat(sn, sd);
}

}  // namespace lorcurv
