#pragma once

#include <string>

#include "lorcurv/scalar.hpp"

namespace lorcurv {

// Complex numbers over a scalar field S, as the field S[i]/(i^2+1).
template <class S>
struct Cx {
  S re, im;

  Cx() : re(0), im(0) {}
  Cx(int n) : re(n), im(0) {}
  Cx(S r) : re(std::move(r)), im(0) {}
  Cx(S r, S i) : re(std::move(r)), im(std::move(i)) {}

  static Cx i() { return Cx(S(0), S(1)); }

  Cx conj() const { return Cx(re, -im); }
  S norm2() const { return re * re + im * im; }

  Cx operator-() const { return Cx(-re, -im); }
  Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
  Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
  Cx& operator*=(const Cx& o) {
    S r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Cx& operator/=(const Cx& o) {
    S n = o.norm2();
    if (is_zero(n)) throw std::domain_error("complex division by zero");
    S r = (re * o.re + im * o.im) / n;
    im = (im * o.re - re * o.im) / n;
    re = r;
    return *this;
  }

  friend Cx operator+(Cx a, const Cx& b) { a += b; return a; }
  friend Cx operator-(Cx a, const Cx& b) { a -= b; return a; }
  friend Cx operator*(Cx a, const Cx& b) { a *= b; return a; }
  friend Cx operator/(Cx a, const Cx& b) { a /= b; return a; }
  friend bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Cx& a, const Cx& b) { return !(a == b); }
};

template <class S>
struct scalar_traits<Cx<S>> {
  static constexpr bool exact = scalar_traits<S>::exact;
  static bool is_zero(const Cx<S>& x) {
    return scalar_traits<S>::is_zero(x.re) && scalar_traits<S>::is_zero(x.im);
  }
  static Cx<S> abs(const Cx<S>& x) { return x; }  // no canonical order; unused
  static bool better_pivot(const Cx<S>& cand, const Cx<S>& cur) {
    // Squared magnitude as proxy; the base field's preference applies.
    return scalar_traits<S>::better_pivot(cand.norm2(), cur.norm2());
  }
  static std::string to_string(const Cx<S>& x) {
    if (scalar_traits<S>::is_zero(x.im)) return scalar_traits<S>::to_string(x.re);
    std::string s = scalar_traits<S>::to_string(x.re);
    std::string i = scalar_traits<S>::to_string(x.im);
    if (!i.empty() && i[0] == '-')
      s += " - " + i.substr(1) + "i";
    else
      s += " + " + i + "i";
    return s;
  }
  static double to_double(const Cx<S>& x) { return scalar_traits<S>::to_double(x.re); }
};

}  // namespace lorcurv
