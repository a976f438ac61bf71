#pragma once

#include <string>
#include <utility>

#include "xhermite/exact_poly.hpp"

namespace xhermite {

/// Rational function num/den kept in canonical form: gcd(num, den) = 1 and
/// den monic. Zero is 0/1. With a canonical form, equality is structural.
class RatFun {
 public:
  RatFun() : den_(ExactPoly::constant(1)) {}

  RatFun(ExactPoly num)  // NOLINT(google-explicit-constructor)
      : num_(std::move(num)), den_(ExactPoly::constant(1)) {}

  RatFun(ExactPoly num, ExactPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ArgumentError("rational function with zero denominator");
    canonicalize();
  }

  static RatFun constant(const Rational& v) { return RatFun(ExactPoly::constant(v)); }

  const ExactPoly& num() const noexcept { return num_; }
  const ExactPoly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const { return den_.deg() == 0; }

  /// The numerator of a rational function with trivial denominator.
  const ExactPoly& as_polynomial() const {
    if (!is_polynomial()) throw ArgumentError("rational function is not a polynomial");
    return num_;
  }

  RatFun operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw ArgumentError("division by the zero rational function");
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }

  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void canonicalize() {
    if (num_.is_zero()) {
      den_ = ExactPoly::constant(1);
      return;
    }
    if (den_.deg() > 0) {
      ExactPoly g = gcd(num_, den_);
      if (g.deg() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
      }
    }
    const Rational lc = den_.leading();
    if (lc != 1) {
      num_ /= lc;
      den_ /= lc;
    }
  }

  ExactPoly num_;
  ExactPoly den_;
};

/// Cross-multiplication test; agrees with == on canonical values.
inline bool equivalent(const RatFun& a, const RatFun& b) {
  return a.num() * b.den() == b.num() * a.den();
}

/// Quotient rule.
inline RatFun derivative(const RatFun& f) {
  if (f.is_polynomial()) return RatFun(derivative(f.num()));
  return RatFun(derivative(f.num()) * f.den() - f.num() * derivative(f.den()),
                f.den() * f.den());
}

inline std::string to_string(const RatFun& f) {
  if (f.is_polynomial()) return to_string(f.num());
  return "(" + to_string(f.num()) + ") / (" + to_string(f.den()) + ")";
}

}  // namespace xhermite
