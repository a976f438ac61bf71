#pragma once

/**
 * @file exact_poly.hpp
 * @brief Univariate polynomials over arbitrary-precision rationals.
 *
 * Everything here is exact: coefficients are GMP rationals and no operation
 * rounds. On top of the ring arithmetic the header provides Euclidean
 * division, monic gcd, Wronskian determinants of polynomial lists and a
 * Sturm-sequence count of distinct real roots.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "xhermite/errors.hpp"

namespace xhermite {

using Rational = mpq_class;
using BigInt = mpz_class;

/// "p/q" with decimal integers; q is always written, even when it is 1.
inline std::string to_exact_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "p/q" or a plain integer "p".
inline Rational parse_exact_string(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) {
    throw ArgumentError("not an exact rational: '" + s + "'");
  }
  if (r.get_den() == 0) throw ArgumentError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

class ExactPoly {
 public:
  /// The zero polynomial.
  ExactPoly() = default;

  /// Coefficients in ascending order; trailing zeros are dropped.
  explicit ExactPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  ExactPoly(std::initializer_list<Rational> coeffs)
      : ExactPoly(std::vector<Rational>(coeffs)) {}

  static ExactPoly constant(const Rational& value) {
    return ExactPoly(std::vector<Rational>{value});
  }

  static ExactPoly monomial(const Rational& value, std::size_t power) {
    std::vector<Rational> c(power + 1);
    c[power] = value;
    return ExactPoly(std::move(c));
  }

  static ExactPoly x() { return monomial(1, 1); }

  bool is_zero() const noexcept { return c_.empty(); }

  /// Degree; std::nullopt is the zero polynomial's minus-infinity degree.
  std::optional<std::size_t> degree() const noexcept {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }

  /// Degree of a polynomial known to be non-zero.
  std::size_t deg() const {
    if (c_.empty()) throw ArgumentError("degree of the zero polynomial");
    return c_.size() - 1;
  }

  const Rational& leading() const {
    if (c_.empty()) throw ArgumentError("leading coefficient of zero");
    return c_.back();
  }

  Rational coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : Rational(0);
  }

  std::span<const Rational> coeffs() const noexcept { return c_; }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  ExactPoly operator-() const {
    ExactPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  ExactPoly& operator+=(const ExactPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }

  ExactPoly& operator-=(const ExactPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }

  ExactPoly& operator*=(const Rational& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }

  ExactPoly& operator/=(const Rational& s) {
    if (s == 0) throw ArgumentError("polynomial divided by zero scalar");
    for (auto& v : c_) v /= s;
    return *this;
  }

  friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
  friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
  friend ExactPoly operator*(ExactPoly a, const Rational& s) { return a *= s; }
  friend ExactPoly operator*(const Rational& s, ExactPoly a) { return a *= s; }
  friend ExactPoly operator/(ExactPoly a, const Rational& s) { return a /= s; }

  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return ExactPoly(std::move(c));
  }

  ExactPoly& operator*=(const ExactPoly& o) { return *this = *this * o; }

  friend bool operator==(const ExactPoly& a, const ExactPoly& b) {
    return a.c_ == b.c_;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

inline ExactPoly derivative(const ExactPoly& p) {
  if (p.degree().value_or(0) == 0) return {};
  std::vector<Rational> c(p.deg());
  for (std::size_t i = 1; i <= p.deg(); ++i) c[i - 1] = p.coeff(i) * static_cast<unsigned long>(i);
  return ExactPoly(std::move(c));
}

inline ExactPoly derivative(const ExactPoly& p, std::size_t order) {
  ExactPoly r = p;
  for (std::size_t k = 0; k < order && !r.is_zero(); ++k) r = derivative(r);
  return r;
}

/// Euclidean division: a = q*b + r with deg r < deg b.
inline std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b) {
  if (b.is_zero()) throw ArgumentError("polynomial division by zero");
  if (a.is_zero() || a.deg() < b.deg()) return {ExactPoly{}, a};
  std::vector<Rational> rem(a.coeffs().begin(), a.coeffs().end());
  const std::size_t db = b.deg();
  std::vector<Rational> quo(a.deg() - db + 1);
  const Rational& lb = b.leading();
  for (std::size_t k = quo.size(); k-- > 0;) {
    const Rational t = rem[k + db] / lb;
    quo[k] = t;
    if (t == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= t * b.coeff(j);
  }
  rem.resize(db);
  return {ExactPoly(std::move(quo)), ExactPoly(std::move(rem))};
}

/// Quotient of a division known to be exact.
inline ExactPoly exact_div(const ExactPoly& a, const ExactPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw ArgumentError("polynomial division is not exact");
  return q;
}

inline ExactPoly make_monic(ExactPoly p) {
  if (p.is_zero()) return p;
  const Rational lc = p.leading();
  return p / lc;
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
inline ExactPoly gcd(ExactPoly a, ExactPoly b) {
  while (!b.is_zero()) {
    ExactPoly r = divmod(a, b).second;
    a = std::move(b);
    b = make_monic(std::move(r));
  }
  return make_monic(std::move(a));
}

namespace detail {

using PolyMatrix = std::vector<std::vector<ExactPoly>>;

// Laplace expansion along the first row; used for small Wronskians.
inline ExactPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  ExactPoly det;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    PolyMatrix minor(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      minor[r - 1].reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) minor[r - 1].push_back(m[r][c]);
    }
    ExactPoly term = m[0][col] * cofactor_det(minor);
    if (col % 2 == 0) det += term;
    else det -= term;
  }
  return det;
}

// Fraction-free Bareiss elimination over Q[x]; every division is exact.
inline ExactPoly bareiss_det(PolyMatrix m) {
  const std::size_t n = m.size();
  ExactPoly prev = ExactPoly::constant(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
      }
      m[i][k] = ExactPoly{};
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace detail

/// Matrix sizes up to this use cofactor expansion; larger ones use Bareiss.
inline constexpr std::size_t kCofactorWronskianLimit = 4;

/// det[ps[j]^{(i)}]_{i,j}, the Wronskian of ps in the given order.
inline ExactPoly wronskian(std::span<const ExactPoly> ps) {
  if (ps.empty()) throw ArgumentError("Wronskian of an empty sequence");
  const std::size_t n = ps.size();
  detail::PolyMatrix m(n, std::vector<ExactPoly>(n));
  for (std::size_t j = 0; j < n; ++j) {
    m[0][j] = ps[j];
    for (std::size_t i = 1; i < n; ++i) m[i][j] = derivative(m[i - 1][j]);
  }
  if (n <= kCofactorWronskianLimit) return detail::cofactor_det(m);
  return detail::bareiss_det(std::move(m));
}

inline ExactPoly wronskian(std::initializer_list<ExactPoly> ps) {
  return wronskian(std::span<const ExactPoly>(ps.begin(), ps.size()));
}

/// Number of distinct real roots, from the Sturm sequence p, p', -rem, ...
inline std::size_t count_real_roots(const ExactPoly& p) {
  if (p.is_zero()) throw ArgumentError("real roots of the zero polynomial");
  std::vector<ExactPoly> seq{p, derivative(p)};
  while (!seq.back().is_zero()) {
    ExactPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    // Positive rescaling keeps the signs and tames coefficient growth.
    if (!r.is_zero()) r /= abs(r.leading());
    seq.push_back(-r);
  }
  seq.pop_back();

  auto variations = [&](bool at_plus_infinity) {
    std::size_t count = 0;
    int last = 0;
    for (const auto& s : seq) {
      int sign = sgn(s.leading());
      if (!at_plus_infinity && s.deg() % 2 == 1) sign = -sign;
      if (last != 0 && sign != last) ++count;
      last = sign;
    }
    return count;
  };
  return variations(false) - variations(true);
}

/// Human-readable form in descending powers, e.g. "16x^4 + 12".
inline std::string to_string(const ExactPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.deg() + 1; k-- > 0;) {
    const Rational c = p.coeff(k);
    if (c == 0) continue;
    const Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool integral = mag.get_den() == 1;
    if (k == 0 || mag != 1) {
      if (integral) os << mag.get_num().get_str();
      else if (k == 0) os << mag.get_str();
      else os << "(" << mag.get_str() << ")";
    }
    if (k >= 1) os << "x";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

}  // namespace xhermite
