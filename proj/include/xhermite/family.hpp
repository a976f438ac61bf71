#pragma once

/**
 * @file family.hpp
 * @brief Classical Hermite polynomials and the exceptional Hermite family
 *        attached to a partition.
 *
 * For a partition lambda of N with length ell and any l >= ell, set
 * m_{i,l} = lambda_i + l - i. Then
 *
 *   eta_lambda  = Wr(H_{m_{l,l}}, ..., H_{m_{1,l}}) / C_l
 *   H^lambda_n  = Wr(H_{m_{l,l}}, ..., H_{m_{1,l}}, H_{n-N+l}) / (2^l C_l pi_l(n))
 *
 * and both are independent of l. The normalisations make the leading
 * coefficients exactly 2^N and 2^n; the constructors check this.
 */

#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "xhermite/exact_poly.hpp"
#include "xhermite/partition.hpp"
#include "xhermite/rat_fun.hpp"

namespace xhermite {

/// H_n from H_0 = 1, H_1 = 2x, H_{n+1} = 2x H_n - 2n H_{n-1}.
inline ExactPoly hermite(int n) {
  if (n < 0) throw ArgumentError("negative Hermite degree");
  ExactPoly prev = ExactPoly::constant(1);
  if (n == 0) return prev;
  ExactPoly cur = ExactPoly::monomial(2, 1);
  const ExactPoly two_x = ExactPoly::monomial(2, 1);
  for (int k = 1; k < n; ++k) {
    ExactPoly next = two_x * cur - prev * Rational(2 * k);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline BigInt pow2(long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

inline BigInt factorial(long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// 2^r as an exact rational for any integer r.
inline Rational pow2_rational(long e) {
  return e >= 0 ? Rational(pow2(e)) : Rational(BigInt(1), pow2(-e));
}

namespace detail {
inline void require_size(const Partition& lambda, int l) {
  if (l < lambda.length())
    throw ArgumentError("Wronskian size " + std::to_string(l) + " below partition length " +
                        std::to_string(lambda.length()));
}
}  // namespace detail

/// C^lambda_l = 2^{l(l-1)/2} prod_{i<j} (lambda_i - lambda_j + j - i).
inline BigInt c_constant(const Partition& lambda, int l) {
  detail::require_size(lambda, l);
  BigInt c = pow2(static_cast<long>(l) * (l - 1) / 2);
  for (int i = 1; i <= l; ++i)
    for (int j = i + 1; j <= l; ++j) c *= lambda[i] - lambda[j] + j - i;
  return c;
}

/// pi^lambda_l(n) = prod_{i=1..l} (n - N - lambda_i + i).
inline BigInt pi_factor(const Partition& lambda, int l, int n) {
  detail::require_size(lambda, l);
  BigInt p = 1;
  for (int i = 1; i <= l; ++i) p *= n - lambda.size() - lambda[i] + i;
  return p;
}

/// The Wronskian degrees m_{l,l} < ... < m_{1,l}, smallest first.
inline std::vector<int> wronskian_degrees(const Partition& lambda, int l) {
  detail::require_size(lambda, l);
  std::vector<int> m;
  for (int i = l; i >= 1; --i) m.push_back(lambda[i] + l - i);
  return m;
}

inline std::vector<ExactPoly> hermite_list(std::span<const int> degrees) {
  std::vector<ExactPoly> out;
  out.reserve(degrees.size());
  for (int d : degrees) out.push_back(hermite(d));
  return out;
}

/// Wr(H_{d_1}, ..., H_{d_k}) in the given order; the empty list gives 1.
inline ExactPoly hermite_wronskian(std::span<const int> degrees) {
  if (degrees.empty()) return ExactPoly::constant(1);
  return wronskian(hermite_list(degrees));
}

namespace detail {

inline ExactPoly eta_raw(const Partition& lambda, int l) {
  ExactPoly w = hermite_wronskian(wronskian_degrees(lambda, l)) / Rational(c_constant(lambda, l));
  if (w.is_zero() || w.deg() != static_cast<std::size_t>(lambda.size()) ||
      w.leading() != Rational(pow2(lambda.size()))) {
    throw InconsistencyError("eta leading term 2^N x^N", to_string(w));
  }
  return w;
}

inline ExactPoly exceptional_raw(const Partition& lambda, int n, int l) {
  std::vector<int> degrees = wronskian_degrees(lambda, l);
  degrees.push_back(n - lambda.size() + l);
  const Rational scale = Rational(pow2(l) * c_constant(lambda, l) * pi_factor(lambda, l, n));
  ExactPoly w = hermite_wronskian(degrees) / scale;
  if (w.is_zero() || w.deg() != static_cast<std::size_t>(n) || w.leading() != Rational(pow2(n))) {
    throw InconsistencyError("H^lambda_n leading term 2^n x^n", to_string(w));
  }
  return w;
}

inline void require_allowed(const Partition& lambda, int n) {
  if (n < 0) throw ArgumentError("negative degree");
  if (degree_sets(lambda).is_exceptional(n)) {
    throw GapDegreeError(n, "degree " + std::to_string(n) + " is exceptional for " +
                                to_string(lambda));
  }
}

}  // namespace detail

/// eta_lambda from an l-sized Wronskian (default l = ell). For l > ell the
/// result is compared against the ell-sized construction.
inline ExactPoly eta(const Partition& lambda, std::optional<int> l = std::nullopt) {
  const int size = l.value_or(lambda.length());
  ExactPoly e = detail::eta_raw(lambda, size);
  if (size > lambda.length() && !(e == detail::eta_raw(lambda, lambda.length())))
    throw InconsistencyError("eta shift invariance", to_string(e));
  return e;
}

/// H^lambda_n for an allowed degree n (l-sized Wronskian, default l = ell).
inline ExactPoly exceptional_hermite(const Partition& lambda, int n,
                                     std::optional<int> l = std::nullopt) {
  const int size = l.value_or(lambda.length());
  detail::require_size(lambda, size);
  detail::require_allowed(lambda, n);
  ExactPoly h = detail::exceptional_raw(lambda, n, size);
  if (size > lambda.length() && !(h == detail::exceptional_raw(lambda, n, lambda.length())))
    throw InconsistencyError("H^lambda_n shift invariance", to_string(h));
  return h;
}

/// H^lambda_n / eta_lambda built without C_l, from l-sized Wronskians.
inline RatFun exceptional_ratio(const Partition& lambda, int n, int l) {
  detail::require_size(lambda, l);
  detail::require_allowed(lambda, n);
  const std::vector<int> base = wronskian_degrees(lambda, l);
  std::vector<int> ext = base;
  ext.push_back(n - lambda.size() + l);
  const Rational scale = Rational(pow2(l) * pi_factor(lambda, l, n));
  return RatFun(hermite_wronskian(ext), hermite_wronskian(base) * scale);
}

/// <H^lambda_n, H^lambda_n>_lambda = q * sqrt(pi); only q is stored.
struct NormingConstant {
  int n = 0;
  Rational q;
};

/// q = 2^{n-N} n! / pi^lambda_N(n), for even lambda and allowed n.
inline NormingConstant norming_constant(const Partition& lambda, int n) {
  if (!is_even(lambda))
    throw AdmissibilityError("norming constants need an even partition, got " + to_string(lambda));
  detail::require_allowed(lambda, n);
  const BigInt pi_n = pi_factor(lambda, lambda.size(), n);
  NormingConstant c{n, pow2_rational(n - lambda.size()) * Rational(factorial(n)) / Rational(pi_n)};
  if (c.q <= 0) throw InconsistencyError("positive norming constant", c.q.get_str());
  return c;
}

/// Scalar s with Wr(H_{k_N}, ..., H_{k_1}) = s * eta_lambda; equals C^lambda_N.
inline Rational gapset_wronskian_scalar(const Partition& lambda) {
  const DegreeSets d = degree_sets(lambda);
  // k_N < ... < k_1 is the ascending order of K_lambda.
  const ExactPoly w = hermite_wronskian(d.exceptional);
  const ExactPoly e = eta(lambda);
  const Rational s = w.is_zero() ? Rational(0) : w.leading() / e.leading();
  if (s == 0 || !(w == e * s)) throw InconsistencyError("K_lambda Wronskian representation", to_string(w));
  if (s != Rational(c_constant(lambda, lambda.size())))
    throw InconsistencyError("K_lambda Wronskian scalar = C_N", s.get_str());
  return s;
}

/// A partition with its eta, degree sets and a memo of H^lambda_n.
/// The memo is mutex-protected, so a FamilySpec may be shared across threads.
class FamilySpec {
 public:
  explicit FamilySpec(Partition lambda)
      : lambda_(std::move(lambda)), eta_(eta(lambda_)), degrees_(degree_sets(lambda_)) {}

  const Partition& lambda() const noexcept { return lambda_; }
  const ExactPoly& eta_poly() const noexcept { return eta_; }
  const DegreeSets& degrees() const noexcept { return degrees_; }

  ExactPoly polynomial(int n) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(n); it != cache_.end()) return it->second;
    }
    ExactPoly h = exceptional_hermite(lambda_, n);
    std::lock_guard lock(mutex_);
    return cache_.emplace(n, std::move(h)).first->second;
  }

  std::vector<int> allowed(int cutoff) const { return degrees_.allowed(cutoff); }

 private:
  Partition lambda_;
  ExactPoly eta_;
  DegreeSets degrees_;
  mutable std::mutex mutex_;
  mutable std::map<int, ExactPoly> cache_;
};

}  // namespace xhermite
