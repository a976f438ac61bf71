#pragma once

/**
 * @file quadrature.hpp
 * @brief Floating-point oracle: Gauss-Hermite rules and weighted inner
 *        products against W = eta^{-2} e^{-x^2}.
 *
 * Nodes come from the eigenvalues of the symmetric Jacobi matrix of the
 * Hermite recurrence (Golub-Welsch), are polished by Newton steps on the
 * orthonormal recurrence, and the weights are recomputed as Christoffel
 * numbers 1 / (n phi_{n-1}(x)^2). The e^{-x^2} factor lives inside the
 * weights, so integrands are evaluated without it.
 *
 * Rational integrands are not integrated exactly by any finite rule; the
 * error is governed by the distance of the complex zeros of eta from the
 * real axis. guarded_inner_product() doubles the order until two successive
 * results agree.
 */

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "xhermite/operators.hpp"

namespace xhermite {

inline const double kSqrtPi = std::sqrt(std::numbers::pi);

struct QuadRule {
  int order = 0;
  std::vector<double> nodes;    ///< ascending
  std::vector<double> weights;  ///< include e^{-x^2}
};

namespace detail {
// Orthonormal Hermite values phi_{n-1}(x), phi_n(x) for the weight e^{-x^2},
// both divided by 1e200^scale so that large |x| does not overflow.
struct OrthonormalPair {
  double prev;
  double cur;
  int scale;
};

inline OrthonormalPair orthonormal_pair(int n, double x) {
  double prev = 0.0;
  double cur = 1.0 / std::sqrt(kSqrtPi);
  int scale = 0;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e200) {
      cur *= 1e-200;
      prev *= 1e-200;
      ++scale;
    }
  }
  return {prev, cur, scale};
}
}  // namespace detail

inline QuadRule gauss_hermite_rule(int order) {
  if (order < 1) throw ArgumentError("quadrature order must be positive");
  QuadRule rule;
  rule.order = order;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(std::max(order - 1, 0));
  for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();

  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    double x = ev[i];
    for (int it = 0; it < 3; ++it) {
      const auto [pm1, p, scale] = detail::orthonormal_pair(order, x);
      // phi_n' = sqrt(2n) phi_{n-1}; the common scale cancels in the ratio.
      const double dp = std::sqrt(2.0 * order) * pm1;
      if (dp == 0.0) break;
      x -= p / dp;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
  }
  // Exact symmetry: average each node with its mirror.
  for (int i = 0; i < order / 2; ++i) {
    auto& a = rule.nodes[static_cast<std::size_t>(i)];
    auto& b = rule.nodes[static_cast<std::size_t>(order - 1 - i)];
    const double m = 0.5 * (b - a);
    a = -m;
    b = m;
  }
  if (order % 2 == 1) rule.nodes[static_cast<std::size_t>(order / 2)] = 0.0;
  for (int i = 0; i < order; ++i) {
    const auto [pm1, p, scale] = detail::orthonormal_pair(order, rule.nodes[static_cast<std::size_t>(i)]);
    // A rescaled phi_{n-1} is beyond 1e200, so the weight underflows to 0.
    rule.weights[static_cast<std::size_t>(i)] = scale > 0 ? 0.0 : 1.0 / (order * pm1 * pm1);
  }
  return rule;
}

/// Default order for a degree-n integrand: max(60, 4n).
inline int default_quad_order(int n) { return std::max(60, 4 * n); }

/// Double-precision copy of an exact polynomial for Horner evaluation.
class FloatPoly {
 public:
  static constexpr double kMagnitudeWarning = 1e15;

  explicit FloatPoly(const ExactPoly& p) {
    for (const auto& c : p.coeffs()) {
      c_.push_back(c.get_d());
      max_abs_ = std::max(max_abs_, std::abs(c_.back()));
    }
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Coefficients above 1e15 lose integer precision in double.
  bool magnitude_warning() const noexcept { return max_abs_ > kMagnitudeWarning; }

 private:
  std::vector<double> c_;
  double max_abs_ = 0.0;
};

/// Evaluator for W_eta = eta^{-2} e^{-x^2}; eta must have no real zeros.
class WeightEval {
 public:
  explicit WeightEval(const ExactPoly& eta_poly)
      : eta_(eta_poly), d1_(derivative(eta_poly)), d2_(derivative(eta_poly, 2)) {
    if (eta_poly.is_zero() || count_real_roots(eta_poly) != 0)
      throw AdmissibilityError("weight polynomial has real zeros: " + to_string(eta_poly));
  }

  double eta(double x) const { return eta_(x); }
  double weight(double x) const {
    const double e = eta_(x);
    return std::exp(-x * x) / (e * e);
  }
  /// R_eta = eta^{-3} (eta'' + 2x eta') e^{-x^2}.
  double r_eta(double x) const {
    const double e = eta_(x);
    return (d2_(x) + 2.0 * x * d1_(x)) * std::exp(-x * x) / (e * e * e);
  }

  /// sum_k w_k f(x_k) g(x_k) / eta(x_k)^2.
  double inner(const FloatPoly& f, const FloatPoly& g, const QuadRule& rule) const {
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double x = rule.nodes[k];
      const double e = eta_(x);
      s += rule.weights[k] * f(x) * g(x) / (e * e);
    }
    return s;
  }

  double inner(const ExactPoly& f, const ExactPoly& g, const QuadRule& rule) const {
    return inner(FloatPoly(f), FloatPoly(g), rule);
  }

  /// min over nodes of eta(x_k)^2.
  double min_eta_squared(const QuadRule& rule) const {
    double m = INFINITY;
    for (double x : rule.nodes) m = std::min(m, eta_(x) * eta_(x));
    return m;
  }

 private:
  FloatPoly eta_, d1_, d2_;
};

/// q * sqrt(pi), the only place sqrt(pi) meets an exact norming constant.
inline double norming_value(const NormingConstant& c) { return c.q.get_d() * kSqrtPi; }

/// <f, g>_lambda by quadrature.
inline double inner_product(const Partition& lambda, const ExactPoly& f, const ExactPoly& g,
                            const QuadRule& rule) {
  if (!is_even(lambda)) throw AdmissibilityError(to_string(lambda) + " is not an even partition");
  return WeightEval(eta(lambda)).inner(f, g, rule);
}

struct GuardedValue {
  double value = 0.0;
  int order = 0;           ///< order of the returned value
  double last_change = 0;  ///< relative change in the final doubling
  bool converged = false;
};

/// Doubles the rule order from start_order until two successive values agree
/// to rel_tol (relative to scale, or to the value when scale is 0).
template <class Integrand>
GuardedValue guarded(Integrand&& integrand, int start_order, double rel_tol, int max_order = 1024,
                     double scale = 0.0) {
  GuardedValue g;
  int order = std::max(start_order, 1);
  double prev = integrand(gauss_hermite_rule(order));
  for (;;) {
    const int next_order = order * 2;
    if (next_order > max_order) {
      g.value = prev;
      g.order = order;
      return g;
    }
    const double cur = integrand(gauss_hermite_rule(next_order));
    const double ref = scale > 0 ? scale : std::max(std::abs(cur), 1e-300);
    g.last_change = std::abs(cur - prev) / ref;
    g.value = cur;
    g.order = next_order;
    if (g.last_change < rel_tol) {
      g.converged = true;
      return g;
    }
    prev = cur;
    order = next_order;
  }
}

inline GuardedValue guarded_inner_product(const WeightEval& w, const ExactPoly& f, const ExactPoly& g,
                                          int start_order, double rel_tol = 1e-12, double scale = 0.0) {
  const FloatPoly ff(f), gg(g);
  return guarded([&](const QuadRule& r) { return w.inner(ff, gg, r); }, start_order, rel_tol, 1024, scale);
}

/// Gram matrix of H^lambda_n over the given allowed degrees.
struct GramMatrix {
  std::vector<int> degrees;
  Eigen::MatrixXd entries;
  std::vector<double> formula_diagonal;  ///< sqrt(pi) 2^{n-N} n! / pi_N(n)

  /// max_i |G_ii - formula_i| / formula_i.
  double max_relative_deviation() const {
    double m = 0.0;
    for (std::size_t i = 0; i < degrees.size(); ++i) m = std::max(m, relative_deviation(i));
    return m;
  }
  double relative_deviation(std::size_t i) const {
    const auto k = static_cast<Eigen::Index>(i);
    return std::abs(entries(k, k) - formula_diagonal[i]) / formula_diagonal[i];
  }
  /// max_{i != j} |G_ij| / sqrt(G_ii G_jj).
  double max_offdiagonal_ratio() const {
    double m = 0.0;
    const auto n = static_cast<Eigen::Index>(degrees.size());
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) m = std::max(m, std::abs(entries(i, j)) / std::sqrt(entries(i, i) * entries(j, j)));
    return m;
  }
};

inline GramMatrix gram_matrix(const Partition& lambda, std::span<const int> degrees, const QuadRule& rule) {
  if (!is_even(lambda)) throw AdmissibilityError(to_string(lambda) + " is not an even partition");
  const FamilySpec fam(lambda);
  for (int n : degrees)
    if (!fam.degrees().is_allowed(n)) throw GapDegreeError(n, "degree " + std::to_string(n) + " is exceptional");
  const WeightEval w(fam.eta_poly());
  GramMatrix g;
  g.degrees.assign(degrees.begin(), degrees.end());
  const auto n = static_cast<Eigen::Index>(degrees.size());
  g.entries = Eigen::MatrixXd::Zero(n, n);
  std::vector<FloatPoly> polys;
  for (int d : degrees) {
    polys.emplace_back(fam.polynomial(d));
    g.formula_diagonal.push_back(norming_value(norming_constant(lambda, d)));
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j)
      g.entries(i, j) = g.entries(j, i) =
          w.inner(polys[static_cast<std::size_t>(i)], polys[static_cast<std::size_t>(j)], rule);
  return g;
}

/// (||alpha psi||^2_xi, (eps0 - eps) ||psi||^2_eta) for an eigenpolynomial psi
/// of tau_{eta_lo} with eigenvalue eps.
inline std::pair<double, double> chain_norm_check(const ChainStep& step, const ExactPoly& psi, long eps,
                                                  const QuadRule& rule) {
  const RatFun hat = alpha_apply(step.eta_hi, step.eta_lo, RatFun(psi));
  if (!hat.is_polynomial())
    throw InconsistencyError("alpha psi is a polynomial", to_string(hat));
  const WeightEval w_lo(step.eta_lo), w_hi(step.eta_hi);
  const ExactPoly& psi_hat = hat.num();
  return {w_hi.inner(psi_hat, psi_hat, rule), static_cast<double>(step.eps0 - eps) * w_lo.inner(psi, psi, rule)};
}

}  // namespace xhermite
