#pragma once

/**
 * @file operators.hpp
 * @brief The differential expressions chi, tau, alpha, beta over exact
 *        rational functions, and exact verification of the identities that
 *        tie exceptional Hermite operators together.
 *
 * All Gaussian factors cancel analytically, so every check here is a
 * statement about rational functions. A check returns its residual and
 * throws InconsistencyError (carrying the residual) when it is non-zero.
 *
 * beta is used in its expanded form
 *
 *   beta_{eta,xi} y = Wr(eta e^{x^2}, y) / (xi e^{x^2})
 *                   = (eta y' - eta' y - 2x eta y) / xi.
 */

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "xhermite/family.hpp"

namespace xhermite {

/// chi[f,g] = f g'' - 2 f'g' + f''g - 2x (f g' - f'g).
inline ExactPoly chi(const ExactPoly& f, const ExactPoly& g) {
  const ExactPoly f1 = derivative(f), g1 = derivative(g);
  const ExactPoly f2 = derivative(f1), g2 = derivative(g1);
  return f * g2 - Rational(2) * (f1 * g1) + f2 * g -
         ExactPoly::monomial(2, 1) * (f * g1 - f1 * g);
}

namespace detail {
inline RatFun chi(const RatFun& f, const RatFun& g) {
  const RatFun f1 = derivative(f), g1 = derivative(g);
  const RatFun f2 = derivative(f1), g2 = derivative(g1);
  const RatFun two_x(ExactPoly::monomial(2, 1));
  return f * g2 - RatFun::constant(2) * f1 * g1 + f2 * g - two_x * (f * g1 - f1 * g);
}

inline void require_nonzero(const ExactPoly& p, const char* name) {
  if (p.is_zero()) throw ArgumentError(std::string(name) + " must be a non-zero polynomial");
}

inline void require_zero(const RatFun& r, const std::string& identity) {
  if (!r.is_zero()) throw InconsistencyError(identity, to_string(r));
}
}  // namespace detail

/// tau_eta y = chi[eta, y] / eta.
inline RatFun tau_apply(const ExactPoly& eta_poly, const RatFun& y) {
  detail::require_nonzero(eta_poly, "eta");
  if (y.is_polynomial()) return RatFun(chi(eta_poly, y.num()), eta_poly);
  return detail::chi(RatFun(eta_poly), y) / RatFun(eta_poly);
}

/// alpha_{xi,eta} y = Wr(xi, y) / eta.
inline RatFun alpha_apply(const ExactPoly& xi, const ExactPoly& eta_poly, const RatFun& y) {
  detail::require_nonzero(eta_poly, "eta");
  return (RatFun(xi) * derivative(y) - RatFun(derivative(xi)) * y) / RatFun(eta_poly);
}

/// beta_{eta,xi} y = (eta y' - eta' y - 2x eta y) / xi.
inline RatFun beta_apply(const ExactPoly& eta_poly, const ExactPoly& xi, const RatFun& y) {
  detail::require_nonzero(xi, "xi");
  const ExactPoly shifted = derivative(eta_poly) + ExactPoly::monomial(2, 1) * eta_poly;
  return (RatFun(eta_poly) * derivative(y) - RatFun(shifted) * y) / RatFun(xi);
}

/// chi[eta, y] - eigenvalue * eta * y.
inline ExactPoly eigen_residual(const ExactPoly& eta_poly, const ExactPoly& y, long eigenvalue) {
  return chi(eta_poly, y) - Rational(eigenvalue) * (eta_poly * y);
}

/// Checks chi[eta_lambda, H^lambda_n] = 2(N-n) eta_lambda H^lambda_n; returns 2(N-n).
inline long verify_eigen(const Partition& lambda, int n) {
  const ExactPoly h = exceptional_hermite(lambda, n);
  const long ev = 2L * (lambda.size() - n);
  const ExactPoly r = eigen_residual(eta(lambda), h, ev);
  if (!r.is_zero()) {
    throw InconsistencyError("chi[eta, H^lambda_" + std::to_string(n) + "] = 2(N-n) eta H",
                             to_string(r));
  }
  return ev;
}

/// With eta = Wr(H_{ms...}) and xi = Wr(H_{ms...}, H_m), checks
/// chi(eta, xi) = 2(l - m) eta xi; returns 2(l - m).
inline long verify_chi_general(std::span<const int> ms, int m) {
  std::set<int> seen(ms.begin(), ms.end());
  if (seen.size() != ms.size() || seen.count(m) != 0)
    throw ArgumentError("Wronskian degrees must be distinct");
  std::vector<int> ext(ms.begin(), ms.end());
  ext.push_back(m);
  const ExactPoly e = hermite_wronskian(ms);
  const ExactPoly xi = hermite_wronskian(ext);
  const long eps = 2L * (static_cast<long>(ms.size()) - m);
  const ExactPoly r = eigen_residual(e, xi, eps);
  if (!r.is_zero()) throw InconsistencyError("chi(eta, xi) = 2(l-m) eta xi", to_string(r));
  return eps;
}

enum class ChainMode { ascending, descending };

/// One Darboux step tau_lo = beta alpha + eps0, tau_hi = alpha beta + eps0 + 2,
/// where chi(eta_lo, eta_hi) = eps0 eta_lo eta_hi.
struct ChainStep {
  struct Meta {
    Partition lower;                ///< lambda^(j) (descending) or lambda (ascending)
    Partition upper;                ///< lambda^(j+1) (descending) or lambda (ascending)
    int length = 0;                 ///< ell_j (descending); N + i (ascending)
    std::vector<int> added_degrees; ///< n_1..n_{i+1} (ascending only)
  };

  int j = 0;
  ExactPoly eta_lo;
  ExactPoly eta_hi;
  long eps0 = 0;
  Meta meta;
};

namespace detail {
inline void check_step(const ChainStep& s) {
  require_nonzero(s.eta_lo, "eta_lo");
  require_nonzero(s.eta_hi, "eta_hi");
  const ExactPoly r = eigen_residual(s.eta_lo, s.eta_hi, s.eps0);
  if (!r.is_zero())
    throw InconsistencyError("chain step " + std::to_string(s.j) + " chi invariant", to_string(r));
}

inline void require_even(const Partition& lambda) {
  if (!is_even(lambda))
    throw AdmissibilityError(to_string(lambda) + " is not an even partition");
}
}  // namespace detail

/// Ascending chain over eta_i = Wr(H_{k_N}, ..., H_{k_1}, H_{n_1}, ..., H_{n_i})
/// for a user-chosen list of distinct allowed degrees; eps0 = 2(N + i - n_{i+1}).
inline std::vector<ChainStep> build_ascending_chain(const Partition& lambda,
                                                    std::span<const int> degrees) {
  detail::require_even(lambda);
  const DegreeSets d = degree_sets(lambda);
  std::set<int> seen;
  for (int n : degrees) {
    if (!d.is_allowed(n)) throw GapDegreeError(n, "degree " + std::to_string(n) + " is not allowed");
    if (!seen.insert(n).second) throw ArgumentError("repeated degree in ascending chain");
  }
  std::vector<int> wr = d.exceptional;
  std::vector<ChainStep> chain;
  ExactPoly lo = hermite_wronskian(wr);
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const int next = degrees[i];
    wr.push_back(next);
    ExactPoly hi = hermite_wronskian(wr);
    ChainStep s;
    s.j = static_cast<int>(i);
    s.eps0 = 2L * (lambda.size() + static_cast<long>(i) - next);
    s.meta = {lambda, lambda, lambda.size() + static_cast<int>(i),
              std::vector<int>(degrees.begin(), degrees.begin() + static_cast<long>(i) + 1)};
    s.eta_lo = lo;
    s.eta_hi = hi;
    detail::check_step(s);
    chain.push_back(std::move(s));
    lo = std::move(hi);
  }
  return chain;
}

/// Descending mode: lambda_1 steps eta_{lambda^(j)} -> eta_{lambda^(j+1)} with
/// eps0 = 2 ell_j, ending at the classical eta = 1. Ascending mode: the
/// ascending chain over the sporadic degrees.
inline std::vector<ChainStep> build_chain(const Partition& lambda, ChainMode mode) {
  detail::require_even(lambda);
  if (mode == ChainMode::ascending) return build_ascending_chain(lambda, degree_sets(lambda).sporadic);
  std::vector<ChainStep> chain;
  ExactPoly lo = eta(lambda);
  for (int j = 0; j < lambda.largest(); ++j) {
    Partition lower = truncate(lambda, j);
    Partition upper = truncate(lambda, j + 1);
    detail::require_even(upper);
    ExactPoly hi = eta(upper);
    ChainStep s;
    s.j = j;
    s.eps0 = 2L * lower.length();
    s.eta_lo = lo;
    s.eta_hi = hi;
    s.meta = {lower, upper, lower.length(), {}};
    detail::check_step(s);
    chain.push_back(std::move(s));
    lo = std::move(hi);
  }
  if (!chain.empty() && chain.back().eta_hi.deg() != 0)
    throw InconsistencyError("descending chain ends at the classical operator",
                             to_string(chain.back().eta_hi));
  return chain;
}

struct FactorizationResiduals {
  RatFun lower;  ///< tau_eta y - beta alpha y - eps0 y
  RatFun upper;  ///< tau_xi y - alpha beta y - (eps0 + 2) y
};

inline FactorizationResiduals factorization_residuals(const ChainStep& step, const ExactPoly& probe) {
  const ExactPoly& e = step.eta_lo;
  const ExactPoly& xi = step.eta_hi;
  const RatFun y(probe);
  FactorizationResiduals r;
  r.lower = tau_apply(e, y) - beta_apply(e, xi, alpha_apply(xi, e, y)) -
            RatFun::constant(step.eps0) * y;
  r.upper = tau_apply(xi, y) - alpha_apply(xi, e, beta_apply(e, xi, y)) -
            RatFun::constant(step.eps0 + 2) * y;
  return r;
}

/// Both composition identities of one step on a probe polynomial.
inline FactorizationResiduals verify_factorization(const ChainStep& step, const ExactPoly& probe) {
  detail::check_step(step);
  FactorizationResiduals r = factorization_residuals(step, probe);
  detail::require_zero(r.lower, "tau_eta = beta alpha + eps0 (step " + std::to_string(step.j) + ")");
  detail::require_zero(r.upper, "tau_xi = alpha beta + eps0 + 2 (step " + std::to_string(step.j) + ")");
  return r;
}

/// (alpha f) g / xi^2 + f (beta g) / eta^2 - (P' - 2x P), P = f g / (eta xi):
/// the adjoint identity with the common e^{-x^2} divided out.
inline RatFun adjoint_identity_residual(const ExactPoly& xi, const ExactPoly& eta_poly,
                                        const ExactPoly& f, const ExactPoly& g) {
  detail::require_nonzero(xi, "xi");
  detail::require_nonzero(eta_poly, "eta");
  const RatFun lhs = alpha_apply(xi, eta_poly, f) * RatFun(g) / RatFun(xi * xi) +
                     RatFun(f) * beta_apply(eta_poly, xi, g) / RatFun(eta_poly * eta_poly);
  const RatFun p(f * g, eta_poly * xi);
  const RatFun r = lhs - (derivative(p) - RatFun(ExactPoly::monomial(2, 1)) * p);
  detail::require_zero(r, "adjoint identity");
  return r;
}

/// (tau f) g - f (tau g) + eta^2 D[Wr(f,g)/eta^2] - 2x Wr(f,g): Lagrange's
/// identity W (tau f) g - W f (tau g) = -(W Wr(f,g))' with W = eta^{-2} e^{-x^2}.
inline RatFun lagrange_identity_residual(const ExactPoly& eta_poly, const ExactPoly& f,
                                         const ExactPoly& g) {
  detail::require_nonzero(eta_poly, "eta");
  const ExactPoly w = wronskian({f, g});
  const ExactPoly e2 = eta_poly * eta_poly;
  const RatFun r = tau_apply(eta_poly, f) * RatFun(g) - RatFun(f) * tau_apply(eta_poly, g) +
                   RatFun(e2) * derivative(RatFun(w, e2)) -
                   RatFun(ExactPoly::monomial(2, 1) * w);
  detail::require_zero(r, "Lagrange identity");
  return r;
}

struct NormChainState {
  int i = 0;
  ExactPoly xi;
  ExactPoly eta;
  RatFun rho;
};

/// eta_i = Wr(H_{m_1..m_i}), xi_i = Wr(H_{m_1..m_i}, H_m), rho_0 = 0,
/// rho_{i+1} = xi_i xi_{i+1} / (eta_i eta_{i+1}) + 2(m - m_{i+1}) rho_i.
inline std::vector<NormChainState> norm_chain(std::span<const int> ms, int m) {
  std::set<int> seen(ms.begin(), ms.end());
  if (seen.size() != ms.size() || seen.count(m) != 0)
    throw ArgumentError("norm identity degrees must be distinct");
  std::vector<NormChainState> states;
  states.push_back({0, hermite(m), ExactPoly::constant(1), RatFun()});
  std::vector<int> prefix;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    prefix.push_back(ms[i]);
    std::vector<int> ext = prefix;
    ext.push_back(m);
    const NormChainState& prev = states.back();
    NormChainState next;
    next.i = static_cast<int>(i) + 1;
    next.eta = hermite_wronskian(prefix);
    next.xi = hermite_wronskian(ext);
    next.rho = RatFun(prev.xi * next.xi, prev.eta * next.eta) +
               RatFun::constant(2L * (m - ms[i])) * prev.rho;
    states.push_back(std::move(next));
  }
  return states;
}

/// (xi_l/eta_l)^2 - 2^l prod(m - m_i) xi_0^2 - (rho_l' - 2x rho_l).
inline RatFun norm_identity_residual(std::span<const int> ms, int m) {
  const std::vector<NormChainState> states = norm_chain(ms, m);
  const NormChainState& last = states.back();
  BigInt prefactor = pow2(static_cast<long>(ms.size()));
  for (int mi : ms) prefactor *= m - mi;
  const ExactPoly& xi0 = states.front().xi;
  const RatFun r = RatFun(last.xi * last.xi, last.eta * last.eta) -
                   RatFun(xi0 * xi0 * Rational(prefactor)) -
                   (derivative(last.rho) - RatFun(ExactPoly::monomial(2, 1)) * last.rho);
  detail::require_zero(r, "norm identity");
  return r;
}

/// Sturm-Liouville eigenvalues 2(n - N) for allowed n <= cutoff, ascending.
inline std::vector<long> spectrum(const Partition& lambda, int cutoff) {
  std::vector<long> out;
  for (int n : degree_sets(lambda).allowed(cutoff)) out.push_back(2L * (n - lambda.size()));
  return out;
}

/// Eigenvalues of tau_lambda itself, 2(N - n), for allowed n <= cutoff, ascending.
inline std::vector<long> operator_spectrum(const Partition& lambda, int cutoff) {
  std::vector<long> out = spectrum(lambda, cutoff);
  for (auto& v : out) v = -v;
  std::sort(out.begin(), out.end());
  return out;
}

struct SpectrumStep {
  int j = 0;
  long eps0 = 0;                  ///< 2 ell_j
  long max_lower = 0;             ///< max of the tau spectrum at level j
  std::vector<long> lower_removed;  ///< sigma_j minus {eps0}, windowed
  std::vector<long> upper_shifted;  ///< sigma_{j+1} - 2, windowed
  bool holds() const { return max_lower == eps0 && lower_removed == upper_shifted; }
};

/// Removal rule sigma(T_{j+1} - 2) = sigma(T_j) \ {2 ell_j} along the descending
/// chain, compared on the window of tau eigenvalues >= -2 * window where both
/// truncations are complete.
inline std::vector<SpectrumStep> spectrum_removal(const Partition& lambda, int window) {
  std::vector<SpectrumStep> out;
  for (int j = 0; j < lambda.largest(); ++j) {
    const Partition lower = truncate(lambda, j);
    const Partition upper = truncate(lambda, j + 1);
    SpectrumStep s;
    s.j = j;
    s.eps0 = 2L * lower.length();
    std::vector<long> lo = operator_spectrum(lower, lower.size() + window);
    s.max_lower = lo.back();
    std::erase(lo, s.eps0);
    s.lower_removed = lo;
    for (long v : operator_spectrum(upper, upper.size() + window - 1)) s.upper_shifted.push_back(v - 2);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace xhermite
