#pragma once

// Test-only oracles. Each one computes the same quantity as a library routine
// along an unrelated path, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "xhermite/exact_poly.hpp"

namespace oracle {

using xhermite::ExactPoly;
using xhermite::Rational;

/// Leibniz expansion det = sum_sigma sgn(sigma) prod_i M[i][sigma(i)].
inline ExactPoly leibniz_wronskian(const std::vector<ExactPoly>& ps) {
  const std::size_t n = ps.size();
  std::vector<std::vector<ExactPoly>> m(n, std::vector<ExactPoly>(n));
  for (std::size_t j = 0; j < n; ++j) {
    m[0][j] = ps[j];
    for (std::size_t i = 1; i < n; ++i) m[i][j] = xhermite::derivative(m[i - 1][j]);
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  ExactPoly det;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    ExactPoly term = ExactPoly::constant(inversions % 2 == 0 ? 1 : -1);
    for (std::size_t i = 0; i < n; ++i) term = term * m[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// H_n = n! sum_m (-1)^m (2x)^{n-2m} / (m! (n-2m)!).
inline ExactPoly hermite_explicit(int n) {
  auto fact = [](int k) {
    mpz_class f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
  for (int m = 0; 2 * m <= n; ++m) {
    mpz_class pow2 = 1;
    for (int i = 0; i < n - 2 * m; ++i) pow2 *= 2;
    Rational v(fact(n) * pow2, fact(m) * fact(n - 2 * m));
    v.canonicalize();
    c[static_cast<std::size_t>(n - 2 * m)] = (m % 2 == 0) ? v : Rational(-v);
  }
  return ExactPoly(std::move(c));
}

/// Sign changes of p on a uniform rational grid over [-B, B], B the Cauchy
/// bound; exact evaluation, counts distinct simple roots separated by the grid.
inline std::size_t grid_sign_changes(const ExactPoly& p, int steps) {
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i)
    bound = std::max(bound, Rational(abs(p.coeff(i) / p.leading())));
  bound += 1;
  std::size_t changes = 0;
  int last = 0;
  for (int k = 0; k <= steps; ++k) {
    const Rational x = -bound + Rational(2 * k) * bound / steps;
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Truncated trapezoid rule for integral of f over the real line; exponentially
/// accurate for functions analytic in a strip around the axis.
template <class F>
double trapezoid(F&& f, double half_width = 12.0, double h = 0.01) {
  double s = 0.0;
  const int n = static_cast<int>(half_width / h);
  for (int k = -n; k <= n; ++k) s += f(k * h);
  return s * h;
}

inline ExactPoly random_poly(std::mt19937& rng, int max_degree, int coeff_bound = 9) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-coeff_bound, coeff_bound);
  std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& v : c) v = coef(rng);
  if (c.back() == 0) c.back() = 1;
  return ExactPoly(std::move(c));
}

inline double eval(const ExactPoly& p, double x) {
  double acc = 0.0;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * x + p.coeff(k).get_d();
  return acc;
}

}  // namespace oracle
