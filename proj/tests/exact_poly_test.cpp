#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "xhermite/exact_poly.hpp"

namespace xhermite {
namespace {

const ExactPoly kH2{-2, 0, 4};
const ExactPoly kH3{0, -12, 0, 8};

TEST(Derivative, PowerRule) {
  EXPECT_EQ(derivative(kH2), (ExactPoly{0, 8}));
  EXPECT_EQ(derivative(kH3), (ExactPoly{-12, 0, 24}));
  EXPECT_TRUE(derivative(ExactPoly::constant(7)).is_zero());
  EXPECT_TRUE(derivative(ExactPoly{}).is_zero());
}

TEST(ExactPoly, ZeroDegreeIsSentinel) {
  EXPECT_FALSE(ExactPoly{}.degree().has_value());
  EXPECT_THROW(ExactPoly{}.deg(), ArgumentError);
  EXPECT_EQ(ExactPoly::constant(3).degree(), std::optional<std::size_t>(0));
  // Trailing zeros never survive construction or cancellation.
  EXPECT_EQ((ExactPoly{1, 2, 0, 0}).deg(), 1u);
  EXPECT_TRUE((kH2 - kH2).is_zero());
}

TEST(Wronskian, SmallCases) {
  EXPECT_EQ(wronskian({kH2}), kH2);
  EXPECT_EQ(wronskian({kH2, kH3}), (ExactPoly{24, 0, 0, 0, 32}));
  EXPECT_EQ(wronskian({kH2, kH3, ExactPoly::constant(1)}), (ExactPoly{96, 0, 192}));
  EXPECT_THROW(wronskian(std::span<const ExactPoly>{}), ArgumentError);
}

TEST(Wronskian, AgreesWithLeibnizOracleAcrossBothAlgorithms) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t size = 1 + trial % 6;  // covers cofactor and Bareiss paths
    std::vector<ExactPoly> ps;
    for (std::size_t i = 0; i < size; ++i) ps.push_back(oracle::random_poly(rng, 7, 5));
    EXPECT_EQ(wronskian(ps), oracle::leibniz_wronskian(ps)) << "size " << size;
  }
}

TEST(Wronskian, DegreeAndLeadingCoefficientLaw) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int l = 1 + trial % 6;
    std::set<int> degs;
    std::uniform_int_distribution<int> d(0, 12);
    while (static_cast<int>(degs.size()) < l) degs.insert(d(rng));
    std::vector<int> order(degs.begin(), degs.end());
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<ExactPoly> ps;
    Rational lead = 1;
    long deg_sum = 0;
    for (int deg : order) {
      ExactPoly p = oracle::random_poly(rng, deg, 4);
      std::uniform_int_distribution<int> c(1, 5);
      p += ExactPoly::monomial(c(rng), static_cast<std::size_t>(deg)) - ExactPoly::monomial(p.coeff(static_cast<std::size_t>(deg)), static_cast<std::size_t>(deg));
      ps.push_back(p);
      lead *= p.leading();
      deg_sum += deg;
    }
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j) lead *= order[static_cast<std::size_t>(j)] - order[static_cast<std::size_t>(i)];
    const ExactPoly w = wronskian(ps);
    ASSERT_FALSE(w.is_zero());
    EXPECT_EQ(static_cast<long>(w.deg()), deg_sum - l * (l - 1) / 2);
    EXPECT_EQ(w.leading(), lead);
  }
}

TEST(Wronskian, AlternatingMultilinear) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ExactPoly> ps;
    for (int i = 0; i < 4; ++i) ps.push_back(oracle::random_poly(rng, 6));
    std::vector<ExactPoly> swapped = ps;
    std::swap(swapped[1], swapped[3]);
    EXPECT_EQ(wronskian(swapped), -wronskian(ps));
    std::vector<ExactPoly> repeated = ps;
    repeated[2] = repeated[0];
    EXPECT_TRUE(wronskian(repeated).is_zero());
  }
}

TEST(Divmod, EuclideanDivisionAndGcd) {
  const ExactPoly a{-1, 0, 1};  // x^2 - 1
  const ExactPoly b{-1, 1};     // x - 1
  auto [q, r] = divmod(a, b);
  EXPECT_EQ(q, (ExactPoly{1, 1}));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(a * Rational(3), ExactPoly{-2, 2} * ExactPoly{5, 1}), b);
  EXPECT_THROW(divmod(a, ExactPoly{}), ArgumentError);
  EXPECT_THROW(exact_div(a, ExactPoly{0, 1}), ArgumentError);
}

TEST(CountRealRoots, Examples) {
  EXPECT_EQ(count_real_roots(ExactPoly{1, 0, 1}), 0u);
  EXPECT_EQ(count_real_roots(ExactPoly{-1, 0, 1}), 2u);
  EXPECT_EQ(count_real_roots(ExactPoly{12, 0, 0, 0, 16}), 0u);
  EXPECT_EQ(count_real_roots(ExactPoly::constant(5)), 0u);
  // (x - 1)^2 (x + 2): two distinct roots.
  EXPECT_EQ(count_real_roots(ExactPoly{-1, 1} * ExactPoly{-1, 1} * ExactPoly{2, 1}), 2u);
  EXPECT_THROW(count_real_roots(ExactPoly{}), ArgumentError);
}

TEST(CountRealRoots, AgreesWithGridSignChanges) {
  // Products of (x - r) with distinct integer r and positive-definite quadratics.
  std::mt19937 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    std::set<int> roots;
    std::uniform_int_distribution<int> r(-6, 6), k(0, 4), q(1, 3);
    const int n_roots = k(rng);
    while (static_cast<int>(roots.size()) < n_roots) roots.insert(r(rng));
    ExactPoly p = ExactPoly::constant(1);
    for (int root : roots) p *= ExactPoly{-root, 1};
    const int n_quad = k(rng) % 3;
    for (int i = 0; i < n_quad; ++i) p *= ExactPoly{q(rng), r(rng) % 2, 1};  // b^2 < 4c
    EXPECT_EQ(count_real_roots(p), roots.size());
    EXPECT_EQ(oracle::grid_sign_changes(p, 4000), roots.size());
  }
}

TEST(Format, DescendingPowersWithExplicitSigns) {
  EXPECT_EQ(to_string(ExactPoly{12, 0, 0, 0, 16}), "16x^4 + 12");
  EXPECT_EQ(to_string(ExactPoly{0, -12, 0, 8}), "8x^3 - 12x");
  EXPECT_EQ(to_string(ExactPoly{1, -1}), "-x + 1");
  EXPECT_EQ(to_string(ExactPoly{Rational(1, 2), 0, Rational(-3, 2)}), "-(3/2)x^2 + 1/2");
  EXPECT_EQ(to_string(ExactPoly{}), "0");
}

TEST(Format, ExactStringRoundTrip) {
  EXPECT_EQ(to_exact_string(Rational(-3, 4)), "-3/4");
  EXPECT_EQ(to_exact_string(Rational(12)), "12/1");
  EXPECT_EQ(parse_exact_string("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_exact_string("-7"), Rational(-7));
  EXPECT_THROW(parse_exact_string("x"), ArgumentError);
  EXPECT_THROW(parse_exact_string("1/0"), ArgumentError);
}

}  // namespace
}  // namespace xhermite
