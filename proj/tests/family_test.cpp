#include <gtest/gtest.h>

#include <thread>

#include "oracles.hpp"
#include "xhermite/family.hpp"

namespace xhermite {
namespace {

std::vector<Partition> partitions_up_to(int max_n, bool even_only = false) {
  std::vector<Partition> out;
  for (int n = 0; n <= max_n; ++n)
    for (auto& p : partitions_of(n))
      if (!even_only || is_even(p)) out.push_back(p);
  return out;
}

TEST(Hermite, Examples) {
  EXPECT_EQ(hermite(0), ExactPoly::constant(1));
  EXPECT_EQ(hermite(1), (ExactPoly{0, 2}));
  EXPECT_EQ(hermite(3), (ExactPoly{0, -12, 0, 8}));
  EXPECT_THROW(hermite(-1), ArgumentError);
}

TEST(Hermite, MatchesExplicitSumAndDerivativeRule) {
  for (int n = 0; n <= 30; ++n) {
    const ExactPoly h = hermite(n);
    EXPECT_EQ(h, oracle::hermite_explicit(n)) << n;
    EXPECT_EQ(h.leading(), Rational(pow2(n)));
    if (n > 0) {
      EXPECT_EQ(derivative(h), hermite(n - 1) * Rational(2 * n)) << n;
    }
  }
}

TEST(Constants, CAndPi) {
  EXPECT_EQ(c_constant(Partition{2, 2}, 2), 2);
  EXPECT_EQ(c_constant(Partition{}, 0), 1);
  EXPECT_EQ(c_constant(Partition{1, 1}, 2), 2);
  EXPECT_THROW(c_constant(Partition{2, 2}, 1), ArgumentError);
  EXPECT_EQ(pi_factor(Partition{2, 2}, 2, 2), 6);
  EXPECT_EQ(pi_factor(Partition{2, 2}, 4, 2), 12);
  EXPECT_EQ(pi_factor(Partition{2, 2}, 2, 5), 0);
  EXPECT_EQ(pi_factor(Partition{2, 2}, 4, 3), 12);
}

TEST(Eta, Examples) {
  EXPECT_EQ(eta(Partition{2, 2}), (ExactPoly{12, 0, 0, 0, 16}));
  EXPECT_EQ(eta(Partition{}), ExactPoly::constant(1));
  EXPECT_EQ(eta(Partition{2, 2}, 4), (ExactPoly{12, 0, 0, 0, 16}));
  EXPECT_THROW(eta(Partition{2, 2}, 1), ArgumentError);
  // Independent path: Leibniz determinant of H_2, H_3 halved.
  EXPECT_EQ(eta(Partition{2, 2}), oracle::leibniz_wronskian({hermite(2), hermite(3)}) / Rational(2));
}

TEST(ExceptionalHermite, Examples) {
  EXPECT_EQ(exceptional_hermite(Partition{2, 2}, 2), (ExactPoly{2, 0, 4}));
  EXPECT_EQ(exceptional_hermite(Partition{}, 3), hermite(3));
  EXPECT_EQ(exceptional_hermite(Partition{2, 2}, 2, 4), (ExactPoly{2, 0, 4}));
  try {
    exceptional_hermite(Partition{2, 2}, 5);
    FAIL() << "expected gap-degree error";
  } catch (const GapDegreeError& e) {
    EXPECT_EQ(e.degree(), 5);
  }
  EXPECT_THROW(exceptional_hermite(Partition{2, 2}, 2, 1), ArgumentError);
  // n - N + ell < 0 lies inside K_lambda.
  EXPECT_THROW(exceptional_hermite(Partition{2, 2}, 1), GapDegreeError);
  EXPECT_THROW(exceptional_hermite(Partition{2, 2}, -1), ArgumentError);
}

TEST(NormingConstant, Examples) {
  EXPECT_EQ(norming_constant(Partition{}, 3).q, 48);
  EXPECT_EQ(norming_constant(Partition{2, 2}, 2).q, Rational(1, 24));
  EXPECT_EQ(norming_constant(Partition{2, 2}, 3).q, Rational(1, 4));
  EXPECT_THROW(norming_constant(Partition{2, 1}, 3), AdmissibilityError);
  EXPECT_THROW(norming_constant(Partition{2, 2}, 4), GapDegreeError);
}

TEST(Properties, DegreeAndLeadingLaws) {
  for (const auto& p : partitions_up_to(8)) {
    const ExactPoly e = eta(p);
    ASSERT_EQ(e.deg(), static_cast<std::size_t>(p.size()));
    EXPECT_EQ(e.leading(), Rational(pow2(p.size())));
    const DegreeSets d = degree_sets(p);
    for (int n : d.allowed(p.size() + p.length() + 10)) {
      const ExactPoly h = exceptional_hermite(p, n);
      ASSERT_EQ(h.deg(), static_cast<std::size_t>(n)) << to_string(p) << " n=" << n;
      EXPECT_EQ(h.leading(), Rational(pow2(n)));
    }
  }
}

TEST(Properties, ShiftInvariance) {
  for (const auto& p : partitions_up_to(6)) {
    const ExactPoly e = eta(p);
    const DegreeSets d = degree_sets(p);
    for (int n : d.allowed(p.largest() + p.size() + 2)) {
      const RatFun base(exceptional_hermite(p, n), e);
      for (int l = p.length(); l <= p.size(); ++l) {
        EXPECT_EQ(exceptional_ratio(p, n, l), base) << to_string(p) << " n=" << n << " l=" << l;
        EXPECT_EQ(eta(p, l), e);
      }
    }
  }
}

TEST(Properties, GapsetWronskianRepresentation) {
  for (const auto& p : partitions_up_to(8)) {
    EXPECT_EQ(gapset_wronskian_scalar(p), Rational(c_constant(p, p.size()))) << to_string(p);
  }
}

TEST(Properties, PiFactorPositiveForEvenPartitions) {
  for (const auto& p : partitions_up_to(8, true)) {
    for (int n : degree_sets(p).allowed(p.largest() + p.size() + 8))
      EXPECT_GT(pi_factor(p, p.size(), n), 0) << to_string(p) << " n=" << n;
  }
}

TEST(FamilySpec, CachesAndAgreesWithDirectConstruction) {
  const FamilySpec fam(Partition{3, 3, 1, 1});
  EXPECT_EQ(fam.eta_poly().deg(), 8u);
  EXPECT_EQ(fam.allowed(13), (std::vector<int>{4, 7, 8, 11, 12, 13}));
  std::vector<std::thread> workers;
  std::vector<ExactPoly> results(8);
  for (std::size_t t = 0; t < results.size(); ++t)
    workers.emplace_back([&, t] { results[t] = fam.polynomial(11); });
  for (auto& w : workers) w.join();
  const ExactPoly direct = exceptional_hermite(Partition{3, 3, 1, 1}, 11);
  for (const auto& r : results) EXPECT_EQ(r, direct);
  EXPECT_THROW(fam.polynomial(9), GapDegreeError);
}

}  // namespace
}  // namespace xhermite
