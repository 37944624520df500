#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "arith_lab/arcs.hpp"

using namespace arith_lab;

namespace {

// Exhaustive pairing oracle on a common denominator, integers only.
std::int64_t brute_max_multiplicity(const std::vector<Rational01>& lambda, const std::vector<ReducedFraction>& slice,
                                    std::int64_t m, std::int64_t n) {
  std::int64_t L = 1;
  for (const auto& t : lambda) L = L / arith::gcd(L, t.den()) * t.den();
  for (const auto& f : slice) L = L / arith::gcd(L, f.q) * f.q;
  std::map<std::int64_t, std::int64_t> hits;
  for (const auto& t : lambda)
    for (const auto& f : slice) {
      std::int64_t v = (m * t.num() * (L / t.den()) + n * f.a * (L / f.q)) % L;
      if (v < 0) v += L;
      ++hits[v];
    }
  std::int64_t best = 0;
  for (const auto& [k, c] : hits) best = std::max(best, c);
  return best;
}

}  // namespace

TEST(FareySlice, QFour) {
  const auto s = farey_slice(4);
  std::set<std::int64_t> qs;
  for (const auto& f : s.fractions) qs.insert(f.q);
  EXPECT_EQ(qs, (std::set<std::int64_t>{3, 4}));
  EXPECT_EQ(s.fractions.size(), 4u);
  EXPECT_EQ(s.lcm, 12);
}

TEST(FareySlice, QTwo) {
  const auto s = farey_slice(2);
  ASSERT_EQ(s.fractions.size(), 1u);
  EXPECT_EQ(s.fractions[0], ReducedFraction(1, 2));
  EXPECT_EQ(s.lcm, 2);
}

TEST(FareySlice, DyadicPieceQFourIndexTwo) {
  const auto s = farey_dyadic_slice(4, 2);
  EXPECT_EQ(s.fractions, (std::vector<ReducedFraction>{{1, 4}, {3, 4}}));
  EXPECT_EQ(s.lcm, 4);
}

TEST(FareySlice, DyadicPiecesPartitionTheSlice) {
  for (std::int64_t Q = 1; Q <= 64; ++Q) {
    const auto full = farey_slice(Q).fractions;
    std::vector<ReducedFraction> merged;
    for (int i = 0; i <= floor_log2(static_cast<std::uint64_t>(Q)); ++i) {
      const auto piece = farey_dyadic_slice(Q, i).fractions;
      merged.insert(merged.end(), piece.begin(), piece.end());
    }
    std::sort(merged.begin(), merged.end());
    auto sorted = full;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(merged, sorted) << Q;
    EXPECT_EQ(std::set<ReducedFraction>(merged.begin(), merged.end()).size(), merged.size());
  }
}

TEST(FareySlice, SizeIsTotientSum) {
  for (std::int64_t Q = 1; Q <= 64; ++Q) {
    std::int64_t want = 0;
    for (std::int64_t q = Q / 2 + 1; q <= Q; ++q) want += arith::totient(q);
    EXPECT_EQ(static_cast<std::int64_t>(farey_slice(Q).fractions.size()), want);
  }
}

TEST(FareySlice, LcmCapFailsLoudly) {
  EXPECT_NO_THROW(farey_slice(64));
  EXPECT_THROW(farey_slice(4000, 10), CapacityError);
  EXPECT_THROW(farey_dyadic_slice(4, 3), std::invalid_argument);
}

TEST(Ramanujan, Examples) {
  EXPECT_EQ(ramanujan_sum(6, 0), 2);
  EXPECT_EQ(ramanujan_sum(2, 1), -1);
  EXPECT_EQ(ramanujan_sum(6, 4), -1);
  const auto d = ramanujan_sum_direct(6, 4);
  EXPECT_NEAR(d.real(), -1.0, 1e-12);
  EXPECT_NEAR(d.imag(), 0.0, 1e-12);
}

TEST(Ramanujan, ClosedFormMatchesUnitSum) {
  for (std::int64_t q = 1; q <= 200; ++q)
    for (std::int64_t n = 0; n < q; ++n) {
      const auto d = ramanujan_sum_direct(q, n);
      EXPECT_NEAR(d.real(), static_cast<double>(ramanujan_sum(q, n)), 1e-9) << q << ' ' << n;
      EXPECT_NEAR(d.imag(), 0.0, 1e-9);
    }
}

TEST(Gauss, Examples) {
  const auto g13 = gauss_sum_squared(1, 3);
  EXPECT_DOUBLE_EQ(g13.real(), -1.0 / 3.0);
  EXPECT_EQ(g13.imag(), 0.0);
  EXPECT_EQ(gauss_sum_squared(1, 2), cplx(0.0, 0.0));
  const auto g14 = gauss_sum_squared(1, 4);
  EXPECT_EQ(g14.real(), 0.0);
  EXPECT_DOUBLE_EQ(g14.imag(), -0.5);
  EXPECT_THROW(gauss_sum_squared(2, 4), std::invalid_argument);
}

TEST(Gauss, ClosedFormMatchesSquaredDirectSum) {
  for (std::int64_t q = 1; q <= 200; ++q)
    for (std::int64_t a = 0; a < q; ++a) {
      if (arith::gcd(a, q) != 1) continue;
      const auto g = gauss_sum_direct(a, q);
      const auto c = gauss_sum_squared(a, q);
      EXPECT_NEAR(std::abs(g * g - c), 0.0, 1e-9) << a << '/' << q;
    }
}

TEST(Rational01, ReductionAndCombination) {
  const Rational01 x(3, 4), y(5, 6);
  const auto z = Rational01::combine(2, x, -1, y);  // 3/2 - 5/6 = 2/3
  EXPECT_EQ(z, Rational01(2, 3));
  EXPECT_EQ(Rational01(-1, 4), Rational01(3, 4));
  EXPECT_EQ(Rational01(8, 8), Rational01(0, 1));
  EXPECT_THROW(Rational01::combine(1, Rational01(1, INT64_MAX), 1, Rational01(1, INT64_MAX - 1)), CapacityError);
}

TEST(Multiplicity, InjectiveShift) {
  const auto sl = farey_slice(12).fractions;
  const auto r = multiplicity_count({Rational01(0, 1)}, sl, 1, 1);
  EXPECT_EQ(r.max, 1);
}

TEST(Multiplicity, EighthsAgainstExhaustivePairing) {
  std::vector<Rational01> lam;
  for (int k = 0; k < 8; ++k) lam.emplace_back(k, 8);
  const auto sl = farey_dyadic_slice(4, 2).fractions;
  const auto r = multiplicity_count(lam, sl, 1, 1);
  EXPECT_EQ(r.max, brute_max_multiplicity(lam, sl, 1, 1));
  EXPECT_EQ(r.max, 2);
}

TEST(Multiplicity, ZeroSecondCoefficientCountsThetaCollisions) {
  std::vector<Rational01> lam{{0, 1}, {1, 2}, {1, 4}, {3, 4}, {1, 3}};
  const auto sl = farey_slice(6).fractions;
  for (std::int64_t m : {1, 2, 4}) {
    std::map<Rational01, std::int64_t> coll;
    for (const auto& t : lam) ++coll[Rational01::combine(m, t, 0, t)];
    std::int64_t c = 0;
    for (const auto& [k, v] : coll) c = std::max(c, v);
    const auto r = multiplicity_count(lam, sl, m, 0);
    EXPECT_EQ(r.max, static_cast<std::int64_t>(sl.size()) * c) << m;
    EXPECT_EQ(r.max, brute_max_multiplicity(lam, sl, m, 0));
  }
}

TEST(Multiplicity, RandomConfigurationsMatchOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t Q = std::uniform_int_distribution<std::int64_t>(2, 24)(rng);
    const int i = std::uniform_int_distribution<int>(0, floor_log2(static_cast<std::uint64_t>(Q)))(rng);
    const auto sl = farey_dyadic_slice(Q, i).fractions;
    if (sl.empty()) continue;
    const std::int64_t den = std::uniform_int_distribution<std::int64_t>(1, 48)(rng);
    std::set<Rational01> lamset;
    const int size = std::uniform_int_distribution<int>(1, 12)(rng);
    for (int k = 0; k < size; ++k) lamset.insert(Rational01(std::uniform_int_distribution<std::int64_t>(0, den - 1)(rng), den));
    const std::vector<Rational01> lam(lamset.begin(), lamset.end());
    const std::int64_t m = std::uniform_int_distribution<std::int64_t>(-10, 10)(rng);
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(-10, 10)(rng);
    const auto r = multiplicity_count(lam, sl, m, n);
    EXPECT_EQ(r.max, brute_max_multiplicity(lam, sl, m, n));
    std::int64_t total = 0;
    for (const auto& [k, v] : r.counts) total += v;
    EXPECT_EQ(total, static_cast<std::int64_t>(lam.size() * sl.size()));
    if (n == 1 || n == -1) {
      EXPECT_LE(r.max, static_cast<std::int64_t>(lam.size()));
    }
  }
}

TEST(Multiplicity, RejectsLargeCoefficients) {
  EXPECT_THROW(multiplicity_count({Rational01(0, 1)}, farey_slice(4).fractions, 11, 1), std::invalid_argument);
}
