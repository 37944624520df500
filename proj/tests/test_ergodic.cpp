#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "arith_lab/ergodic.hpp"

using namespace arith_lab;

namespace {

const double kAlpha = std::numbers::sqrt2 - 1;

WeightSeries ones(std::int64_t lo, std::int64_t hi, cplx c = 1.0) {
  return {"one", lo, std::vector<cplx>(static_cast<std::size_t>(hi - lo), c)};
}

WeightSeries random_series(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cplx> v(static_cast<std::size_t>(hi - lo));
  for (auto& z : v) z = cplx(u(rng), u(rng));
  return {"r", lo, std::move(v)};
}

}  // namespace

TEST(Torus, InverseIsBitExact) {
  std::mt19937_64 rng(71);
  for (auto T : {DynamicalSystem::rotation(kAlpha), DynamicalSystem::skew(kAlpha)}) {
    for (int k = 0; k < 1000; ++k) {
      const auto p = random_point(rng());
      EXPECT_EQ(T.inverse_step(T.step(p)), p);
      EXPECT_EQ(T.step(T.inverse_step(p)), p);
    }
  }
}

TEST(Torus, PowerMatchesIteratedSteps) {
  std::mt19937_64 rng(72);
  for (auto T : {DynamicalSystem::rotation(0.3), DynamicalSystem::skew(kAlpha)}) {
    const auto p = random_point(rng());
    TorusPoint fwd = p, back = p;
    for (std::int64_t m = 0; m <= 300; ++m) {
      EXPECT_EQ(T.power(p, m), fwd);
      EXPECT_EQ(T.power(p, -m), back);
      fwd = T.step(fwd);
      back = T.inverse_step(back);
    }
  }
}

TEST(Torus, RationalityWarning) {
  EXPECT_EQ(rational_denominator(0.5), std::optional<std::int64_t>(2));
  EXPECT_EQ(rational_denominator(3.0 / 7.0), std::optional<std::int64_t>(7));
  EXPECT_FALSE(rational_denominator(kAlpha).has_value());
  EXPECT_FALSE(rational_denominator((std::sqrt(5.0) - 1) / 2).has_value());
}

TEST(Torus, WeylSumsEquidistribute) {
  const auto T = DynamicalSystem::skew(kAlpha);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto x0 = random_point(seed);
    for (auto [k1, k2] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{2, -1}, std::pair{3, 2}})
      EXPECT_LE(std::abs(weyl_sum(T, x0, k1, k2, 1000000)), 0.05) << seed << ' ' << k1 << ' ' << k2;
  }
}

TEST(Bilinear, ConstantsGiveOne) {
  const auto T = DynamicalSystem::skew(kAlpha);
  const auto c = Observable::constant();
  EXPECT_EQ(bilinear_average(ones(1, 1001), T, c, c, random_point(3), 1000), cplx(1, 0));
}

TEST(Bilinear, RotationPhasesCancel) {
  const auto T = DynamicalSystem::rotation(kAlpha);
  const auto f = Observable::character(1);
  const auto x0 = random_point(4);
  const cplx want = expi(2 * from_fixed(x0.x));
  EXPECT_LT(std::abs(bilinear_average(ones(1, 5001), T, f, f, x0, 5000, 1, -1) - want), 1e-9);
  std::mt19937_64 rng(5);
  const auto w = random_series(rng, 1, 2001);
  cplx mean{};
  for (const auto& v : w.values()) mean += v;
  mean /= 2000.0;
  EXPECT_LT(std::abs(bilinear_average(w, T, f, f, x0, 2000, 1, -1) - want * mean), 1e-9);
}

TEST(Bilinear, SkewFiberCharacterAverageIsSmall) {
  const auto T = DynamicalSystem::skew(kAlpha);
  const auto v = bilinear_average(ones(1, 1000001), T, Observable::character(1, 0), Observable::character(0, 1),
                                  random_point(6), 1000000);
  EXPECT_LE(std::abs(v), 0.02);
}

TEST(IntegerModel, MangoldtMeanAndZeroWeight) {
  const std::int64_t N = 1000000;
  const auto lam = von_mangoldt_series(FactorSieve(N), N);
  const auto F = ones(-N, 1), G = ones(1, N + 1);
  EXPECT_NEAR(integer_model_average(F, G, lam, 0, N).real(), 1.0, 0.01);
  EXPECT_EQ(integer_model_average(F, G, ones(1, N + 1, 0.0), 0, N), cplx(0, 0));
  EXPECT_THROW(integer_model_average(F, G, lam, 1, N), std::invalid_argument);
}

TEST(IntegerModel, ModulationCovarianceIsExactForQuarterTurns) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t N = 500, x = std::uniform_int_distribution<std::int64_t>(-50, 50)(rng);
    const auto F = random_series(rng, x - N, x), G = random_series(rng, x + 1, x + N + 1);
    // restrict to Gaussian-integer values so every product is exact
    auto round = [](WeightSeries s) {
      for (std::int64_t n = s.start(); n < s.end(); ++n) s[n] = cplx(std::round(8 * s[n].real()), std::round(8 * s[n].imag()));
      return s;
    };
    const auto Fi = round(F), Gi = round(G), w = round(random_series(rng, 1, N + 1));
    const cplx base = integer_model_average(Fi, Gi, w, x, N);
    const cplx mod = integer_model_average(modulate(Fi, 1, 4), modulate(Gi, 1, 4), w, x, N);
    std::int64_t r = (2 * x) % 4;
    if (r < 0) r += 4;
    EXPECT_EQ(mod, base * expi_frac(r, 4));
  }
}

TEST(IntegerModel, ModulationCovarianceForGeneralRationals) {
  std::mt19937_64 rng(74);
  const std::int64_t den = 1000003;
  for (int trial = 0; trial < 10; ++trial) {
    const std::int64_t N = 400, x = 17;
    const auto F = random_series(rng, x - N, x), G = random_series(rng, x + 1, x + N + 1), w = random_series(rng, 1, N + 1);
    const std::int64_t num = std::uniform_int_distribution<std::int64_t>(1, den - 1)(rng);
    const cplx base = integer_model_average(F, G, w, x, N);
    const cplx mod = integer_model_average(modulate(F, num, den), modulate(G, num, den), w, x, N);
    const cplx want = base * expi_frac(static_cast<std::int64_t>(static_cast<__int128>(2 * x) * num % den), den);
    EXPECT_LE(std::abs(mod - want), 1e-12 * std::max(1.0, std::abs(base)));
  }
}

TEST(Trace, ConstantInputsGiveFlatTrace) {
  const auto T = DynamicalSystem::skew(kAlpha);
  const auto grid = lacunary_grid(4096);
  const auto tr = average_trace(ones(1, 4097, 2.0), T, Observable::constant(), Observable::constant(), random_point(8), grid);
  for (std::size_t j = 0; j < tr.trace.size(); ++j) EXPECT_EQ(tr.trace.value(j), cplx(2.0, 0.0));
  EXPECT_EQ(variation(tr.trace, 2), 0.0);
}

TEST(Trace, RotationWithMangoldtTendsToDoubledPhase) {
  const std::int64_t N = 1 << 20;
  const auto lam = von_mangoldt_series(FactorSieve(N), N);
  const auto T = DynamicalSystem::rotation(kAlpha);
  const auto x0 = random_point(9);
  const auto f = Observable::character(1);
  const auto tr = average_trace(lam, T, f, f, x0, lacunary_grid(N), 1, -1).trace;
  EXPECT_LT(std::abs(tr.value(tr.size() - 1) - expi(2 * from_fixed(x0.x))), 0.01);
  EXPECT_TRUE(std::isfinite(variation(tr, 2)));
}

TEST(Trace, SkewTailSupremaShrink) {
  const std::int64_t N = 1 << 20;
  const auto lam = von_mangoldt_series(FactorSieve(N), N);
  const auto T = DynamicalSystem::skew(kAlpha);
  const auto tr = average_trace(lam, T, Observable::character(1, 0), Observable::character(0, 1), random_point(10),
                                lacunary_grid(N))
                      .trace;
  std::vector<double> sups;
  for (std::int64_t start : {1 << 16, 1 << 17, 1 << 18, 1 << 19}) {
    double s = 0;
    for (std::size_t j = 0; j < tr.size(); ++j)
      if (tr.times()[j] >= start) s = std::max(s, std::abs(tr.value(j)));
    sups.push_back(s);
  }
  for (std::size_t k = 1; k < sups.size(); ++k) EXPECT_LE(sups[k], sups[k - 1]);
  EXPECT_LT(sups.back(), 0.05);
}

TEST(Trace, PrefixSumsMatchDirectAverages) {
  std::mt19937_64 rng(75);
  for (int trial = 0; trial < 20; ++trial) {
    const auto T = trial % 2 ? DynamicalSystem::skew(kAlpha) : DynamicalSystem::rotation(0.1234567);
    const auto w = random_series(rng, 1, 3001);
    const Observable f({{1, 0, 0.5}, {2, 1, cplx(0, 0.3)}}), g({{0, 1, 1.0}, {-1, 3, 0.25}});
    const auto x0 = random_point(rng());
    const std::int64_t a = 1 + trial % 3, b = -2 + trial % 5;
    const auto grid = dyadic_grid(3, 3000);
    const auto tr = average_trace(w, T, f, g, x0, grid, a, b).trace;
    for (std::size_t j = 0; j < grid.size(); ++j)
      EXPECT_LT(std::abs(tr.value(j) - bilinear_average(w, T, f, g, x0, grid[j], a, b)), 1e-10);
  }
}

TEST(Trace, Grids) {
  const auto lg = lacunary_grid(100);
  EXPECT_EQ(lg.front(), 1);
  EXPECT_TRUE(std::is_sorted(lg.begin(), lg.end()));
  EXPECT_EQ(std::adjacent_find(lg.begin(), lg.end()), lg.end());
  EXPECT_EQ(dyadic_grid(3, 50), (std::vector<std::int64_t>{3, 6, 12, 24, 48}));
}

TEST(PrimeMangoldt, Comparisons) {
  const std::int64_t M = 1000000;
  const FactorSieve sv(M);
  const auto one = prime_vs_mangoldt([](std::int64_t) { return cplx(1, 0); }, sv, M);
  EXPECT_EQ(one.lhs, cplx(1, 0));
  EXPECT_LE(one.gap, 0.01);
  const auto alt = prime_vs_mangoldt([](std::int64_t n) { return cplx(n % 2 ? -1.0 : 1.0, 0); }, sv, M);
  EXPECT_LE(alt.gap, 0.02);
  const double g = (std::sqrt(5.0) - 1) / 2;
  const auto gold = prime_vs_mangoldt([g](std::int64_t n) { return expi(std::fmod(g * static_cast<double>(n), 1.0)); }, sv, M);
  EXPECT_LE(gold.gap, 0.02);
}
