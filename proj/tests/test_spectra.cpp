#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "arith_lab/spectra.hpp"

using namespace arith_lab;

namespace {

WeightSeries character(std::int64_t lo, std::int64_t hi, std::int64_t num, std::int64_t den, cplx amp = 1.0) {
  std::vector<cplx> v(static_cast<std::size_t>(hi - lo));
  for (std::int64_t n = lo; n < hi; ++n) {
    std::int64_t r = (n % den) * num % den;
    if (r < 0) r += den;
    v[static_cast<std::size_t>(n - lo)] = amp * expi_frac(r, den);
  }
  return {"chi", lo, std::move(v)};
}

WeightSeries random_bounded(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<cplx> v(static_cast<std::size_t>(hi - lo));
  for (auto& z : v) z = std::polar(u(rng), 2 * std::numbers::pi * u(rng));
  return {"g", lo, std::move(v)};
}

// O(M^2) DFT with libm phases.
std::vector<cplx> naive_local_fourier(const WeightSeries& g, const Interval& I) {
  const auto M = I.length();
  std::vector<cplx> F(static_cast<std::size_t>(M));
  for (std::int64_t xi = 0; xi < M; ++xi)
    for (std::int64_t n = I.lo; n < I.hi; ++n)
      F[xi] += g[n] * std::polar(1.0, -2 * std::numbers::pi * static_cast<double>(((n * xi) % M + M) % M) / M);
  return F;
}

}  // namespace

TEST(Grid, ValidationRules) {
  EXPECT_NO_THROW(grid_intervals({4, 2, 0, 0, {0, 256}}));
  EXPECT_NO_THROW(grid_intervals({4, 2, 2, 0, {0, 256}}));
  EXPECT_THROW(grid_intervals({4, 2, 1, 0, {0, 256}}), std::invalid_argument);
  EXPECT_THROW(grid_intervals({8, 4, 0, 0, {0, 256}}), std::invalid_argument);
  EXPECT_THROW(grid_intervals({10, 3, 0, 0, {0, 256}}), std::invalid_argument);
  EXPECT_THROW(grid_intervals({9, 3, 4, 0, {0, 256}}), std::invalid_argument);
  EXPECT_THROW(grid_intervals({9, 3, 0, 2, {0, 256}}), std::invalid_argument);
}

TEST(Grid, DeltaTwoIntervals) {
  const auto iv = grid_intervals({4, 2, 0, 0, {0, 64}});
  for (const auto& g : iv) {
    const std::int64_t len = std::int64_t{4} << g.k;
    EXPECT_EQ(g.interval.length(), len);
    EXPECT_EQ(g.interval.lo % len, 0);
  }
  EXPECT_EQ(grid_nesting_violations(iv), 0u);
  // odd shifts break nesting for Delta = 2, which is why they are rejected
  const std::vector<GridInterval> bad{{{2, 6}, {2, 4}, 0}, {{4, 12}, {4, 8}, 1}};
  EXPECT_EQ(grid_nesting_violations(bad), 1u);
}

TEST(Grid, NestedOrDisjointAndCoreFraction) {
  for (std::int64_t Delta : {2, 3, 5, 7}) {
    for (std::int64_t L = 0; L <= Delta; L += Delta == 2 ? 2 : 1) {
      for (std::int64_t U = 0; U < std::max<std::int64_t>(1, Delta - 1); ++U) {
        const ShiftedGrid g{Delta * 2, Delta, L, U, {-3000, 5000}};
        const auto iv = grid_intervals(g);
        ASSERT_FALSE(iv.empty());
        EXPECT_EQ(grid_nesting_violations(iv), 0u) << Delta << ' ' << L << ' ' << U;
        for (const auto& gi : iv) {
          EXPECT_EQ(gi.core.length() * Delta, gi.interval.length());
          EXPECT_EQ(gi.core.lo, gi.interval.lo);
          EXPECT_EQ(gi.k % std::max<std::int64_t>(1, Delta - 1), U);
        }
      }
    }
  }
}

TEST(Grid, CoreTranslatesStayClose) {
  const auto iv = grid_intervals({15, 5, 2, 1, {0, 20000}});
  for (const auto& gi : iv) {
    const auto len = gi.interval.length();
    for (std::int64_t x = gi.core.lo; x < gi.core.hi; ++x) {
      const std::int64_t overlap = gi.interval.hi - x;
      const double symdiff = 2.0 * static_cast<double>(len - overlap);
      EXPECT_LE(symdiff / static_cast<double>(len), 2.0 / 5.0);
    }
  }
}

TEST(LocalFourier, ConstantsCharactersParseval) {
  const Interval I{-17, 47};
  const auto one = character(-100, 100, 0, 1);
  const auto F1 = local_fourier(one, I);
  EXPECT_NEAR(std::abs(F1[0] - 64.0), 0.0, 1e-12);
  for (std::size_t k = 1; k < F1.size(); ++k) EXPECT_LT(std::abs(F1[k]), 1e-10);
  const auto chi = character(-100, 100, 5, 64);
  const auto F2 = local_fourier(chi, I);
  for (std::size_t k = 0; k < F2.size(); ++k) EXPECT_NEAR(std::abs(F2[k]), k == 5 ? 64.0 : 0.0, 1e-10);
  std::mt19937_64 rng(61);
  const auto g = random_bounded(rng, -100, 100);
  const auto F = local_fourier(g, I);
  double lhs = 0, rhs = 0;
  for (const auto& v : F) lhs += std::norm(v);
  for (std::int64_t n = I.lo; n < I.hi; ++n) rhs += std::norm(g[n]);
  EXPECT_NEAR(lhs, 64 * rhs, 1e-9 * lhs);
}

TEST(LocalFourier, MatchesNaiveDftAndInverts) {
  std::mt19937_64 rng(62);
  const auto g = random_bounded(rng, -300, 300);
  for (Interval I : {Interval{-300, -200}, Interval{-37, 60}, Interval{1, 257}}) {
    const auto F = local_fourier(g, I);
    const auto G = naive_local_fourier(g, I);
    for (std::size_t k = 0; k < F.size(); ++k) EXPECT_LT(std::abs(F[k] - G[k]), 1e-9);
    const auto back = local_fourier_inverse(F, I);
    for (std::int64_t n = I.lo; n < I.hi; ++n) EXPECT_LT(std::abs(back[n] - g[n]), 1e-12);
  }
}

TEST(Spectrum, CharacterLevels) {
  const Interval I{0, 128};
  const auto chi = character(0, 128, 9, 128);
  EXPECT_EQ(spec_delta(chi, I, 1.0).freqs, std::vector<std::int64_t>{9});
  const auto weak = character(0, 128, 9, 128, 0.6);
  EXPECT_EQ(spec_delta(weak, I, 1.0).freqs, std::vector<std::int64_t>{9});
  EXPECT_TRUE(spec_delta(weak, I, 0.5).freqs.empty());
  EXPECT_THROW(spec_delta(chi, I, 1.5), std::invalid_argument);
}

TEST(Spectrum, RandomSignsAgainstDirectScan) {
  std::mt19937_64 rng(63);
  int empty = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> v(256);
    for (auto& z : v) z = rng() & 1 ? 1.0 : -1.0;
    const WeightSeries g("pm", 0, v);
    const Interval I{0, 256};
    const auto s = spec_delta(g, I, 0.5);
    const auto F = naive_local_fourier(g, I);
    std::vector<std::int64_t> want;
    for (std::int64_t k = 0; k < 256; ++k) {
      const double a = std::abs(F[k]) / 256;
      if (a > 0.25 && a <= 0.5) want.push_back(k);
    }
    EXPECT_EQ(s.freqs, want);
    empty += s.freqs.empty();
  }
  EXPECT_GE(empty, 18);
}

TEST(Spectrum, DyadicLayersPartitionCoefficients) {
  std::mt19937_64 rng(64);
  const auto g = random_bounded(rng, 0, 512);
  const Interval I{0, 512};
  const auto F = local_fourier(g, I);
  const ThresholdLadder ladder(1.0, 1.0 / 64);
  std::vector<int> hits(512, 0);
  for (double d : ladder.levels())
    for (auto xi : spectrum_from(F, I, d).freqs) ++hits[xi];
  const double dmin = ladder.levels().back();
  for (std::int64_t k = 0; k < 512; ++k) {
    const double a = std::abs(F[k]) / 512;
    EXPECT_LE(hits[k], 1);
    if (a > dmin / 2 * (1 + 1e-12) && a <= 1.0) {
      EXPECT_EQ(hits[k], 1) << k;
    }
  }
}

TEST(Ladder, PartitionOfUnityAndLipschitz) {
  const ThresholdLadder ladder(1.0, 1e-3);
  double worst = 0;
  for (int j = 0; j < 10000; ++j) {
    const double t = 1e-3 + (1.0 - 1e-3) * (j + 1) / 10000.0;
    worst = std::max(worst, std::abs(ladder.partition(t) - 1));
  }
  EXPECT_LE(worst, 1e-6);
  EXPECT_LE(ThresholdLadder::measured_lipschitz(), 4.0);
  EXPECT_EQ(ThresholdLadder::psi(0.5), 0.0);
  EXPECT_EQ(ThresholdLadder::psi(2.0), 0.0);
  EXPECT_EQ(ThresholdLadder::psi(1.0), 1.0);
}

TEST(Ladder, DirectLipschitzSampling) {
  std::mt19937_64 rng(65);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst = 0;
  for (int k = 0; k < 200000; ++k) {
    const cplx a(u(rng), u(rng)), b = a + cplx(u(rng), u(rng)) * 1e-3;
    const double d = std::abs(a - b);
    if (d == 0) continue;
    worst = std::max(worst, std::abs(ThresholdLadder::Psi(a, 0.7) - ThresholdLadder::Psi(b, 0.7)) / d);
  }
  EXPECT_LE(worst, 4.0);
}

TEST(Projection, FullLadderReproducesTheCharacter) {
  const Interval I{0, 300};
  const auto g = character(0, 300, 7, 30, 0.7);
  const ThresholdLadder ladder(1.0, 1e-3);
  const auto p = projection(g, I, {Rational01(7, 30)}, ladder);
  for (std::int64_t n = 0; n < 300; ++n) EXPECT_LT(std::abs(p[n] - g[n]), 1e-12);
}

TEST(Projection, OffSpectrumLeakageAndZero) {
  const Interval I{0, 1024};
  const auto g = character(0, 1024, 1, 3);
  const ThresholdLadder ladder(1.0, 1e-4);
  const auto p = projection(g, I, {Rational01(0, 1), Rational01(1, 7)}, ladder);
  for (const auto& v : p.values()) EXPECT_LE(std::abs(v), 1e-2);
  const WeightSeries zero("0", 0, std::vector<cplx>(1024));
  for (const auto& v : projection(zero, I, {Rational01(1, 3)}, ladder).values()) EXPECT_EQ(v, cplx(0, 0));
  EXPECT_THROW(projection(g, I, {Rational01(1, 3), Rational01(2, 6)}, ladder), std::invalid_argument);
}

TEST(Sampling, ConstantSignal) {
  const std::int64_t N = 256;
  const auto g = character(-4 * N, 4 * N + 1, 0, 1);
  const auto r = sampling_check(g, N, 0.5);
  EXPECT_EQ(r.count, 1u);
  EXPECT_DOUBLE_EQ(r.bound_ratio, 0.25);
  EXPECT_EQ(r.freqs.front(), 0.0);
}

TEST(Sampling, ThreeSeparatedCharacters) {
  const std::int64_t N = 1024;
  const auto a = character(-4 * N, 4 * N + 1, 1, 8, 1.0 / 3), b = character(-4 * N, 4 * N + 1, 3, 8, 1.0 / 3),
             c = character(-4 * N, 4 * N + 1, 5, 8, 1.0 / 3);
  std::vector<cplx> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.values()[k] + b.values()[k] + c.values()[k];
  EXPECT_EQ(sampling_check(WeightSeries("s", a.start(), v), N, 0.2).count, 3u);
}

TEST(Sampling, RandomBoundedSignals) {
  std::mt19937_64 rng(66);
  const std::int64_t N = 1024;
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_bounded(rng, -4 * N, 4 * N + 1);
    for (double d : {0.1, 0.2}) worst = std::max(worst, sampling_check(g, N, d).bound_ratio);
  }
  EXPECT_LE(worst, 10.0);
  EXPECT_THROW(sampling_check(character(0, 10, 0, 1, 2.0), 8, 0.5), std::invalid_argument);
}

TEST(WavePacket, Orthonormal) {
  const Interval I{-40, 24};
  for (std::int64_t xi = 0; xi < 64; xi += 5)
    for (std::int64_t zeta = 0; zeta < 64; zeta += 3) {
      const auto ip = inner_product(wave_packet(I, xi), wave_packet(I, zeta));
      EXPECT_LT(std::abs(ip - cplx(xi == zeta ? 1.0 : 0.0, 0.0)), 1e-12);
    }
}

TEST(WavePacket, DiagonalTermAndEmptySupport) {
  const std::int64_t M0 = 64, M = 1024;
  const int R = 4;
  const std::vector<std::int64_t> lambda{0, 5, 17};
  const auto freqs = annulus_frequencies(lambda, M0, M, R);
  ASSERT_FALSE(freqs.empty());
  for (std::int64_t l : lambda) EXPECT_FALSE(std::binary_search(freqs.begin(), freqs.end(), l * (M / M0)));
  const Interval I0{0, M};
  const auto eta = wave_packet(I0, freqs[3]);
  std::vector<cplx> v(2 * M);
  std::copy(eta.values().begin(), eta.values().end(), v.begin());
  const WeightSeries g("eta", 0, v);
  EXPECT_GE(wavepacket_energy(g, lambda, M0, R, {M}).total, 1.0 - 1e-12);
  // a series shorter than every scale meets no interval
  const WeightSeries tiny("tiny", 0, std::vector<cplx>(M - 1, 1.0));
  EXPECT_EQ(wavepacket_energy(tiny, lambda, M0, R, {M}).total, 0.0);
  EXPECT_THROW(wavepacket_energy(g, lambda, M0, R, {512}), std::invalid_argument);
  EXPECT_THROW(wavepacket_energy(g, lambda, M0, R, {1024, 2048}), std::invalid_argument);
}

TEST(WavePacket, BesselRatioOnRandomSignals) {
  std::mt19937_64 rng(67);
  const std::int64_t M0 = 64;
  std::vector<std::int64_t> lambda;
  for (int k = 0; k < 6; ++k) lambda.push_back(static_cast<std::int64_t>(rng() % M0));
  double worst = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = random_bounded(rng, 0, 1 << 15);
    worst = std::max(worst, wavepacket_energy(g, lambda, M0, 4, {1 << 10, 1 << 14}, 2).ratio);
  }
  EXPECT_LE(worst, 5.0);
}
