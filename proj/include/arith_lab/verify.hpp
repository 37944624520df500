#pragma once

// Acceptance criteria 1-10. Each check returns a pass flag, a one-line
// detail string and its wall time; tolerances are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "arith_lab/arcs.hpp"
#include "arith_lab/ergodic.hpp"
#include "arith_lab/gowers.hpp"
#include "arith_lab/major_arc.hpp"
#include "arith_lab/oscillation.hpp"
#include "arith_lab/ps_sparse.hpp"
#include "arith_lab/sieve.hpp"
#include "arith_lab/spectra.hpp"

namespace arith_lab::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double time_limit = 0;
};

namespace tol {
inline constexpr double kIdentityRel = 1e-8;
inline constexpr double kGowersRel = 1e-8;
inline constexpr double kModulationRel = 1e-9;
inline constexpr double kVoronoiFactor = 4.0;
inline constexpr double kMangoldtRecovery = 0.02;
inline constexpr double kR2Recovery = 0.01;
inline constexpr double kDivisorRecoveryPerLog = 0.01;
inline constexpr double kHeathBrownQ16 = 0.5;
inline constexpr double kTechSlack = 0.15;
inline constexpr double kTechEpsPrime = 0.05;
inline constexpr double kLepingleFactor = 10.0;
inline constexpr double kPartition = 1e-6;
inline constexpr double kSamplingBound = 10.0;
inline constexpr double kBesselRatio = 5.0;
inline constexpr double kSkewUnit = 0.02;
inline constexpr double kSkewMangoldt = 0.05;
inline constexpr double kPrimeGap = 0.02;
inline constexpr double kRandomThetaModulation = 1e-12;
}  // namespace tol

namespace detail {

inline double rel_err(cplx a, cplx b, double floor = 1e-300) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

inline std::string fmt(double x, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

template <class F>
CriterionResult timed(int id, std::string name, double limit, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r{id, std::move(name), false, "", 0, limit};
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.seconds >= limit) {
    r.pass = false;
    r.detail += "; runtime limit exceeded";
  }
  return r;
}

// max over all subsequences of sum |a_{i_{k+1}} - a_{i_k}|^r, by bitmask
inline double exhaustive_variation_power(const Trace& t, double r) {
  const std::size_t m = t.size();
  double best = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    double s = 0;
    int prev = -1;
    for (std::size_t j = 0; j < m; ++j) {
      if (!(mask >> j & 1u)) continue;
      if (prev >= 0) s += std::pow(t.distance(static_cast<std::size_t>(prev), j), r);
      prev = static_cast<int>(j);
    }
    best = std::max(best, s);
  }
  return best;
}

inline std::int64_t exhaustive_jumps(const Trace& t, double lambda) {
  const std::size_t m = t.size();
  std::int64_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    int prev = -1;
    std::int64_t k = 0;
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) {
      if (!(mask >> j & 1u)) continue;
      if (prev >= 0) {
        if (t.distance(static_cast<std::size_t>(prev), j) >= lambda)
          ++k;
        else
          ok = false;
      }
      prev = static_cast<int>(j);
    }
    if (ok) best = std::max(best, k);
  }
  return best;
}

inline WeightSeries random_complex_series(std::mt19937_64& rng, std::size_t len, std::int64_t start) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(len);
  for (auto& x : v) x = {u(rng), u(rng)};
  return {"random", start, std::move(v)};
}

}  // namespace detail

// 1. exact identities
inline CriterionResult criterion_exact_identities() {
  return detail::timed(1, "exact identities", 30.0, [](CriterionResult& r) {
    double worst_ram = 0, worst_gauss = 0, worst_tau = 0, worst_split = 0, worst_moment = 0, worst_cheb = 0;
    std::int64_t r2_bad = 0;
    for (std::int64_t q = 1; q <= 200; ++q)
      for (std::int64_t n = 0; n < q; ++n)
        worst_ram = std::max(worst_ram, std::abs(static_cast<double>(ramanujan_sum(q, n)) - ramanujan_sum_direct(q, n).real()) /
                                            std::max(1.0, std::abs(static_cast<double>(ramanujan_sum(q, n)))));
    for (std::int64_t q = 1; q <= 200; ++q)
      for (std::int64_t a = 0; a < q; ++a) {
        if (arith::gcd(a, q) != 1) continue;
        const cplx g = gauss_sum_direct(a, q);
        const cplx closed = gauss_sum_squared(a, q);
        const double scale = std::max(std::abs(closed), 1.0 / static_cast<double>(q));
        worst_gauss = std::max(worst_gauss, std::abs(g * g - closed) / scale);
      }
    {
      const TauTypeI t1(10, 1e5);
      for (std::int64_t n = 1; n <= 1000; ++n) {
        const double a = t1(n), b = tau_ramanujan_form(n, 10, 1e5);
        worst_tau = std::max(worst_tau, detail::rel_err(a, b, 1.0));
      }
    }
    {
      const MajorArcWeight w(ArcModel::two_squares(), 12, ArcMode::Cumulative);
      const auto cum = w.series(1, 1001);
      const auto split = r2_arc_split(12, 1, 1001);
      for (std::int64_t n = 1; n <= 1000; ++n)
        worst_split = std::max(worst_split, detail::rel_err(cum[n], split.odd[n] + split.four_mult[n], 1.0));
    }
    for (const auto& model : {ArcModel::mangoldt(), ArcModel::divisor(1e5), ArcModel::two_squares()}) {
      for (std::int64_t Q = 1; Q <= 16; ++Q) {
        const MajorArcWeight w(model, Q, ArcMode::Slice);
        const auto L = static_cast<std::int64_t>(w.period());
        const auto m = moment(w.series(1, L + 1), 1, w.period());
        worst_moment = std::max(worst_moment, detail::rel_err(m.value, coefficient_energy(w), 1e-12));
      }
    }
    {
      const auto sieve = build_sieve(10000);
      const auto lam = von_mangoldt_series(sieve, 10000);
      std::vector<double> cheb(10001, 0.0);
      for (std::int64_t d = 1; d <= 10000; ++d)
        for (std::int64_t m = d; m <= 10000; m += d) cheb[static_cast<std::size_t>(m)] += lam[d].real();
      for (std::int64_t n = 2; n <= 10000; ++n)
        worst_cheb = std::max(worst_cheb, detail::rel_err(cheb[static_cast<std::size_t>(n)], std::log(static_cast<double>(n)), 1.0));
      const auto r2 = two_squares_counts(10000);
      for (std::int64_t n = 1; n <= 10000; ++n) {
        std::int64_t d1 = 0, d3 = 0;
        for (std::int64_t d = 1; d <= n; d += 2) {
          if (n % d) continue;
          (d % 4 == 1 ? d1 : d3) += 1;
        }
        if (r2[static_cast<std::size_t>(n)] != 4 * (d1 - d3)) ++r2_bad;
      }
    }
    const double worst = std::max({worst_ram, worst_gauss, worst_tau, worst_split, worst_moment, worst_cheb});
    r.pass = worst <= tol::kIdentityRel && r2_bad == 0;
    r.detail = "ramanujan=" + detail::fmt(worst_ram) + " gauss=" + detail::fmt(worst_gauss) + " type1=" +
               detail::fmt(worst_tau) + " r2split=" + detail::fmt(worst_split) + " moment=" + detail::fmt(worst_moment) +
               " chebyshev=" + detail::fmt(worst_cheb) + " r2_lattice_mismatch=" + std::to_string(r2_bad);
  });
}

// 2. Gowers oracle equivalence
inline CriterionResult criterion_gowers(std::uint64_t seed = 2, unsigned threads = 1) {
  return detail::timed(2, "gowers oracle equivalence", 60.0, [&](CriterionResult& r) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> off(-50, 50);
    std::uniform_real_distribution<double> th(0.0, 1.0);
    double worst_u2 = 0, worst_u3 = 0, worst_mod = 0, worst_ind_fft = 0;
    std::int64_t ind_exact_bad = 0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t len2 = 1 + rng() % 64;
      const auto f = detail::random_complex_series(rng, len2, off(rng));
      worst_u2 = std::max(worst_u2, detail::rel_err(u_norm_brute(f, 2).raw_power, u2_fft(f).raw_power));
      const std::size_t len3 = 1 + rng() % 32;
      const auto g = detail::random_complex_series(rng, len3, off(rng));
      worst_u3 = std::max(worst_u3, detail::rel_err(u_norm_brute(g, 3).raw_power, u3_fft(g, threads).raw_power));
      // U^2 is invariant under linear phases, U^3 under quadratic ones
      const double a = th(rng), b = th(rng), c = th(rng);
      auto f2 = f;
      for (std::int64_t n = f.start(); n < f.end(); ++n) f2[n] *= expi(a * static_cast<double>(n));
      auto g2 = g;
      for (std::int64_t n = g.start(); n < g.end(); ++n) {
        const double nd = static_cast<double>(n);
        g2[n] *= expi(b * nd * nd + c * nd);
      }
      worst_mod = std::max(worst_mod, detail::rel_err(u2_fft(f).raw_power, u2_fft(f2).raw_power));
      worst_mod = std::max(worst_mod, detail::rel_err(u3_fft(g, threads).raw_power, u3_fft(g2, threads).raw_power));
    }
    for (std::int64_t N = 1; N <= 64; ++N) {
      const auto ind = indicator_interval(N);
      const double closed = u2_indicator_closed_form(N);
      if (u_norm_brute(ind, 2).raw_power != closed) ++ind_exact_bad;
      worst_ind_fft = std::max(worst_ind_fft, detail::rel_err(u2_fft(ind).raw_power, closed));
    }
    r.pass = worst_u2 <= tol::kGowersRel && worst_u3 <= tol::kGowersRel && worst_mod <= tol::kModulationRel &&
             ind_exact_bad == 0 && worst_ind_fft <= tol::kGowersRel;
    r.detail = "u2_rel=" + detail::fmt(worst_u2) + " u3_rel=" + detail::fmt(worst_u3) + " modulation_rel=" +
               detail::fmt(worst_mod) + " indicator_brute_mismatch=" + std::to_string(ind_exact_bad) +
               " indicator_fft_rel=" + detail::fmt(worst_ind_fft);
  });
}

// 3. Voronoi AP sums
inline CriterionResult criterion_voronoi() {
  return detail::timed(3, "voronoi AP sums", 120.0, [](CriterionResult& r) {
    const auto tau = divisor_series(1000000);
    double worst = 0;  // max |exact - main| / N^{2/3}
    for (std::int64_t N : {10000, 100000, 1000000})
      for (std::int64_t q : {1, 2, 3, 4, 6})
        for (std::int64_t a = 1; a <= q; ++a) {
          const auto s = ap_divisor_sum(tau, N, a, q);
          worst = std::max(worst, std::abs(s.exact - s.voronoi_main) / std::pow(static_cast<double>(N), 2.0 / 3.0));
        }
    r.pass = worst <= tol::kVoronoiFactor;
    r.detail = "max |exact-main|/N^(2/3)=" + detail::fmt(worst) + " (bound 4)";
  });
}

// 4. coefficient recovery
inline CriterionResult criterion_recovery() {
  return detail::timed(4, "coefficient recovery", 60.0, [](CriterionResult& r) {
    const std::int64_t N = 1000000;
    const auto sieve = build_sieve(N);
    const cplx lam = recover_coefficient(von_mangoldt_series(sieve, N), 1, 3);
    const cplx r2 = recover_coefficient(r2_over_pi_series(N), 1, 4);
    const cplx tau = recover_coefficient(divisor_series(N), 0, 1);
    const double e_lam = std::abs(lam - cplx(-0.5, 0));
    const double e_r2 = std::abs(r2 - cplx(0, -0.5));
    const double target = divisor_coefficient(1, static_cast<double>(N));
    const double e_tau = std::abs(tau - target);
    const double logN = std::log(static_cast<double>(N));
    r.pass = e_lam <= tol::kMangoldtRecovery && e_r2 <= tol::kR2Recovery && e_tau <= tol::kDivisorRecoveryPerLog * logN;
    r.detail = "mangoldt(1/3) err=" + detail::fmt(e_lam) + " r2/pi(1/4) err=" + detail::fmt(e_r2) +
               " divisor(0/1) err=" + detail::fmt(e_tau) + " (bound " + detail::fmt(tol::kDivisorRecoveryPerLog * logN) + ")";
  });
}

// 5. Heath-Brown trend surrogate
inline CriterionResult criterion_heath_brown(unsigned threads = 1) {
  return detail::timed(5, "heath-brown trend", 120.0, [&](CriterionResult& r) {
    const std::int64_t N = std::int64_t{1} << 14;
    const auto sieve = build_sieve(N);
    const auto lam = von_mangoldt_series(sieve, N);
    std::vector<double> vals;
    for (std::int64_t Q : {2, 4, 8, 16}) {
      const MajorArcWeight w(ArcModel::mangoldt(), Q, ArcMode::Cumulative);
      vals.push_back(normalized_u(lam - weight_series(w, N), 2, N, threads).normalized);
    }
    bool decreasing = true;
    for (std::size_t j = 1; j < vals.size(); ++j) decreasing = decreasing && vals[j] < vals[j - 1];
    r.pass = decreasing && vals.back() <= tol::kHeathBrownQ16;
    r.detail = "U2 at Q=2,4,8,16: " + detail::fmt(vals[0]) + ", " + detail::fmt(vals[1]) + ", " + detail::fmt(vals[2]) +
               ", " + detail::fmt(vals[3]);
  });
}

// 6. Piatetski-Shapiro counts and tech-lemma statistics
inline CriterionResult criterion_piatetski_shapiro(unsigned threads = 1) {
  return detail::timed(6, "piatetski-shapiro", 180.0, [&](CriterionResult& r) {
    std::int64_t count_bad = 0;
    for (double c : {1.01, 1.05, 1.1})
      for (std::int64_t N : {1000, 10000, 100000, 1000000}) {
        const auto ps = ps_members(c, N);
        const auto expect = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(N), 1.0 / c)));
        if (std::abs(static_cast<std::int64_t>(ps.members.size()) - expect) > 1) ++count_bad;
      }
    bool exp_ok = true, trend_ok = true;
    std::string exps, trends;
    for (double c : {1.01, 1.05, 1.1}) {
      const auto st = tech_lemma_stats(c, 12, 256, 6, tol::kTechEpsPrime, 8, threads);
      const double bound = 0.5 + (1 - 1 / c) + tol::kTechSlack;
      if (st.max_exponent > bound) exp_ok = false;
      exps += " c=" + detail::fmt(c, 3) + ":" + detail::fmt(st.max_exponent) + "<=" + detail::fmt(bound);
      std::vector<double> fr;
      for (int lg : {10, 12, 14}) fr.push_back(tech_lemma_stats(c, lg, 256, 6, tol::kTechEpsPrime, 8, threads).bad_fraction);
      const bool mono = fr[1] <= fr[0] && fr[2] <= fr[1];
      trend_ok = trend_ok && mono;
      trends += " c=" + detail::fmt(c, 3) + ":[" + detail::fmt(fr[0]) + "," + detail::fmt(fr[1]) + "," + detail::fmt(fr[2]) + "]";
    }
    r.pass = count_bad == 0 && exp_ok && trend_ok;
    r.detail = "count_mismatch=" + std::to_string(count_bad) + "; max_exponent" + exps + "; bad_fraction N=2^10,2^12,2^14" + trends;
  });
}

// 7. oscillation functionals
inline CriterionResult criterion_oscillation(std::uint64_t seed = 7, unsigned threads = 1) {
  return detail::timed(7, "oscillation", 60.0, [&](CriterionResult& r) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::int64_t var_bad = 0, jump_bad = 0, greedy_diff = 0, chain_bad = 0;
    const double rs[] = {1.0, 2.0, 2.5, 3.0};
    for (int t = 0; t < 500; ++t) {
      const std::size_t len = 1 + rng() % 12;
      std::vector<std::int64_t> times(len);
      std::vector<cplx> vals(len);
      for (std::size_t j = 0; j < len; ++j) {
        times[j] = static_cast<std::int64_t>(j);
        // a third of the traces sit on a half-integer lattice to exercise ties
        if (t % 3 == 0)
          vals[j] = 0.5 * static_cast<double>(static_cast<int>(rng() % 5) - 2);
        else if (t % 3 == 1)
          vals[j] = u(rng);
        else
          vals[j] = {u(rng), u(rng)};
      }
      const Trace tr(times, vals);
      const double r_ = rs[t % 4];
      const double dp = variation(tr, r_);
      const double ex = std::pow(detail::exhaustive_variation_power(tr, r_), 1.0 / r_);
      if (std::abs(dp - ex) > 1e-12 * std::max(1.0, ex)) ++var_bad;
      for (double lam : {0.25, 0.5, 1.0, std::abs(u(rng)) + 0.05}) {
        const auto e = detail::exhaustive_jumps(tr, lam);
        if (jump_count(tr, lam) != e) ++jump_bad;
        if (jump_count_greedy(tr, lam) != e) ++greedy_diff;
      }
      const double vr = std::pow(dp, r_);
      if (jump_chain_sup(tr, r_) > vr * (1 + 1e-12) + 1e-15) ++chain_bad;
    }
    const auto lep = lepingle_check(1000, 1024, 3.0, seed, threads);
    const double lep_bound = tol::kLepingleFactor * 3.0 / (3.0 - 2.0);
    r.pass = var_bad == 0 && jump_bad == 0 && chain_bad == 0 && lep.max_ratio <= lep_bound;
    r.detail = "variation_mismatch=" + std::to_string(var_bad) + " jump_mismatch=" + std::to_string(jump_bad) +
               " chain_violations=" + std::to_string(chain_bad) + " lepingle_max_ratio=" + detail::fmt(lep.max_ratio) +
               " (bound " + detail::fmt(lep_bound) + ") jump_ratio=" + detail::fmt(lep.max_jump_ratio) +
               " first_crossing_suboptimal=" + std::to_string(greedy_diff);
  });
}

// 8. spectra
inline CriterionResult criterion_spectra(std::uint64_t seed = 8, unsigned threads = 1) {
  return detail::timed(8, "spectra", 120.0, [&](CriterionResult& r) {
    std::size_t violations = 0, intervals = 0;
    for (std::int64_t Delta : {3, 5, 7}) {
      for (std::int64_t L = 0; L <= Delta; ++L)
        for (std::int64_t U = 0; U < Delta - 1; ++U) {
          struct Cfg {
            std::int64_t K0;
            Interval w;
          };
          const Cfg cfgs[] = {{Delta, {0, 1 << 10}}, {Delta * 2, {-333, (1 << 12) - 333}}, {Delta * 64, {0, 1 << 16}}};
          for (const auto& cfg : cfgs) {
            const auto iv = grid_intervals({cfg.K0, Delta, L, U, cfg.w});
            intervals += iv.size();
            violations += grid_nesting_violations(iv);
          }
        }
    }
    const ThresholdLadder ladder(1.0, 1e-3);
    double part_err = 0;
    for (int j = 1; j <= 10000; ++j) {
      const double t = 1e-3 + (1.0 - 1e-3) * j / 10000.0;
      part_err = std::max(part_err, std::abs(ladder.partition(t) - 1.0));
    }
    const double lip = ThresholdLadder::measured_lipschitz();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::int64_t N = 1024;
    double max_samp = 0;
    for (int t = 0; t < 100; ++t) {
      std::vector<cplx> v(static_cast<std::size_t>(8 * N + 1));
      if (t % 2 == 0) {
        for (auto& x : v) x = expi(u(rng));
      } else {
        const int J = 1 + static_cast<int>(rng() % 8);
        std::vector<double> th(static_cast<std::size_t>(J));
        for (auto& x : th) x = u(rng);
        for (std::size_t k = 0; k < v.size(); ++k) {
          cplx s{};
          for (double x : th) s += expi(x * static_cast<double>(static_cast<std::int64_t>(k) - 4 * N));
          v[k] = s / static_cast<double>(J);
        }
      }
      const WeightSeries g("g", -4 * N, std::move(v));
      for (double d : {0.1, 0.2}) max_samp = std::max(max_samp, sampling_check(g, N, d).bound_ratio);
    }
    double max_bessel = 0;
    for (int t = 0; t < 50; ++t) {
      std::vector<cplx> v(std::size_t{1} << 15);
      for (auto& x : v) x = expi(u(rng)) * u(rng);
      const WeightSeries g("g", 0, std::move(v));
      std::set<std::int64_t> lam;
      const int sz = 1 + static_cast<int>(rng() % 8);
      while (static_cast<int>(lam.size()) < sz) lam.insert(static_cast<std::int64_t>(rng() % 64));
      const auto e = wavepacket_energy(g, {lam.begin(), lam.end()}, 64, 4, {1 << 10, 1 << 14}, threads);
      max_bessel = std::max(max_bessel, e.ratio);
    }
    r.pass = violations == 0 && part_err <= tol::kPartition && max_samp <= tol::kSamplingBound &&
             max_bessel <= tol::kBesselRatio;
    r.detail = "nesting_violations=" + std::to_string(violations) + " over " + std::to_string(intervals) +
               " intervals; partition_err=" + detail::fmt(part_err) + " lipschitz=" + detail::fmt(lip) +
               " max|Lambda|delta^2=" + detail::fmt(max_samp) + " max_bessel_ratio=" + detail::fmt(max_bessel);
  });
}

// 9. ergodic simulation
inline CriterionResult criterion_ergodic(std::uint64_t seed = 9) {
  return detail::timed(9, "ergodic simulation", 180.0, [&](CriterionResult& r) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // modulation covariance in the integer model
    std::int64_t exact_bad = 0;
    double rand_theta_err = 0;
    for (int t = 0; t < 20; ++t) {
      const std::int64_t N = 200 + static_cast<std::int64_t>(rng() % 300);
      const std::int64_t x = static_cast<std::int64_t>(rng() % 2000) - 1000;
      auto mk = [&](std::int64_t lo, std::int64_t len) {
        std::vector<cplx> v(static_cast<std::size_t>(len));
        for (auto& z : v) z = {u(rng), u(rng)};
        return WeightSeries("s", lo, std::move(v));
      };
      const auto F = mk(x - N, N + 1), G = mk(x, N + 1), w = mk(1, N);
      const cplx base = integer_model_average(F, G, w, x, N);
      const cplx exact = integer_model_average(modulate(F, 1, 4), modulate(G, 1, 4), w, x, N);
      if (exact != base * expi_frac(2 * x, 4)) ++exact_bad;
      const std::int64_t den = 1000003;
      const std::int64_t num = static_cast<std::int64_t>(rng() % den);
      const cplx mod = integer_model_average(modulate(F, num, den), modulate(G, num, den), w, x, N);
      const cplx expect = base * expi_frac(static_cast<std::int64_t>(2 * static_cast<__int128>(num) * x % den), den);
      rand_theta_err = std::max(rand_theta_err, std::abs(mod - expect) / std::max(std::abs(base), 1e-300));
    }
    // skew product, Kronecker-orthogonal g
    const std::int64_t N = 1000000;
    const auto sieve = build_sieve(N);
    const auto lam = von_mangoldt_series(sieve, N);
    const WeightSeries one("one", 1, std::vector<cplx>(static_cast<std::size_t>(N), cplx(1.0, 0.0)));
    const auto T = DynamicalSystem::skew(std::numbers::sqrt2 - 1);
    const auto f = Observable::character(1, 0);
    const auto g = Observable::character(0, 1);
    double worst_one = 0, worst_lam = 0;
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const TorusPoint x0 = random_point(seed * 1000 + s);
      worst_one = std::max(worst_one, std::abs(bilinear_average(one, T, f, g, x0, N, 1, 2)));
      worst_lam = std::max(worst_lam, std::abs(bilinear_average(lam, T, f, g, x0, N, 1, 2)));
    }
    // primes against von Mangoldt
    const double golden = (std::sqrt(5.0) - 1) / 2;
    const std::function<cplx(std::int64_t)> seqs[] = {
        [](std::int64_t) { return cplx(1.0, 0.0); },
        [](std::int64_t n) { return cplx(n % 2 == 0 ? 1.0 : -1.0, 0.0); },
        [golden](std::int64_t n) { return expi(golden * static_cast<double>(n)); },
    };
    double worst_gap = 0;
    for (const auto& a : seqs) worst_gap = std::max(worst_gap, prime_vs_mangoldt(a, sieve, N).gap);
    r.pass = exact_bad == 0 && rand_theta_err <= tol::kRandomThetaModulation && worst_one <= tol::kSkewUnit &&
             worst_lam <= tol::kSkewMangoldt && worst_gap <= tol::kPrimeGap;
    r.detail = "theta=1/4 inexact=" + std::to_string(exact_bad) + " random_theta_rel=" + detail::fmt(rand_theta_err) +
               " |B_N| w=1: " + detail::fmt(worst_one) + " w=Lambda: " + detail::fmt(worst_lam) +
               " prime_gap=" + detail::fmt(worst_gap);
  });
}

// 10. multiplicity bound
inline CriterionResult criterion_multiplicity(std::uint64_t seed = 10) {
  return detail::timed(10, "multiplicity bound", 60.0, [&](CriterionResult& r) {
    std::mt19937_64 rng(seed);
    std::int64_t valuation_bad = 0, lambda_bad = 0;
    std::int64_t lambda_bad_unit_n = 0;
    std::string example;
    for (int t = 0; t < 50; ++t) {
      const std::int64_t K0 = 1 + static_cast<std::int64_t>(rng() % 8);
      std::int64_t M0 = K0;
      const int jmax = static_cast<int>(floor_log2(static_cast<std::uint64_t>(1024 / K0)));
      M0 <<= static_cast<int>(rng() % static_cast<std::uint64_t>(jmax + 1));
      const std::int64_t Q = 2 + static_cast<std::int64_t>(rng() % 15);
      DyadicFareySlice slice;
      do {
        const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(floor_log2(static_cast<std::uint64_t>(Q)) + 1));
        slice = farey_dyadic_slice(Q, i);
      } while (slice.fractions.empty());
      const std::size_t lam_size = 1 + rng() % static_cast<std::uint64_t>(std::min<std::int64_t>(M0, 32));
      std::set<std::int64_t> nums;
      while (nums.size() < lam_size) nums.insert(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(M0)));
      std::vector<Rational01> lambda;
      for (auto k : nums) lambda.emplace_back(k, M0);
      auto draw = [&] {
        std::int64_t v = 0;
        while (v == 0) v = static_cast<std::int64_t>(rng() % 21) - 10;
        return v;
      };
      const std::int64_t m = draw(), n = draw();
      const auto res = multiplicity_count(lambda, slice.fractions, m, n);
      const std::int64_t vbound = 105 * (std::int64_t{1} << slice.i) * K0;
      const auto lsize = static_cast<std::int64_t>(lambda.size());
      if (res.max > vbound) ++valuation_bad;
      if (res.max > lsize) {
        ++lambda_bad;
        if (std::abs(n) == 1) ++lambda_bad_unit_n;
        if (example.empty())
          example = " e.g. K0=" + std::to_string(K0) + " M0=" + std::to_string(M0) + " Q=" + std::to_string(Q) +
                    " i=" + std::to_string(slice.i) + " (m,n)=(" + std::to_string(m) + "," + std::to_string(n) +
                    ") |Lambda|=" + std::to_string(lsize) + " max=" + std::to_string(res.max);
      }
    }
    r.pass = valuation_bad == 0 && lambda_bad == 0;
    r.detail = "configs=50 over_105*2^i*K0=" + std::to_string(valuation_bad) + " over_|Lambda|=" +
               std::to_string(lambda_bad) + " (of which |n|=1: " + std::to_string(lambda_bad_unit_n) + ")" + example;
  });
}

// "fast": the deterministic arithmetic core (1-4). "full": all ten.
inline std::vector<CriterionResult> run_suite(const std::string& suite, unsigned threads = 1,
                                              const std::function<void(const CriterionResult&)>& on_result = {}) {
  require(suite == "fast" || suite == "full", "suite must be fast or full");
  std::vector<std::function<CriterionResult()>> checks = {
      [] { return criterion_exact_identities(); },
      [&] { return criterion_gowers(2, threads); },
      [] { return criterion_voronoi(); },
      [] { return criterion_recovery(); },
  };
  if (suite == "full") {
    checks.push_back([&] { return criterion_heath_brown(threads); });
    checks.push_back([&] { return criterion_piatetski_shapiro(threads); });
    checks.push_back([&] { return criterion_oscillation(7, threads); });
    checks.push_back([&] { return criterion_spectra(8, threads); });
    checks.push_back([] { return criterion_ergodic(9); });
    checks.push_back([] { return criterion_multiplicity(10); });
  }
  std::vector<CriterionResult> out;
  for (auto& c : checks) {
    out.push_back(c());
    if (on_result) on_result(out.back());
  }
  return out;
}

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " (" << detail::fmt(r.seconds, 3) << " s) "
     << r.detail;
  return os.str();
}

}  // namespace arith_lab::verify
