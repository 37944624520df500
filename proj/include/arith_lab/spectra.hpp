#pragma once

// Shifted dyadic grids, local Fourier transforms on intervals, the large
// spectrum Spec_delta(I), the soft-threshold ladder Psi_delta and the
// projections Pi_I[Lambda], plus the sampling and wave-packet energy checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <set>
#include <vector>

#include "arith_lab/arcs.hpp"
#include "arith_lab/common.hpp"
#include "arith_lab/fft.hpp"
#include "arith_lab/parallel.hpp"
#include "arith_lab/series.hpp"

namespace arith_lab {

struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;  // exclusive
  std::int64_t length() const { return hi - lo; }
  bool contains(std::int64_t x) const { return x >= lo && x < hi; }
  auto operator<=>(const Interval&) const = default;
};

struct GridInterval {
  Interval interval;
  Interval core;  // leading 1/Delta of the interval
  int k = 0;
};

struct ShiftedGrid {
  std::int64_t K0 = 1;
  std::int64_t Delta = 3;
  std::int64_t L = 0;  // shift index, 0 and Delta give the same grid
  std::int64_t U = 0;  // residue of k mod Delta - 1
  Interval window;
};

inline constexpr std::size_t kGridIntervalCap = std::size_t{1} << 20;

inline bool is_prime_small(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void validate(const ShiftedGrid& g) {
  require(is_prime_small(g.Delta), "Delta must be prime");
  require(g.K0 >= 1 && g.K0 % g.Delta == 0, "Delta must divide K0");
  require(g.L >= 0 && g.L <= g.Delta, "L must lie in [0, Delta]");
  require(g.U >= 0 && g.U < std::max<std::int64_t>(1, g.Delta - 1), "U must lie in [0, Delta - 1)");
  // Nesting across scales needs 2^(Delta-1) = 1 mod Delta, which fails for
  // Delta = 2 unless the shift is integral.
  require(g.Delta != 2 || g.L % 2 == 0, "Delta = 2 needs even L for a nested grid");
  require(g.window.hi > g.window.lo, "grid window must be nonempty");
}

// K0 2^k (n + L/Delta + [0, 1)) for k = U mod (Delta - 1), restricted to
// intervals inside the window. Ordered by k, then by position.
inline std::vector<GridInterval> grid_intervals(const ShiftedGrid& g) {
  validate(g);
  std::vector<GridInterval> out;
  const std::int64_t step = std::max<std::int64_t>(1, g.Delta - 1);
  const std::int64_t W = g.window.length();
  for (std::int64_t k = g.U; k < 62; k += step) {
    if (g.K0 > (W >> std::min<std::int64_t>(k, 62))) break;
    const std::int64_t len = g.K0 << k;
    const std::int64_t shift = len / g.Delta * g.L;
    // first n with len * n + shift >= window.lo
    std::int64_t n = (g.window.lo - shift) / len;
    while (len * n + shift > g.window.lo) --n;
    while (len * n + shift < g.window.lo) ++n;
    for (std::int64_t s = len * n + shift; s + len <= g.window.hi; s += len) {
      out.push_back({{s, s + len}, {s, s + len / g.Delta}, static_cast<int>(k)});
      if (out.size() > kGridIntervalCap) throw CapacityError("grid_intervals: too many intervals");
    }
  }
  return out;
}

// Exhaustive pairwise check that intervals are nested or disjoint.
inline std::size_t grid_nesting_violations(const std::vector<GridInterval>& iv) {
  std::size_t bad = 0;
  for (std::size_t a = 0; a < iv.size(); ++a) {
    const auto& I = iv[a].interval;
    for (std::size_t b = a + 1; b < iv.size(); ++b) {
      const auto& J = iv[b].interval;
      const std::int64_t lo = std::max(I.lo, J.lo), hi = std::min(I.hi, J.hi);
      if (hi <= lo) continue;
      const bool nested = (lo == I.lo && hi == I.hi) || (lo == J.lo && hi == J.hi);
      if (!nested) ++bad;
    }
  }
  return bad;
}

// F_I g(xi) = sum_{n in I} g(n) e(-n xi / |I|), xi in Z/|I|, n absolute.
inline std::vector<cplx> local_fourier(const WeightSeries& g, const Interval& I) {
  require(I.length() >= 1, "interval must be nonempty");
  require(I.lo >= g.start() && I.hi <= g.end(), "interval must lie inside the series window");
  const std::int64_t M = I.length();
  std::vector<cplx> buf(static_cast<std::size_t>(M));
  for (std::int64_t m = 0; m < M; ++m) buf[static_cast<std::size_t>(m)] = g[I.lo + m];
  fft::forward(buf);
  for (std::int64_t xi = 0; xi < M; ++xi) buf[static_cast<std::size_t>(xi)] *= expi_frac(-(I.lo % M) * xi, M);
  return buf;
}

inline WeightSeries local_fourier_inverse(const std::vector<cplx>& F, const Interval& I) {
  const std::int64_t M = I.length();
  require(static_cast<std::int64_t>(F.size()) == M, "spectrum length must equal |I|");
  std::vector<cplx> buf(F);
  for (std::int64_t xi = 0; xi < M; ++xi) buf[static_cast<std::size_t>(xi)] *= expi_frac((I.lo % M) * xi, M);
  fft::inverse(buf);
  for (auto& v : buf) v /= static_cast<double>(M);
  return {"restriction", I.lo, std::move(buf)};
}

struct SpectrumSet {
  Interval interval;
  double delta = 1;
  std::vector<std::int64_t> freqs;  // ascending, in [0, |I|)
};

// Rounding guard on the annulus: both endpoints are scaled by the same factor
// so layers at dyadic levels stay disjoint.
inline constexpr double kAnnulusGuard = 1e-12;

inline bool in_annulus(double normalized, double delta) {
  const double v = normalized / (1.0 + kAnnulusGuard);
  return v > delta / 2 && v <= delta;
}

inline SpectrumSet spectrum_from(const std::vector<cplx>& F, const Interval& I, double delta) {
  SpectrumSet s{I, delta, {}};
  const double len = static_cast<double>(I.length());
  for (std::size_t xi = 0; xi < F.size(); ++xi)
    if (in_annulus(std::abs(F[xi]) / len, delta)) s.freqs.push_back(static_cast<std::int64_t>(xi));
  return s;
}

// {xi : delta/2 < |F_I g(xi)| / |I| <= delta}
inline SpectrumSet spec_delta(const WeightSeries& g, const Interval& I, double delta) {
  require(delta > 0 && delta <= 1, "need 0 < delta <= 1");
  return spectrum_from(local_fourier(g, I), I, delta);
}

// psi(t) = beta(log2 t) with beta(x) + beta(x - 1) = 1 on [0, 1], supported
// on (1/2, 2); its dyadic dilates sum to 1 on (0, infinity).
class ThresholdLadder {
 public:
  ThresholdLadder(double delta0, double delta_min) : delta0_(delta0) {
    require(delta0 > 0, "delta0 must be positive");
    require(delta_min > 0 && delta_min <= delta0, "need 0 < delta_min <= delta0");
    for (double d = delta0;; d /= 2) {
      levels_.push_back(d);
      if (d <= delta_min / 2) break;
    }
  }

  static double step(double u) {
    if (u <= 0) return 0;
    if (u >= 1) return 1;
    const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
  }

  static double psi(double t) {
    if (t <= 0.5 || t >= 2) return 0;
    const double x = std::log2(t);
    return x <= 0 ? step(x + 1) : step(1 - x);
  }

  double delta0() const { return delta0_; }
  const std::vector<double>& levels() const { return levels_; }

  double psi_delta(double t, double delta) const { return psi(t / delta); }

  // sum over ladder levels of psi_delta(t)
  double partition(double t) const {
    double s = 0;
    for (double d : levels_) s += psi(t / d);
    return s;
  }

  // Psi_delta(z) = z psi(|z| / delta)
  static cplx Psi(cplx z, double delta) { return z * psi(std::abs(z) / delta); }
  cplx Psi_sum(cplx z) const { return z * partition(std::abs(z)); }

  // Lipschitz constant of Psi_delta, independent of delta. The radial part
  // is the derivative of s psi(s); the tangential part is psi <= 1.
  static double measured_lipschitz(int samples = 200000) {
    double lip = 1.0;
    const double lo = 0.5, hi = 2.0;
    const double h = (hi - lo) / samples;
    double prev = lo * psi(lo);
    for (int j = 1; j <= samples; ++j) {
      const double s = lo + h * j;
      const double cur = s * psi(s);
      lip = std::max(lip, std::abs(cur - prev) / h);
      prev = cur;
    }
    return lip;
  }

 private:
  double delta0_;
  std::vector<double> levels_;
};

// Pi_I[Lambda] g(x) = sum_theta Psi(E_I Mod_{-theta} g) e(theta x) 1_I(x).
// A null delta sums the whole ladder; otherwise the single level delta.
inline WeightSeries projection(const WeightSeries& g, const Interval& I, const std::vector<Rational01>& lambda,
                               const ThresholdLadder& ladder, std::optional<double> delta = std::nullopt) {
  require(I.length() >= 1, "interval must be nonempty");
  {
    std::set<Rational01> uniq(lambda.begin(), lambda.end());
    require(uniq.size() == lambda.size(), "frequencies must be distinct mod 1");
  }
  const double len = static_cast<double>(I.length());
  std::vector<cplx> out(static_cast<std::size_t>(I.length()));
  for (const auto& th : lambda) {
    const std::int64_t q = th.den();
    const std::int64_t a = th.num();
    auto phase = [&](std::int64_t n) {
      std::int64_t r = n % q;
      if (r < 0) r += q;
      return expi_frac(static_cast<std::int64_t>(static_cast<__int128>(a) * r % q), q);
    };
    cplx avg{};
    for (std::int64_t n = I.lo; n < I.hi; ++n) avg += g.at(n) * std::conj(phase(n));
    avg /= len;
    const cplx amp = delta ? ThresholdLadder::Psi(avg, *delta) : ladder.Psi_sum(avg);
    if (amp == cplx{}) continue;
    for (std::int64_t n = I.lo; n < I.hi; ++n) out[static_cast<std::size_t>(n - I.lo)] += amp * phase(n);
  }
  return {"projection", I.lo, std::move(out)};
}

struct SamplingResult {
  std::size_t count = 0;          // |Lambda|
  double bound_ratio = 0;         // |Lambda| delta^2
  std::vector<double> freqs;      // chosen points of T in [0, 1)
  double energy = 0;              // sum_{theta in Lambda} |P_N(theta)|^2
  double weighted_l2 = 0;         // (1/N) sum (1 + |n|/N)^{-2} |g(n)|^2
};

inline double gaussian_profile(double x) { return std::exp(-std::numbers::pi * x * x); }

// P_N(beta) = sum_n phi_N(n) g(n) e(n beta), phi_N(n) = phi(n/N)/N, scanned
// on the grid k / (fine N). Lambda is built by a greedy left-to-right scan
// keeping points at circular distance >= 1/N from all chosen ones.
inline SamplingResult sampling_check(const WeightSeries& g, std::int64_t N, double delta, int fine = 8) {
  require(N >= 1, "N must be >= 1");
  require(delta > 0, "delta must be positive");
  require(fine >= 2, "scan refinement must be >= 2");
  for (const auto& v : g.values()) require(std::abs(v) <= 1.0 + 1e-12, "g must be 1-bounded");
  const std::int64_t M = N * fine;
  std::vector<cplx> buf(static_cast<std::size_t>(M));
  SamplingResult res;
  const double Nd = static_cast<double>(N);
  for (std::int64_t n = g.start(); n < g.end(); ++n) {
    const double x = static_cast<double>(n) / Nd;
    std::int64_t r = n % M;
    if (r < 0) r += M;
    buf[static_cast<std::size_t>(r)] += gaussian_profile(x) / Nd * g[n];
    const double wt = 1.0 + std::abs(x);
    res.weighted_l2 += std::norm(g[n]) / (wt * wt);
  }
  res.weighted_l2 /= Nd;
  fft::inverse(buf);  // sum_n b_n e(n k / M)
  std::vector<std::int64_t> chosen;
  for (std::int64_t k = 0; k < M; ++k) {
    if (std::abs(buf[static_cast<std::size_t>(k)]) < delta) continue;
    bool ok = true;
    for (std::int64_t c : chosen) {
      const std::int64_t d = std::min((k - c) % M, (c - k + M) % M);
      if (d < fine) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(k);
  }
  res.count = chosen.size();
  res.bound_ratio = static_cast<double>(chosen.size()) * delta * delta;
  for (std::int64_t k : chosen) {
    res.freqs.push_back(static_cast<double>(k) / static_cast<double>(M));
    res.energy += std::norm(buf[static_cast<std::size_t>(k)]);
  }
  return res;
}

// eta_{I, xi}(n) = |I|^{-1/2} 1_I(n) e(xi n / |I|)
inline WeightSeries wave_packet(const Interval& I, std::int64_t xi) {
  const std::int64_t M = I.length();
  require(M >= 1, "interval must be nonempty");
  std::vector<cplx> v(static_cast<std::size_t>(M));
  const double s = 1.0 / std::sqrt(static_cast<double>(M));
  for (std::int64_t n = I.lo; n < I.hi; ++n) {
    const std::int64_t r = ((n % M) + M) % M;
    v[static_cast<std::size_t>(n - I.lo)] = s * expi_frac(static_cast<std::int64_t>(static_cast<__int128>(r) * xi % M), M);
  }
  return {"packet", I.lo, std::move(v)};
}

// <f, g> = sum f(n) conj(g(n))
inline cplx inner_product(const WeightSeries& f, const WeightSeries& g) {
  cplx s{};
  const std::int64_t lo = std::max(f.start(), g.start()), hi = std::min(f.end(), g.end());
  for (std::int64_t n = lo; n < hi; ++n) s += f[n] * std::conj(g[n]);
  return s;
}

// Lambda_M = {j/M : 0 < dist(j/M, Lambda) <= 10R/M} for Lambda in Z/M0, M0 | M;
// distances are exact integers in units of 1/M.
inline std::vector<std::int64_t> annulus_frequencies(const std::vector<std::int64_t>& lambda, std::int64_t M0,
                                                     std::int64_t M, int R) {
  require(M0 >= 1 && M % M0 == 0, "M0 must divide M");
  const std::int64_t ratio = M / M0;
  const std::int64_t reach = 10 * static_cast<std::int64_t>(R);
  std::vector<std::int64_t> dist(static_cast<std::size_t>(M), M);
  for (std::int64_t l : lambda) {
    const std::int64_t c = ((l % M0 + M0) % M0) * ratio;
    for (std::int64_t t = -std::min(reach, M); t <= std::min(reach, M); ++t) {
      const std::int64_t j = ((c + t) % M + M) % M;
      auto& d = dist[static_cast<std::size_t>(j)];
      d = std::min(d, std::abs(t));
    }
  }
  std::vector<std::int64_t> out;
  for (std::int64_t j = 0; j < M; ++j) {
    const auto d = dist[static_cast<std::size_t>(j)];
    if (d > 0 && d <= reach) out.push_back(j);
  }
  return out;
}

struct WavePacketEnergy {
  double total = 0;
  double ratio = 0;  // total / (R ||g||^2)
  std::vector<double> per_scale;
};

// sum over scales M, intervals |I| = M tiling the window from its start, and
// xi in Lambda_M of |<g, eta_{I, xi}>|^2.
inline WavePacketEnergy wavepacket_energy(const WeightSeries& g, const std::vector<std::int64_t>& lambda,
                                          std::int64_t M0, int R, std::vector<std::int64_t> scales,
                                          unsigned threads = 1) {
  require(M0 >= 1, "M0 must be >= 1");
  require(R >= 1 && R <= 20, "R must lie in [1, 20]");
  require(!scales.empty(), "scale list must be nonempty");
  std::sort(scales.begin(), scales.end());
  const std::int64_t sep = std::int64_t{1} << R;
  require(scales.front() >= sep * M0, "smallest scale must be >= 2^R M0");
  for (std::size_t j = 0; j < scales.size(); ++j) {
    require(scales[j] % M0 == 0, "scales must be multiples of M0");
    if (j > 0) require(scales[j] >= sep * scales[j - 1], "consecutive scales must be 2^R apart");
  }
  WavePacketEnergy res;
  const double gn = g.l2_norm_sq();
  for (std::int64_t M : scales) {
    const auto freqs = annulus_frequencies(lambda, M0, M, R);
    const std::int64_t count = static_cast<std::int64_t>(g.size()) / M;
    std::vector<double> per(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
    parallel_for(per.size(), threads, [&](std::size_t idx) {
      const Interval I{g.start() + static_cast<std::int64_t>(idx) * M, g.start() + static_cast<std::int64_t>(idx + 1) * M};
      const auto F = local_fourier(g, I);
      double e = 0;
      for (std::int64_t j : freqs) e += std::norm(F[static_cast<std::size_t>(j)]);
      per[idx] = e / static_cast<double>(M);
    });
    double s = 0;
    for (double v : per) s += v;
    res.per_scale.push_back(s);
    res.total += s;
  }
  res.ratio = gn > 0 ? res.total / (R * gn) : 0.0;
  return res;
}

}  // namespace arith_lab
