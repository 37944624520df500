#pragma once

// Gowers uniformity norms of finitely supported sequences on Z.
//
//   ||f||_{U^s}^{2^s} = sum_{x, h_1..h_s} Delta_{h_1..h_s} f(x),
//   Delta_h f(x) = f(x) conj(f(x + h)).
//
// u_norm_brute enumerates difference tuples directly and is the oracle;
// u2_fft uses ||f||_{U^2}^4 = sum_k |(f * f~)(k)|^2 and u3_fft foliates
// U^3 into U^2 norms of first differences.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "arith_lab/common.hpp"
#include "arith_lab/fft.hpp"
#include "arith_lab/parallel.hpp"
#include "arith_lab/series.hpp"

namespace arith_lab {

struct GowersResult {
  int s = 0;
  double raw_power = 0;   // ||f||_{U^s(Z)}^{2^s}
  double normalized = 0;  // ||f||_{U^s([N])}, filled by normalized_u
  bool clamped = false;   // a tiny negative raw power was clamped to zero
};

inline constexpr std::size_t kBruteSupportCap = 256;
inline constexpr std::size_t kU3SupportCap = std::size_t{1} << 20;

// Delta_h f on the window where both f(x) and f(x+h) may be nonzero.
inline WeightSeries difference(const WeightSeries& f, std::int64_t h) {
  const std::int64_t lo = std::max(f.start(), f.start() - h);
  const std::int64_t hi = std::min(f.end(), f.end() - h);
  std::vector<cplx> out;
  if (hi > lo) {
    out.resize(static_cast<std::size_t>(hi - lo));
    for (std::int64_t x = lo; x < hi; ++x) out[static_cast<std::size_t>(x - lo)] = f[x] * std::conj(f[x + h]);
  }
  return {"diff", hi > lo ? lo : f.start(), std::move(out)};
}

namespace detail {

inline GowersResult finish(int s, double raw) {
  GowersResult r;
  r.s = s;
  if (raw < 0 && raw >= -1e-12) {
    raw = 0;
    r.clamped = true;
  }
  r.raw_power = raw;
  return r;
}

// Recursive enumeration of h_1..h_s; vectors are indexed 0..L-1 relative to
// the support start, with shifts that leave the support skipped.
inline cplx brute_sum(const std::vector<cplx>& g, int depth) {
  const auto L = static_cast<std::int64_t>(g.size());
  if (depth == 0) {
    cplx s{};
    for (const auto& v : g) s += v;
    return s;
  }
  cplx total{};
  std::vector<cplx> d;
  d.reserve(g.size());
  for (std::int64_t h = -(L - 1); h <= L - 1; ++h) {
    // Delta_h g is supported where both x and x + h lie in [0, L); the sums
    // are translation invariant so the overlap is re-based at 0.
    const std::int64_t lo = std::max<std::int64_t>(0, -h);
    const std::int64_t hi = std::min<std::int64_t>(L, L - h);
    d.clear();
    for (std::int64_t x = lo; x < hi; ++x)
      d.push_back(g[static_cast<std::size_t>(x)] * std::conj(g[static_cast<std::size_t>(x + h)]));
    total += brute_sum(d, depth - 1);
  }
  return total;
}

}  // namespace detail

// Direct sum over all (x, h_1, ..., h_s); s in {1, 2, 3}.
inline GowersResult u_norm_brute(const WeightSeries& f, int s) {
  require(s >= 1 && s <= 3, "u_norm_brute supports s in {1, 2, 3}");
  if (f.size() > kBruteSupportCap) throw CapacityError("u_norm_brute: support exceeds 256");
  const cplx v = detail::brute_sum(f.values(), s);
  return detail::finish(s, v.real());
}

// Imaginary part of the brute-force sum, which must vanish.
inline double u_norm_brute_imag(const WeightSeries& f, int s) {
  require(s >= 1 && s <= 3, "u_norm_brute supports s in {1, 2, 3}");
  if (f.size() > kBruteSupportCap) throw CapacityError("u_norm_brute: support exceeds 256");
  return detail::brute_sum(f.values(), s).imag();
}

inline double u2_raw(std::span<const cplx> f) {
  const auto r = fft::autocorrelation(f);
  double s = 0;
  for (const auto& v : r) s += std::norm(v);
  return s;
}

inline GowersResult u2_fft(const WeightSeries& f) { return detail::finish(2, u2_raw(f.values())); }

// sum_h ||Delta_h f||_{U^2}^4 over all h with nonempty overlap; per-h values
// are reduced in ascending h so the result is independent of thread count.
inline GowersResult u3_fft(const WeightSeries& f, unsigned threads = 1) {
  if (f.size() > kU3SupportCap) throw CapacityError("u3_fft: support exceeds cap");
  const auto L = static_cast<std::int64_t>(f.size());
  if (L == 0) return detail::finish(3, 0);
  std::vector<double> per_h(static_cast<std::size_t>(2 * L - 1));
  parallel_for(per_h.size(), threads, [&](std::size_t idx) {
    const std::int64_t h = static_cast<std::int64_t>(idx) - (L - 1);
    const auto d = difference(f, h);
    per_h[idx] = d.empty() ? 0.0 : u2_raw(d.values());
  });
  double s = 0;
  for (double v : per_h) s += v;
  return detail::finish(3, s);
}

inline WeightSeries indicator_interval(std::int64_t N) {
  return {"indicator", 1, std::vector<cplx>(static_cast<std::size_t>(N), cplx(1.0, 0.0))};
}

// ||1_{[N]}||_{U^2}^4 = (2N^3 + N)/3
inline double u2_indicator_closed_form(std::int64_t N) {
  const double n = static_cast<double>(N);
  return (2 * n * n * n + n) / 3;
}

// raw U^s power of the interval indicator, computed by the same FFT route
inline double indicator_raw_power(std::int64_t N, int s, unsigned threads = 1) {
  const auto ind = indicator_interval(N);
  switch (s) {
    case 1: return static_cast<double>(N) * static_cast<double>(N);
    case 2: return u2_fft(ind).raw_power;
    case 3: return u3_fft(ind, threads).raw_power;
  }
  throw std::invalid_argument("s must be 1, 2 or 3");
}

// ||f||_{U^s([N])} = ||f||_{U^s(Z)} / ||1_{[N]}||_{U^s(Z)}
inline GowersResult normalized_u(const WeightSeries& f, int s, std::int64_t N, unsigned threads = 1) {
  require(s >= 1 && s <= 3, "normalized_u supports s in {1, 2, 3}");
  require(N >= 1, "N must be >= 1");
  GowersResult r;
  switch (s) {
    case 1: {
      cplx t{};
      for (const auto& v : f.values()) t += v;
      r = detail::finish(1, std::norm(t));
      break;
    }
    case 2: r = u2_fft(f); break;
    default: r = u3_fft(f, threads); break;
  }
  const double den = indicator_raw_power(N, s, threads);
  r.normalized = std::pow(r.raw_power / den, 1.0 / static_cast<double>(1 << s));
  return r;
}

}  // namespace arith_lab
