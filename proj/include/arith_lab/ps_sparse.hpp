#pragma once

// Piatetski-Shapiro sequences N_c = {floor(k^c)}, the balanced weight
// W_c(n) = (1 - c n^{1-1/c} 1_{N_c}(n)) 1_{(N/2, N]}(n), and Fourier-L^1
// statistics of its first differences.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "arith_lab/common.hpp"
#include "arith_lab/fft.hpp"
#include "arith_lab/gowers.hpp"
#include "arith_lab/parallel.hpp"
#include "arith_lab/series.hpp"

namespace arith_lab {

using HighFloat = boost::multiprecision::cpp_bin_float_100;

namespace detail {

// c = num / 2^exp exactly (every finite double is a dyadic rational)
inline std::pair<std::int64_t, int> dyadic_form(double c) {
  int e = 0;
  double m = c;
  while (m != std::floor(m) && e < 1100) {
    m *= 2;
    ++e;
  }
  auto num = static_cast<std::int64_t>(m);
  while (e > 0 && num % 2 == 0) {
    num /= 2;
    --e;
  }
  return {num, e};
}

// floor(k^c) decided exactly. The long double power settles all cases more
// than 1e-9 (relative) away from an integer; the rest are resolved at 100
// digits and, when k^c lands on an integer to that precision, by comparing
// k^num against m^(2^exp) in exact integers.
inline std::int64_t exact_floor_pow(std::int64_t k, double c) {
  const long double v = std::pow(static_cast<long double>(k), static_cast<long double>(c));
  const long double fl = std::floor(v);
  const long double frac = v - fl;
  const long double guard = 1e-9L * std::max<long double>(1.0L, v);
  if (frac > guard && 1.0L - frac > guard) return static_cast<std::int64_t>(fl);

  const HighFloat hp = boost::multiprecision::pow(HighFloat(k), HighFloat(c));
  const HighFloat near = boost::multiprecision::round(hp);
  if (boost::multiprecision::abs(hp - near) > HighFloat("1e-80")) {
    return static_cast<std::int64_t>(boost::multiprecision::floor(hp));
  }
  const auto m0 = static_cast<std::int64_t>(near);
  const auto [num, e] = dyadic_form(c);
  if (e <= 12 && num <= 4096) {
    using boost::multiprecision::cpp_int;
    // k^c >= m0  <=>  k^num >= m0^(2^e)
    const cpp_int lhs = boost::multiprecision::pow(cpp_int(k), static_cast<unsigned>(num));
    const cpp_int rhs = boost::multiprecision::pow(cpp_int(m0), 1u << e);
    return lhs >= rhs ? m0 : m0 - 1;
  }
  return hp >= near ? m0 : m0 - 1;
}

}  // namespace detail

struct PSSequence {
  double c = 1;
  std::int64_t limit = 0;
  std::vector<std::int64_t> members;     // sorted, strictly increasing
  std::vector<std::int64_t> preimages;   // members[j] = floor(preimages[j]^c)
};

inline PSSequence ps_members(double c, std::int64_t N) {
  require(c >= 1, "ps_members needs c >= 1");
  require(N >= 1, "N must be >= 1");
  PSSequence s;
  s.c = c;
  s.limit = N;
  for (std::int64_t k = 1;; ++k) {
    const std::int64_t m = detail::exact_floor_pow(k, c);
    if (m > N) break;
    s.members.push_back(m);
    s.preimages.push_back(k);
  }
  return s;
}

struct SparseWeight {
  double c = 1;
  std::int64_t N = 0;
  WeightSeries values;  // on (N/2, N]
};

inline SparseWeight w_c_series(double c, std::int64_t N) {
  require(N >= 2, "N must be >= 2");
  const auto ps = ps_members(c, N);
  const std::int64_t lo = N / 2 + 1;
  std::vector<cplx> v(static_cast<std::size_t>(N - lo + 1), cplx(1.0, 0.0));
  for (std::int64_t m : ps.members) {
    if (m < lo) continue;
    const double md = static_cast<double>(m);
    v[static_cast<std::size_t>(m - lo)] = 1.0 - c * std::pow(md, 1.0 - 1.0 / c);
  }
  return {c, N, WeightSeries("W_c", lo, std::move(v))};
}

struct FourierL1 {
  double l1 = 0;            // Riemann sum of |F(Delta_h W)| on the grid
  double grid_spacing = 0;  // 1 / grid size
  double l2 = 0;            // ||Delta_h W||_{l^2}, the Plancherel bound
  std::size_t support = 0;
};

// ||F_Z(Delta_h W)||_{L^1(T)} by zero-padded FFT on a power-of-two grid of
// at least oversample * support points.
inline FourierL1 delta_h_fourier_l1(const WeightSeries& W, std::int64_t h, int oversample = 8) {
  require(oversample >= 8, "oversample must be >= 8");
  const auto d = difference(W, h);
  FourierL1 r;
  r.support = d.size();
  if (d.empty()) {
    r.grid_spacing = 1.0;
    return r;
  }
  const std::size_t M = next_pow2(static_cast<std::size_t>(oversample) * d.size());
  std::vector<cplx> buf(M);
  std::copy(d.values().begin(), d.values().end(), buf.begin());
  fft::forward(buf);
  double s = 0;
  for (const auto& v : buf) s += std::abs(v);
  r.l1 = s / static_cast<double>(M);
  r.grid_spacing = 1.0 / static_cast<double>(M);
  r.l2 = std::sqrt(d.l2_norm_sq());
  return r;
}

struct TechRow {
  std::int64_t h = 0;
  double l1_norm = 0;
  double exponent = 0;  // log_N(l1); -inf when the norm vanishes
  double l2_bound = 0;
};

struct TechStats {
  double c = 1;
  std::int64_t N = 0;
  double eps_prime = 0.05;
  std::vector<TechRow> rows;
  double max_exponent = -std::numeric_limits<double>::infinity();
  double bad_fraction = 0;  // share of sampled h with l1 > N^{1/2 - eps'}
};

// Sampled h: a deterministic stride over [1, N] (half the budget) plus
// seeded uniform draws, deduplicated and sorted.
inline std::vector<std::int64_t> sample_shifts(std::int64_t N, std::size_t count, std::uint64_t seed) {
  std::set<std::int64_t> hs;
  const std::size_t stride_count = std::max<std::size_t>(1, count / 2);
  for (std::size_t j = 0; j < stride_count; ++j)
    hs.insert(1 + static_cast<std::int64_t>(j) * N / static_cast<std::int64_t>(stride_count));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(1, N);
  std::size_t guard = 0;
  while (hs.size() < count && guard++ < 64 * count) hs.insert(dist(rng));
  return {hs.begin(), hs.end()};
}

inline TechStats tech_lemma_stats(double c, int log2N, std::size_t h_samples = 256, std::uint64_t seed = 1,
                                  double eps_prime = 0.05, int oversample = 8, unsigned threads = 1) {
  require(log2N >= 2 && log2N <= 16, "tech_lemma_stats needs 2 <= log2N <= 16");
  const std::int64_t N = std::int64_t{1} << log2N;
  const auto W = w_c_series(c, N);
  const auto hs = sample_shifts(N, h_samples, seed);
  TechStats st;
  st.c = c;
  st.N = N;
  st.eps_prime = eps_prime;
  st.rows.resize(hs.size());
  const double logN = std::log(static_cast<double>(N));
  parallel_for(hs.size(), threads, [&](std::size_t j) {
    const auto r = delta_h_fourier_l1(W.values, hs[j], oversample);
    const double ex = r.l1 > 0 ? std::log(r.l1) / logN : -std::numeric_limits<double>::infinity();
    st.rows[j] = {hs[j], r.l1, ex, r.l2};
  });
  const double threshold = std::pow(static_cast<double>(N), 0.5 - eps_prime);
  std::size_t bad = 0;
  for (const auto& row : st.rows) {
    st.max_exponent = std::max(st.max_exponent, row.exponent);
    if (row.l1_norm > threshold) ++bad;
  }
  st.bad_fraction = st.rows.empty() ? 0.0 : static_cast<double>(bad) / static_cast<double>(st.rows.size());
  return st;
}

struct ReparamResult {
  double c = 1;
  std::int64_t N = 0;
  cplx lhs;  // sparse average over N_c cap [1, N]
  cplx rhs;  // (1/N) sum c n^{1-1/c} a_n 1_{N_c}(n)
  double difference = 0;
};

inline ReparamResult reparam_check(const std::function<cplx(std::int64_t)>& a, double c, std::int64_t N) {
  require(N >= 1, "N must be >= 1");
  const auto ps = ps_members(c, N);
  cplx sparse{}, weighted{};
  for (std::int64_t m : ps.members) {
    const cplx v = a(m);
    sparse += v;
    weighted += c * std::pow(static_cast<double>(m), 1.0 - 1.0 / c) * v;
  }
  ReparamResult r;
  r.c = c;
  r.N = N;
  r.lhs = ps.members.empty() ? cplx{} : sparse / static_cast<double>(ps.members.size());
  r.rhs = weighted / static_cast<double>(N);
  r.difference = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace arith_lab
