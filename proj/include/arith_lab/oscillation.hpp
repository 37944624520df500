#pragma once

// r-variation, jump counts, dyadic martingale averages and Monte-Carlo
// Lepingle constants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "arith_lab/common.hpp"
#include "arith_lab/parallel.hpp"
#include "arith_lab/series.hpp"

namespace arith_lab {

inline constexpr std::size_t kVariationLengthCap = 5000;
inline constexpr std::size_t kTraceDimCap = 64;

// A family a_N indexed by increasing times, each value a vector in C^dim.
class Trace {
 public:
  Trace() = default;
  Trace(std::vector<std::int64_t> times, std::vector<cplx> values, std::size_t dim = 1)
      : times_(std::move(times)), values_(std::move(values)), dim_(dim) {
    require(dim_ >= 1 && dim_ <= kTraceDimCap, "trace dimension must be in [1, 64]");
    require(values_.size() == times_.size() * dim_, "trace times and values differ in length");
    for (std::size_t j = 1; j < times_.size(); ++j)
      require(times_[j - 1] < times_[j], "trace times must be strictly increasing");
  }

  static Trace from_real(const std::vector<double>& v) {
    std::vector<std::int64_t> t(v.size());
    std::vector<cplx> c(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      t[j] = static_cast<std::int64_t>(j);
      c[j] = v[j];
    }
    return {std::move(t), std::move(c)};
  }

  std::size_t size() const { return times_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<std::int64_t>& times() const { return times_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx value(std::size_t j, std::size_t comp = 0) const { return values_[j * dim_ + comp]; }

  // Euclidean distance between a_i and a_j
  double distance(std::size_t i, std::size_t j) const {
    double s = 0;
    for (std::size_t c = 0; c < dim_; ++c) s += std::norm(values_[i * dim_ + c] - values_[j * dim_ + c]);
    return std::sqrt(s);
  }

  Trace component(std::size_t comp) const {
    require(comp < dim_, "component out of range");
    std::vector<cplx> v(size());
    for (std::size_t j = 0; j < size(); ++j) v[j] = value(j, comp);
    return {times_, std::move(v)};
  }

 private:
  std::vector<std::int64_t> times_;
  std::vector<cplx> values_;
  std::size_t dim_ = 1;
};

namespace detail {

inline std::vector<double> pair_distances(const Trace& t) {
  const std::size_t m = t.size();
  std::vector<double> d(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) d[i * m + j] = d[j * m + i] = t.distance(i, j);
  return d;
}

// max over increasing chains of sum |a_{i+1} - a_i|^r, given pairwise distances
inline double variation_power(const std::vector<double>& dist, std::size_t m, double r) {
  std::vector<double> best(m, 0.0);
  double top = 0;
  for (std::size_t j = 1; j < m; ++j) {
    double b = 0;
    for (std::size_t i = 0; i < j; ++i) b = std::max(b, best[i] + std::pow(dist[i * m + j], r));
    best[j] = b;
    top = std::max(top, b);
  }
  return top;
}

inline std::int64_t longest_jump_chain(const std::vector<double>& dist, std::size_t m, double lambda) {
  std::vector<std::int64_t> cnt(m, 0);
  std::int64_t top = 0;
  for (std::size_t j = 1; j < m; ++j) {
    std::int64_t b = 0;
    for (std::size_t i = 0; i < j; ++i)
      if (dist[i * m + j] >= lambda) b = std::max(b, cnt[i] + 1);
    cnt[j] = b;
    top = std::max(top, b);
  }
  return top;
}

}  // namespace detail

// V^r = sup over increasing subsequences of (sum |a_{N_i} - a_{N_{i+1}}|^r)^{1/r}
inline double variation(const Trace& t, double r) {
  require(r >= 1, "variation needs r >= 1");
  if (t.size() > kVariationLengthCap) throw CapacityError("variation: trace longer than 5000");
  if (t.size() < 2) return 0;
  return std::pow(detail::variation_power(detail::pair_distances(t), t.size(), r), 1.0 / r);
}

// N_lambda: the largest K with N_0 < ... < N_K and |a_{N_i} - a_{N_{i-1}}| >= lambda.
inline std::int64_t jump_count(const Trace& t, double lambda) {
  require(lambda > 0, "jump_count needs lambda > 0");
  if (t.size() > kVariationLengthCap) throw CapacityError("jump_count: trace longer than 5000");
  if (t.size() < 2) return 0;
  return detail::longest_jump_chain(detail::pair_distances(t), t.size(), lambda);
}

// First-crossing scan: anchor at the current point and advance to the first
// later point at distance >= lambda. Not optimal in general.
inline std::int64_t jump_count_greedy(const Trace& t, double lambda) {
  require(lambda > 0, "jump_count needs lambda > 0");
  std::int64_t k = 0;
  std::size_t anchor = 0;
  for (std::size_t j = 1; j < t.size(); ++j) {
    if (t.distance(anchor, j) >= lambda) {
      ++k;
      anchor = j;
    }
  }
  return k;
}

// sup_{lambda > 0} lambda^r N_lambda. N_lambda only changes at pairwise
// distances, so the supremum is attained at one of them.
inline double jump_chain_sup(const Trace& t, double r) {
  require(r >= 1, "r must be >= 1");
  if (t.size() > kVariationLengthCap) throw CapacityError("jump_chain_sup: trace longer than 5000");
  const std::size_t m = t.size();
  if (m < 2) return 0;
  const auto dist = detail::pair_distances(t);
  std::vector<double> cand;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (dist[i * m + j] > 0) cand.push_back(dist[i * m + j]);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  double best = 0;
  for (double lam : cand)
    best = std::max(best, std::pow(lam, r) * static_cast<double>(detail::longest_jump_chain(dist, m, lam)));
  return best;
}

namespace detail {
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace detail

// E_k f = sum over aligned blocks I of length K 2^k of (avg_I f) 1_I. The
// output covers every block meeting the window of f.
inline WeightSeries dyadic_martingale(const WeightSeries& f, std::int64_t K, int k) {
  require(K >= 1, "K must be >= 1");
  require(k >= 0 && k < 40, "k must be in [0, 40)");
  const std::int64_t B = K << k;
  const std::int64_t lo = detail::floor_div(f.start(), B) * B;
  const std::int64_t hi = (detail::floor_div(f.end() - 1, B) + 1) * B;
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo));
  for (std::int64_t b = lo; b < hi; b += B) {
    cplx s{};
    for (std::int64_t n = b; n < b + B; ++n) s += f.at(n);
    const cplx avg = s / static_cast<double>(B);
    std::fill(out.begin() + (b - lo), out.begin() + (b - lo + B), avg);
  }
  return {"martingale", lo, std::move(out)};
}

struct LepingleResult {
  double r = 0;
  std::size_t trials = 0;
  std::size_t length = 0;
  double max_ratio = 0;       // max ||V^r(E_k f)||_2 / ||f||_2
  double mean_ratio = 0;
  double max_jump_ratio = 0;  // max sup_lambda ||lambda N_lambda^{1/2}||_2 / ||f||_2
};

namespace detail {

struct LepingleTrial {
  double var_ratio = 0;
  double jump_ratio = 0;
};

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One signal: even trials are random signs, odd trials Gaussian.
inline LepingleTrial lepingle_trial(std::size_t length, double r, std::uint64_t seed, bool gaussian) {
  std::mt19937_64 rng(seed);
  std::vector<double> f(length);
  if (gaussian) {
    std::normal_distribution<double> nd(0.0, 1.0);
    for (auto& v : f) v = nd(rng);
  } else {
    for (auto& v : f) v = (rng() >> 63) ? 1.0 : -1.0;
  }
  const int levels = floor_log2(length) + 1;
  // block averages per level, indexed by x
  std::vector<std::vector<double>> avg(static_cast<std::size_t>(levels), std::vector<double>(length));
  avg[0] = f;
  for (int k = 1; k < levels; ++k) {
    const std::size_t B = std::size_t{1} << k;
    for (std::size_t b = 0; b < length; b += B) {
      const double a = 0.5 * (avg[static_cast<std::size_t>(k - 1)][b] + avg[static_cast<std::size_t>(k - 1)][b + B / 2]);
      std::fill(avg[static_cast<std::size_t>(k)].begin() + static_cast<std::ptrdiff_t>(b),
                avg[static_cast<std::size_t>(k)].begin() + static_cast<std::ptrdiff_t>(b + B), a);
    }
  }
  double norm2 = 0;
  double sup_abs = 0;
  for (double v : f) {
    norm2 += v * v;
    sup_abs = std::max(sup_abs, std::abs(v));
  }
  constexpr int kLambdas = 24;
  std::vector<double> lambdas(kLambdas);
  for (int j = 0; j < kLambdas; ++j) lambdas[static_cast<std::size_t>(j)] = 2 * sup_abs * std::pow(2.0, -0.5 * j);

  const auto m = static_cast<std::size_t>(levels);
  std::vector<double> dist(m * m);
  double var_sum = 0;
  std::vector<double> jump_sum(kLambdas, 0.0);
  for (std::size_t x = 0; x < length; ++x) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) dist[i * m + j] = dist[j * m + i] = std::abs(avg[i][x] - avg[j][x]);
    const double vp = variation_power(dist, m, r);
    const double v = std::pow(vp, 1.0 / r);
    var_sum += v * v;
    for (int j = 0; j < kLambdas; ++j) {
      const double lam = lambdas[static_cast<std::size_t>(j)];
      jump_sum[static_cast<std::size_t>(j)] += lam * lam * static_cast<double>(longest_jump_chain(dist, m, lam));
    }
  }
  LepingleTrial t;
  const double fn = std::sqrt(norm2);
  if (fn == 0) return t;
  t.var_ratio = std::sqrt(var_sum) / fn;
  for (double s : jump_sum) t.jump_ratio = std::max(t.jump_ratio, std::sqrt(s) / fn);
  return t;
}

}  // namespace detail

inline LepingleResult lepingle_check(std::size_t trials, std::size_t length, double r, std::uint64_t seed,
                                     unsigned threads = 1) {
  require(r > 2, "lepingle_check needs r > 2");
  require(length >= 2 && (length & (length - 1)) == 0, "length must be a power of two >= 2");
  require(trials >= 1, "trials must be >= 1");
  std::vector<detail::LepingleTrial> out(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    out[t] = detail::lepingle_trial(length, r, detail::splitmix(seed ^ (0x51ed27ULL * (t + 1))), t % 2 == 1);
  });
  LepingleResult res;
  res.r = r;
  res.trials = trials;
  res.length = length;
  double sum = 0;
  for (const auto& t : out) {
    res.max_ratio = std::max(res.max_ratio, t.var_ratio);
    res.max_jump_ratio = std::max(res.max_jump_ratio, t.jump_ratio);
    sum += t.var_ratio;
  }
  res.mean_ratio = sum / static_cast<double>(trials);
  return res;
}

}  // namespace arith_lab
