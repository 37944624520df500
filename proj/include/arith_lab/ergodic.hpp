#pragma once

// Torus rotation and skew product on T and T^2, trigonometric-polynomial
// observables, weighted bilinear averages along orbits and their integer
// lattice model.
//
// Points of T are stored in 64-bit fixed point (x = X / 2^64), so orbits are
// exact mod 1 at that resolution and both maps are bit-exactly invertible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "arith_lab/common.hpp"
#include "arith_lab/oscillation.hpp"
#include "arith_lab/series.hpp"
#include "arith_lab/sieve.hpp"

namespace arith_lab {

using Fixed = std::uint64_t;

inline Fixed to_fixed(double x) {
  x -= std::floor(x);
  const long double scaled = static_cast<long double>(x) * 18446744073709551616.0L;
  if (scaled >= 18446744073709551616.0L) return 0;
  return static_cast<Fixed>(scaled);
}

inline double from_fixed(Fixed x) { return static_cast<double>(x) * 0x1p-64; }

struct TorusPoint {
  Fixed x = 0;
  Fixed y = 0;
  auto operator<=>(const TorusPoint&) const = default;
};

// Continued-fraction check: an alpha whose expansion terminates or hits a
// huge partial quotient within the first terms is treated as rational.
inline std::optional<std::int64_t> rational_denominator(double alpha, int depth = 24, double big = 1e8) {
  double x = alpha - std::floor(alpha);
  std::int64_t q_prev = 0, q = 1;  // convergent denominators q_{k-1}, q_k
  for (int j = 0; j < depth; ++j) {
    if (x < 1.0 / big) return q;
    const double inv = 1.0 / x;
    const double a = std::floor(inv);
    if (a > big) return q;
    const std::int64_t qn = static_cast<std::int64_t>(a) * q + q_prev;
    q_prev = q;
    q = qn;
    x = inv - a;
  }
  return std::nullopt;
}

class DynamicalSystem {
 public:
  enum class Kind { Rotation, Skew };

  static DynamicalSystem rotation(double alpha) { return {Kind::Rotation, alpha}; }
  static DynamicalSystem skew(double alpha) { return {Kind::Skew, alpha}; }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  Fixed alpha_fixed() const { return a_; }
  const char* name() const { return kind_ == Kind::Rotation ? "rotation" : "skew"; }

  TorusPoint step(TorusPoint p) const {
    if (kind_ == Kind::Skew) p.y += p.x;
    p.x += a_;
    return p;
  }

  TorusPoint inverse_step(TorusPoint p) const {
    p.x -= a_;
    if (kind_ == Kind::Skew) p.y -= p.x;
    return p;
  }

  // T^m for any integer m:
  // (x, y) -> (x + m alpha, y + m x + m(m-1)/2 alpha), all mod 2^64.
  TorusPoint power(TorusPoint p, std::int64_t m) const {
    const auto mm = static_cast<Fixed>(m);
    TorusPoint r;
    r.x = p.x + mm * a_;
    if (kind_ == Kind::Skew) {
      const __int128 tri = static_cast<__int128>(m) * (static_cast<__int128>(m) - 1) / 2;
      r.y = p.y + mm * p.x + static_cast<Fixed>(static_cast<unsigned __int128>(tri)) * a_;
    } else {
      r.y = p.y;
    }
    return r;
  }

 private:
  DynamicalSystem(Kind k, double alpha) : kind_(k), alpha_(alpha), a_(to_fixed(alpha)) {}
  Kind kind_;
  double alpha_;
  Fixed a_;
};

// f(x, y) = sum_j amp_j e(kx_j x + ky_j y)
class Observable {
 public:
  struct Term {
    std::int64_t kx = 0;
    std::int64_t ky = 0;
    cplx amp{1.0, 0.0};
  };

  Observable() = default;
  explicit Observable(std::vector<Term> terms) : terms_(std::move(terms)) {}

  static Observable constant(cplx c = 1.0) { return Observable({{0, 0, c}}); }
  static Observable character(std::int64_t kx, std::int64_t ky = 0) { return Observable({{kx, ky, 1.0}}); }

  const std::vector<Term>& terms() const { return terms_; }

  double l1_bound() const {
    double s = 0;
    for (const auto& t : terms_) s += std::abs(t.amp);
    return s;
  }

  cplx operator()(TorusPoint p) const {
    cplx s{};
    for (const auto& t : terms_) {
      const Fixed ph = static_cast<Fixed>(t.kx) * p.x + static_cast<Fixed>(t.ky) * p.y;
      s += t.amp * expi(from_fixed(ph));
    }
    return s;
  }

 private:
  std::vector<Term> terms_;
};

// (1/N) sum_{n=1}^N w(n) f(T^{an} x0) g(T^{bn} x0)
inline cplx bilinear_average(const WeightSeries& w, const DynamicalSystem& T, const Observable& f, const Observable& g,
                             TorusPoint x0, std::int64_t N, std::int64_t a = 1, std::int64_t b = 2) {
  require(N >= 1, "N must be >= 1");
  require(w.start() <= 1 && w.end() > N, "weight window must cover [1, N]");
  TorusPoint pa = T.power(x0, a), pb = T.power(x0, b);
  cplx s{};
  for (std::int64_t n = 1; n <= N; ++n) {
    s += w[n] * f(pa) * g(pb);
    pa = T.power(pa, a);
    pb = T.power(pb, b);
  }
  return s / static_cast<double>(N);
}

// (1/N) sum_{n=1}^N w(n) F(x - n) G(x + n)
inline cplx integer_model_average(const WeightSeries& F, const WeightSeries& G, const WeightSeries& w,
                                  std::int64_t x, std::int64_t N) {
  require(N >= 1, "N must be >= 1");
  require(F.start() <= x - N && F.end() > x - 1, "F window must cover [x - N, x - 1]");
  require(G.start() <= x + 1 && G.end() > x + N, "G window must cover [x + 1, x + N]");
  require(w.start() <= 1 && w.end() > N, "weight window must cover [1, N]");
  cplx s{};
  for (std::int64_t n = 1; n <= N; ++n) s += w[n] * F[x - n] * G[x + n];
  return s / static_cast<double>(N);
}

// (e(theta n) F(n)) on F's window, theta = num/den
inline WeightSeries modulate(const WeightSeries& F, std::int64_t num, std::int64_t den) {
  require(den >= 1, "den must be >= 1");
  WeightSeries out = F;
  for (std::int64_t n = F.start(); n < F.end(); ++n) {
    const auto r = static_cast<std::int64_t>((static_cast<__int128>(num) * n) % den);
    out[n] = expi_frac(r, den) * F[n];
  }
  return out;
}

// N_j = floor(base^j), deduplicated, up to N_max
inline std::vector<std::int64_t> lacunary_grid(std::int64_t N_max, double base = std::pow(2.0, 0.25)) {
  require(base > 1, "lacunary base must exceed 1");
  std::vector<std::int64_t> out;
  for (int j = 0;; ++j) {
    const auto v = static_cast<std::int64_t>(std::floor(std::pow(base, j) + 1e-9));
    if (v > N_max) break;
    if (v >= 1 && (out.empty() || out.back() != v)) out.push_back(v);
  }
  return out;
}

// K 2^j up to N_max
inline std::vector<std::int64_t> dyadic_grid(std::int64_t K, std::int64_t N_max) {
  require(K >= 1, "K must be >= 1");
  std::vector<std::int64_t> out;
  for (std::int64_t v = K; v <= N_max; v *= 2) out.push_back(v);
  return out;
}

struct AverageTrace {
  Trace trace;
};

// B_N along the grid from one prefix sum of orbit products: O(max N).
inline AverageTrace average_trace(const WeightSeries& w, const DynamicalSystem& T, const Observable& f,
                                  const Observable& g, TorusPoint x0, const std::vector<std::int64_t>& grid,
                                  std::int64_t a = 1, std::int64_t b = 2) {
  require(!grid.empty(), "time grid must be nonempty");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    require(grid[j] >= 1, "times must be >= 1");
    if (j > 0) require(grid[j] > grid[j - 1], "time grid must be increasing");
  }
  const std::int64_t N = grid.back();
  require(w.start() <= 1 && w.end() > N, "weight window must cover the grid");
  std::vector<cplx> vals;
  vals.reserve(grid.size());
  TorusPoint pa = T.power(x0, a), pb = T.power(x0, b);
  cplx s{};
  std::size_t next = 0;
  for (std::int64_t n = 1; n <= N; ++n) {
    s += w[n] * f(pa) * g(pb);
    pa = T.power(pa, a);
    pb = T.power(pb, b);
    if (n == grid[next]) {
      vals.push_back(s / static_cast<double>(n));
      ++next;
    }
  }
  return {Trace(grid, std::move(vals))};
}

// (1/N) sum_{n=1}^N e(k1 x_n + k2 y_n) along the orbit of x0
inline cplx weyl_sum(const DynamicalSystem& T, TorusPoint x0, std::int64_t k1, std::int64_t k2, std::int64_t N) {
  const Observable e({{k1, k2, 1.0}});
  cplx s{};
  TorusPoint p = x0;
  for (std::int64_t n = 1; n <= N; ++n) {
    p = T.step(p);
    s += e(p);
  }
  return s / static_cast<double>(N);
}

inline TorusPoint random_point(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  TorusPoint p;
  p.x = rng();
  p.y = rng();
  return p;
}

struct PrimeMangoldt {
  cplx lhs;  // (1/pi(M)) sum_{p <= M} a_p
  cplx rhs;  // (1/M) sum_{n <= M} Lambda(n) a_n
  double gap = 0;
};

inline PrimeMangoldt prime_vs_mangoldt(const std::function<cplx(std::int64_t)>& a, const FactorSieve& sieve,
                                       std::int64_t M) {
  require(M >= 2 && M <= sieve.limit(), "need 2 <= M <= sieve limit");
  const auto lam = von_mangoldt_series(sieve, M);
  cplx ps{}, ls{};
  std::int64_t count = 0;
  for (std::int64_t n = 2; n <= M; ++n) {
    const double l = lam[n].real();
    if (l == 0) continue;
    const cplx v = a(n);
    ls += l * v;
    if (sieve.is_prime(n)) {
      ps += v;
      ++count;
    }
  }
  PrimeMangoldt r;
  r.lhs = ps / static_cast<double>(count);
  r.rhs = ls / static_cast<double>(M);
  r.gap = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace arith_lab
