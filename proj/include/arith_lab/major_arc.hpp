#pragma once

// Major-arc models w_Q(n) = sum_{a/q} S(a/q) e(na/q) for the von Mangoldt,
// divisor and sum-of-two-squares weights, plus the identities relating
// them to Ramanujan sums.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "arith_lab/arcs.hpp"
#include "arith_lab/common.hpp"
#include "arith_lab/series.hpp"
#include "arith_lab/sieve.hpp"

namespace arith_lab {

enum class ModelKind { Mangoldt, Divisor, TwoSquares };

struct ArcModel {
  ModelKind kind = ModelKind::Mangoldt;
  double scale_N = 0;  // evaluation scale, Divisor only

  static ArcModel mangoldt() { return {ModelKind::Mangoldt, 0}; }
  static ArcModel two_squares() { return {ModelKind::TwoSquares, 0}; }
  static ArcModel divisor(double N) {
    require(N >= 3, "divisor model needs N >= 3");
    return {ModelKind::Divisor, N};
  }

  const char* name() const {
    switch (kind) {
      case ModelKind::Mangoldt: return "mangoldt";
      case ModelKind::Divisor: return "divisor";
      case ModelKind::TwoSquares: return "two_squares";
    }
    return "?";
  }

  bool same_scale(const ArcModel& o) const { return kind == o.kind && scale_N == o.scale_N; }
};

// S_tau(a/q; N) = (1/q)(log N + 2 gamma - 1 - 2 log q), independent of a.
inline double divisor_coefficient(std::int64_t q, double N) {
  const double qd = static_cast<double>(q);
  return (std::log(N) + 2 * kEulerGamma - 1 - 2 * std::log(qd)) / qd;
}

inline cplx coefficient(const ArcModel& model, std::int64_t a, std::int64_t q) {
  require(q >= 1, "q must be >= 1");
  require(arith::gcd(a, q) == 1, "coefficient needs gcd(a, q) = 1");
  switch (model.kind) {
    case ModelKind::Mangoldt:
      return static_cast<double>(arith::mobius(q)) / static_cast<double>(arith::totient(q));
    case ModelKind::Divisor:
      return divisor_coefficient(q, model.scale_N);
    case ModelKind::TwoSquares:
      return gauss_sum_squared(a, q);
  }
  return {};
}

enum class ArcMode { Slice, Cumulative, DyadicSlice };

// A major-arc weight with its coefficient table, keyed by reduced fraction
// in canonical (q, a) order.
class MajorArcWeight {
 public:
  MajorArcWeight(ArcModel model, std::int64_t Q, ArcMode mode, int i = 0) : model_(model), Q_(Q), mode_(mode), i_(i) {
    require(Q >= 1, "Q must be >= 1");
    switch (mode) {
      case ArcMode::Slice: fractions_ = farey_slice(Q).fractions; break;
      case ArcMode::Cumulative: fractions_ = fractions_upto(Q); break;
      case ArcMode::DyadicSlice: fractions_ = farey_dyadic_slice(Q, i).fractions; break;
    }
    table_.reserve(fractions_.size());
    for (const auto& f : fractions_) table_.push_back(coefficient(model_, f.a, f.q));
  }

  const ArcModel& model() const { return model_; }
  std::int64_t Q() const { return Q_; }
  ArcMode mode() const { return mode_; }
  int i() const { return i_; }
  const std::vector<ReducedFraction>& fractions() const { return fractions_; }
  const std::vector<cplx>& coefficients() const { return table_; }

  std::int64_t max_denominator() const {
    std::int64_t m = 1;
    for (const auto& f : fractions_) m = std::max(m, f.q);
    return m;
  }

  // lcm of the denominators actually present; the weight is periodic mod it
  BigInt period() const {
    std::vector<std::int64_t> qs;
    for (const auto& f : fractions_) qs.push_back(f.q);
    return detail::lcm_of(qs, kDefaultLcmDigitCap);
  }

  // w(n) on [lo, hi), phases read from per-q root-of-unity tables.
  WeightSeries series(std::int64_t lo, std::int64_t hi) const {
    require(hi > lo, "empty range");
    std::map<std::int64_t, std::vector<cplx>> roots;
    for (const auto& f : fractions_) {
      auto& r = roots[f.q];
      if (r.empty()) {
        r.resize(static_cast<std::size_t>(f.q));
        for (std::int64_t k = 0; k < f.q; ++k) r[static_cast<std::size_t>(k)] = expi_frac(k, f.q);
      }
    }
    std::vector<const std::vector<cplx>*> rp;
    rp.reserve(fractions_.size());
    for (const auto& f : fractions_) rp.push_back(&roots[f.q]);
    std::vector<cplx> out(static_cast<std::size_t>(hi - lo));
    for (std::int64_t n = lo; n < hi; ++n) {
      cplx s{};
      for (std::size_t j = 0; j < fractions_.size(); ++j) {
        const auto& f = fractions_[j];
        std::int64_t idx = (n % f.q) * f.a % f.q;
        if (idx < 0) idx += f.q;
        s += table_[j] * (*rp[j])[static_cast<std::size_t>(idx)];
      }
      out[static_cast<std::size_t>(n - lo)] = s;
    }
    return {std::string(model_.name()) + "_arc_Q" + std::to_string(Q_), lo, std::move(out)};
  }

 private:
  ArcModel model_;
  std::int64_t Q_;
  ArcMode mode_;
  int i_;
  std::vector<ReducedFraction> fractions_;
  std::vector<cplx> table_;
};

inline WeightSeries weight_series(const MajorArcWeight& w, std::int64_t N) { return w.series(1, N + 1); }

// Sum of two weights evaluated on the same range; divisor models must share
// their evaluation scale.
inline WeightSeries sum_weights(const MajorArcWeight& x, const MajorArcWeight& y, std::int64_t lo, std::int64_t hi) {
  require(x.model().same_scale(y.model()), "refusing to compose major-arc weights of different models/scales");
  auto a = x.series(lo, hi);
  const auto b = y.series(lo, hi);
  for (std::size_t k = 0; k < a.size(); ++k) a.values()[k] += b.values()[k];
  return a;
}

// r_2(n)/pi on [1, N], the normalised sum-of-two-squares weight.
inline WeightSeries r2_over_pi_series(std::int64_t N) {
  const auto r = two_squares_counts(N);
  std::vector<cplx> v(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) v[static_cast<std::size_t>(n - 1)] = static_cast<double>(r[n]) / std::numbers::pi;
  return {"r2_over_pi", 1, std::move(v)};
}

// Type-I form of tau_{<=Q;N}: sum_{d | n, d <= Q} alpha_d with
// alpha_d = d * sum_{q <= Q/d} S_tau(1/(qd); N) mu(q). Substituting q -> qd
// in sum_q S_tau(1/q) sum_{d | (q, n)} d mu(q/d) puts no coprimality
// condition on (d, q).
class TauTypeI {
 public:
  TauTypeI(std::int64_t Q, double N) : Q_(Q), N_(N), alpha_(static_cast<std::size_t>(Q) + 1, 0.0) {
    require(Q >= 1, "Q must be >= 1");
    require(N >= 3, "N must be >= 3");
    require(static_cast<double>(Q) <= std::pow(N, 2.0 / 3.0) + 1e-9, "tau_type1 needs Q <= N^(2/3)");
    for (std::int64_t d = 1; d <= Q; ++d) {
      double s = 0;
      for (std::int64_t q = 1; q <= Q / d; ++q) s += divisor_coefficient(q * d, N) * static_cast<double>(arith::mobius(q));
      alpha_[static_cast<std::size_t>(d)] = static_cast<double>(d) * s;
    }
  }

  double alpha(std::int64_t d) const { return d >= 1 && d <= Q_ ? alpha_[static_cast<std::size_t>(d)] : 0.0; }

  double operator()(std::int64_t n) const {
    double s = 0;
    for (std::int64_t d = 1; d <= Q_; ++d)
      if (n % d == 0) s += alpha_[static_cast<std::size_t>(d)];
    return s;
  }

 private:
  std::int64_t Q_;
  double N_;
  std::vector<double> alpha_;
};

inline double tau_type1(std::int64_t n, std::int64_t Q, double N) { return TauTypeI(Q, N)(n); }

// tau_{<=Q;N}(n) = sum_{q <= Q} S_tau(1/q; N) c_q(n)
inline double tau_ramanujan_form(std::int64_t n, std::int64_t Q, double N) {
  double s = 0;
  for (std::int64_t q = 1; q <= Q; ++q) s += divisor_coefficient(q, N) * static_cast<double>(ramanujan_sum(q, n));
  return s;
}

struct ArcSplit {
  WeightSeries odd;        // w_{<=Q;1}: odd q via Ramanujan sums
  WeightSeries four_mult;  // w_{<=Q;2}: 4 | q via -i c_q(n + q/4)
};

// Splits the cumulative two-squares major-arc weight on [lo, hi) by the
// residue of q mod 4 (q = 2 mod 4 contributes nothing).
inline ArcSplit r2_arc_split(std::int64_t Q, std::int64_t lo, std::int64_t hi) {
  require(Q >= 1, "Q must be >= 1");
  require(hi > lo, "empty range");
  std::vector<cplx> w1(static_cast<std::size_t>(hi - lo)), w2(static_cast<std::size_t>(hi - lo));
  for (std::int64_t n = lo; n < hi; ++n) {
    double s1 = 0;
    cplx s2{};
    for (std::int64_t q = 1; q <= Q; ++q) {
      const double qd = static_cast<double>(q);
      if (q % 2 == 1) {
        const double sgn = ((q - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        s1 += sgn / qd * static_cast<double>(ramanujan_sum(q, n));
      } else if (q % 4 == 0) {
        // sum_{(a,q)=1} (-1)^{(a-1)/2} e(na/q) = -i c_q(n + q/4)
        const cplx inner = cplx(0, -1) * static_cast<double>(ramanujan_sum(q, n + q / 4));
        s2 += -cplx(0, 2.0 / qd) * inner;
      }
    }
    w1[static_cast<std::size_t>(n - lo)] = s1;
    w2[static_cast<std::size_t>(n - lo)] = s2;
  }
  return {WeightSeries("r2_arc_odd", lo, std::move(w1)), WeightSeries("r2_arc_four", lo, std::move(w2))};
}

struct ApDivisorSum {
  double exact = 0;
  double voronoi_main = 0;
};

// main term (N/q) sum_{d|q} (c_d(a)/d)(log N + 2 gamma - 1 - 2 log d)
inline double voronoi_main_term(std::int64_t N, std::int64_t a, std::int64_t q) {
  const double L = std::log(static_cast<double>(N));
  double s = 0;
  for (std::int64_t d : arith::divisors(q)) {
    const double dd = static_cast<double>(d);
    s += static_cast<double>(ramanujan_sum(d, a)) / dd * (L + 2 * kEulerGamma - 1 - 2 * std::log(dd));
  }
  return static_cast<double>(N) / static_cast<double>(q) * s;
}

// Exact AP sum of tau read from a precomputed divisor series on [1, >= N].
inline ApDivisorSum ap_divisor_sum(const WeightSeries& tau, std::int64_t N, std::int64_t a, std::int64_t q) {
  require(q >= 1 && a >= 1 && a <= q, "need 1 <= a <= q");
  require(tau.start() <= 1 && tau.end() > N, "divisor series does not cover [1, N]");
  double ex = 0;
  for (std::int64_t n = a; n <= N; n += q) ex += tau.at(n).real();
  return {ex, voronoi_main_term(N, a, q)};
}

inline ApDivisorSum ap_divisor_sum(std::int64_t N, std::int64_t a, std::int64_t q) {
  return ap_divisor_sum(divisor_series(N), N, a, q);
}

// (1/|window|) sum_n w(n) e(-na/q) over the series window.
inline cplx recover_coefficient(const WeightSeries& w, std::int64_t a, std::int64_t q) {
  require(q >= 1, "q must be >= 1");
  require(arith::gcd(a, q) == 1, "recover_coefficient needs gcd(a, q) = 1");
  require(!w.empty(), "empty series");
  std::vector<cplx> roots(static_cast<std::size_t>(q));
  for (std::int64_t k = 0; k < q; ++k) roots[static_cast<std::size_t>(k)] = expi_frac(-k, q);
  cplx s{};
  for (std::size_t k = 0; k < w.size(); ++k) {
    const std::int64_t n = w.start() + static_cast<std::int64_t>(k);
    std::int64_t idx = (n % q) * (a % q) % q;
    if (idx < 0) idx += q;
    s += w.values()[k] * roots[static_cast<std::size_t>(idx)];
  }
  return s / static_cast<double>(w.size());
}

// (1/(N log N)) sum_{n <= N} |tau_{<=Q;N}(n) - log N tau_{<=Q}(n)|.
// The difference is sum_{q <= Q} (1/q)(2 gamma - 1 - 2 log q) c_q(n), which
// only depends on n mod q.
inline double tau_discrepancy(std::int64_t N, std::int64_t Q) {
  require(N >= 3 && Q >= 1, "need N >= 3, Q >= 1");
  std::vector<std::vector<double>> tab(static_cast<std::size_t>(Q) + 1);
  for (std::int64_t q = 1; q <= Q; ++q) {
    const double coef = (2 * kEulerGamma - 1 - 2 * std::log(static_cast<double>(q))) / static_cast<double>(q);
    tab[q].resize(static_cast<std::size_t>(q));
    for (std::int64_t r = 0; r < q; ++r) tab[q][static_cast<std::size_t>(r)] = coef * static_cast<double>(ramanujan_sum(q, r));
  }
  double acc = 0;
  for (std::int64_t n = 1; n <= N; ++n) {
    double d = 0;
    for (std::int64_t q = 1; q <= Q; ++q) d += tab[q][static_cast<std::size_t>(n % q)];
    acc += std::abs(d);
  }
  const double Nd = static_cast<double>(N);
  return acc / (Nd * std::log(Nd));
}

struct MomentResult {
  double value = 0;
  bool full_period = true;  // false when the window length is not a multiple of the period
};

// E_{n in window} |w(n)|^{2k}
inline MomentResult moment(const WeightSeries& w, int k, const std::optional<BigInt>& period = std::nullopt) {
  require(k >= 1, "k must be >= 1");
  require(!w.empty(), "empty series");
  double s = 0;
  for (const auto& v : w.values()) s += std::pow(std::norm(v), k);
  MomentResult r;
  r.value = s / static_cast<double>(w.size());
  if (period) r.full_period = (BigInt(w.size()) % *period) == 0;
  return r;
}

// sum over the table of |S(a/q)|^2, the Parseval value of the k = 1 moment
inline double coefficient_energy(const MajorArcWeight& w) {
  double s = 0;
  for (const auto& c : w.coefficients()) s += std::norm(c);
  return s;
}

}  // namespace arith_lab
