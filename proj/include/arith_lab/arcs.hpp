#pragma once

// Exact rational frequency sets Gamma_Q = {a/q reduced : Q/2 < q <= Q} and
// their 2-adic slices, with lcm data, Ramanujan and quadratic Gauss sums,
// and the sumset multiplicity counter D_{(m,n)}.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "arith_lab/common.hpp"
#include "arith_lab/sieve.hpp"

namespace arith_lab {

using BigInt = boost::multiprecision::cpp_int;

struct ReducedFraction {
  std::int64_t a = 0;
  std::int64_t q = 1;

  ReducedFraction() = default;
  ReducedFraction(std::int64_t num, std::int64_t den) : a(num), q(den) {
    require(q >= 1, "fraction denominator must be positive");
    require(a >= 0 && a < q, "fraction numerator must lie in [0, q)");
    require(arith::gcd(a, q) == 1, "fraction must be reduced");
  }

  double value() const { return static_cast<double>(a) / static_cast<double>(q); }
  auto operator<=>(const ReducedFraction&) const = default;
};

// A rational number reduced mod 1: num/den with 0 <= num < den, gcd = 1.
// Arithmetic is carried out in 128 bits and refuses to overflow.
class Rational01 {
 public:
  Rational01() = default;
  Rational01(std::int64_t num, std::int64_t den) { assign(num, den); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // m * this + n * other, reduced mod 1
  static Rational01 combine(std::int64_t m, const Rational01& x, std::int64_t n, const Rational01& y) {
    using i128 = __int128;
    const std::int64_t g = arith::gcd(x.den_, y.den_);
    const i128 l = static_cast<i128>(x.den_ / g) * y.den_;
    const i128 lim = static_cast<i128>(INT64_MAX);
    if (l > lim) throw CapacityError("rational denominator overflow");
    const i128 nx = static_cast<i128>(m) * x.num_ * (y.den_ / g);
    const i128 ny = static_cast<i128>(n) * y.num_ * (x.den_ / g);
    i128 s = (nx + ny) % l;
    if (s < 0) s += l;
    Rational01 r;
    r.assign128(s, l);
    return r;
  }

  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  auto operator<=>(const Rational01&) const = default;

 private:
  void assign(std::int64_t num, std::int64_t den) {
    require(den >= 1, "denominator must be positive");
    assign128(num, den);
  }
  void assign128(__int128 num, __int128 den) {
    num %= den;
    if (num < 0) num += den;
    __int128 a = num, b = den;
    while (b) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    num_ = static_cast<std::int64_t>(num / a);
    den_ = static_cast<std::int64_t>(den / a);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct Rational01Hash {
  std::size_t operator()(const Rational01& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num() * 1000003 ^ r.den());
  }
};

inline constexpr std::size_t kDefaultLcmDigitCap = 4096;

struct FareySlice {
  std::int64_t Q = 1;
  std::vector<ReducedFraction> fractions;  // q ascending, then a ascending
  BigInt lcm = 1;
};

struct DyadicFareySlice {
  std::int64_t Q = 1;
  int i = 0;
  std::vector<ReducedFraction> fractions;
  BigInt lcm = 1;
};

namespace detail {

inline int two_adic(std::int64_t q) {
  int v = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++v;
  }
  return v;
}

inline BigInt lcm_of(const std::vector<std::int64_t>& qs, std::size_t digit_cap) {
  const BigInt bound = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digit_cap));
  BigInt l = 1;
  for (std::int64_t q : qs) {
    const BigInt bq = q;
    l = l / boost::multiprecision::gcd(l, bq) * bq;
    if (l >= bound)
      throw CapacityError("lcm exceeds " + std::to_string(digit_cap) + " decimal digits");
  }
  return l;
}

template <class Pred>
std::vector<ReducedFraction> enumerate(std::int64_t qlo, std::int64_t qhi, Pred keep_q) {
  std::vector<ReducedFraction> out;
  for (std::int64_t q = qlo; q <= qhi; ++q) {
    if (!keep_q(q)) continue;
    for (std::int64_t a = 0; a < q; ++a)
      if (arith::gcd(a, q) == 1) out.push_back(ReducedFraction(a, q));
  }
  return out;
}

}  // namespace detail

inline FareySlice farey_slice(std::int64_t Q, std::size_t digit_cap = kDefaultLcmDigitCap) {
  require(Q >= 1, "Q must be >= 1");
  FareySlice s;
  s.Q = Q;
  const std::int64_t qlo = Q / 2 + 1;  // Q/2 < q
  std::vector<std::int64_t> qs;
  for (std::int64_t q = qlo; q <= Q; ++q) qs.push_back(q);
  s.lcm = detail::lcm_of(qs, digit_cap);
  s.fractions = detail::enumerate(qlo, Q, [](std::int64_t) { return true; });
  return s;
}

inline DyadicFareySlice farey_dyadic_slice(std::int64_t Q, int i, std::size_t digit_cap = kDefaultLcmDigitCap) {
  require(Q >= 1, "Q must be >= 1");
  require(i >= 0 && i <= floor_log2(static_cast<std::uint64_t>(Q)), "need 0 <= i <= log2 Q");
  DyadicFareySlice s;
  s.Q = Q;
  s.i = i;
  const std::int64_t qlo = Q / 2 + 1;
  auto keep = [i](std::int64_t q) { return detail::two_adic(q) == i; };
  std::vector<std::int64_t> qs;
  for (std::int64_t q = qlo; q <= Q; ++q)
    if (keep(q)) qs.push_back(q);
  s.lcm = detail::lcm_of(qs, digit_cap);
  s.fractions = detail::enumerate(qlo, Q, keep);
  return s;
}

// All reduced a/q with q <= Q (the cumulative "<= Q" frequency set).
inline std::vector<ReducedFraction> fractions_upto(std::int64_t Q) {
  require(Q >= 1, "Q must be >= 1");
  return detail::enumerate(1, Q, [](std::int64_t) { return true; });
}

// c_q(n) = mu(q/g) phi(q) / phi(q/g), g = gcd(n, q).
inline std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n) {
  require(q >= 1, "q must be >= 1");
  const std::int64_t g = arith::gcd(n, q);
  const std::int64_t r = q / g;
  return arith::mobius(r) * (arith::totient(q) / arith::totient(r));
}

// c_q(n) as the literal sum of e(an/q) over units a mod q.
inline cplx ramanujan_sum_direct(std::int64_t q, std::int64_t n) {
  cplx s{};
  for (std::int64_t a = 0; a < q; ++a)
    if (arith::gcd(a, q) == 1) s += expi_frac(a * (n % q), q);
  return s;
}

// G(a/q) = (1/q) sum_{r=1}^{q} e(-r^2 a / q)
inline cplx gauss_sum_direct(std::int64_t a, std::int64_t q) {
  require(q >= 1, "q must be >= 1");
  cplx s{};
  for (std::int64_t r = 1; r <= q; ++r) s += expi_frac(-(r * r % q) * (a % q), q);
  return s / static_cast<double>(q);
}

// Closed form of G(a/q)^2.
inline cplx gauss_sum_squared(std::int64_t a, std::int64_t q) {
  require(q >= 1, "q must be >= 1");
  require(arith::gcd(a, q) == 1, "gauss_sum_squared needs gcd(a, q) = 1");
  const double qd = static_cast<double>(q);
  if (q % 2 == 1) return {((q - 1) / 2 % 2 == 0 ? 1.0 : -1.0) / qd, 0.0};
  if (q % 4 == 2) return {0.0, 0.0};
  std::int64_t ar = a % 4;
  if (ar < 0) ar += 4;
  // a is odd here since gcd(a, q) = 1 and 4 | q
  const double sgn = ar == 1 ? 1.0 : -1.0;
  return {0.0, -2.0 * sgn / qd};
}

struct MultiplicityResult {
  std::map<Rational01, std::int64_t> counts;
  std::int64_t max = 0;
  Rational01 argmax;
};

// D(xi) = #{(theta, a/q) in Lambda x slice : m theta + n a/q = xi mod 1},
// computed in exact rational arithmetic.
inline MultiplicityResult multiplicity_count(const std::vector<Rational01>& lambda,
                                             const std::vector<ReducedFraction>& slice, std::int64_t m,
                                             std::int64_t n) {
  require(m >= -10 && m <= 10 && n >= -10 && n <= 10, "need |m|, |n| <= 10");
  std::unordered_map<Rational01, std::int64_t, Rational01Hash> acc;
  acc.reserve(lambda.size() * slice.size());
  for (const auto& th : lambda)
    for (const auto& f : slice) ++acc[Rational01::combine(m, th, n, Rational01(f.a, f.q))];
  MultiplicityResult res;
  for (const auto& [k, v] : acc) {
    res.counts.emplace(k, v);
    if (v > res.max || (v == res.max && k < res.argmax)) {
      res.max = v;
      res.argmax = k;
    }
  }
  return res;
}

}  // namespace arith_lab
