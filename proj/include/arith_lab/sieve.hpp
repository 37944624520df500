#pragma once

// Smallest-prime-factor sieve and the arithmetic functions built on it:
// von Mangoldt, divisor count, sum-of-two-squares, Moebius, totient.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "arith_lab/common.hpp"
#include "arith_lab/series.hpp"

namespace arith_lab {

class FactorSieve {
 public:
  // Linear sieve; spf[n] for 2 <= n <= limit.
  explicit FactorSieve(std::int64_t limit) : limit_(limit) {
    require(limit >= 2, "sieve limit must be >= 2");
    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    for (std::int64_t i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes_.push_back(i);
      }
      for (std::int64_t p : primes_) {
        if (p > spf_[i] || i * p > limit) break;
        spf_[static_cast<std::size_t>(i * p)] = static_cast<std::uint32_t>(p);
      }
    }
  }

  std::int64_t limit() const { return limit_; }
  std::int64_t spf(std::int64_t n) const { return spf_[static_cast<std::size_t>(n)]; }
  bool is_prime(std::int64_t n) const { return n >= 2 && spf(n) == n; }
  const std::vector<std::int64_t>& primes() const { return primes_; }

  // (prime, exponent) pairs in increasing prime order
  std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) const {
    require(n >= 1 && n <= limit_, "factorize: n outside sieve range");
    std::vector<std::pair<std::int64_t, int>> out;
    while (n > 1) {
      const std::int64_t p = spf(n);
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
    return out;
  }

  // Cached construction: when ARITH_LAB_CACHE names a directory, the spf
  // table is stored there as raw little-endian uint32 and reused.
  static FactorSieve cached(std::int64_t limit) {
    const char* dir = std::getenv("ARITH_LAB_CACHE");
    if (dir == nullptr || *dir == '\0') return FactorSieve(limit);
    namespace fs = std::filesystem;
    const fs::path path = fs::path(dir) / ("spf_" + std::to_string(limit) + ".bin");
    FactorSieve s;
    if (s.load(path, limit)) return s;
    FactorSieve fresh(limit);
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream os(path, std::ios::binary);
    if (os)
      os.write(reinterpret_cast<const char*>(fresh.spf_.data()),
               static_cast<std::streamsize>(fresh.spf_.size() * sizeof(std::uint32_t)));
    return fresh;
  }

 private:
  FactorSieve() = default;

  bool load(const std::filesystem::path& path, std::int64_t limit) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return false;
    std::vector<std::uint32_t> buf(static_cast<std::size_t>(limit) + 1);
    is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(std::uint32_t)));
    if (is.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(std::uint32_t))) return false;
    limit_ = limit;
    spf_ = std::move(buf);
    for (std::int64_t i = 2; i <= limit; ++i)
      if (spf_[static_cast<std::size_t>(i)] == i) primes_.push_back(i);
    return true;
  }

  std::int64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int64_t> primes_;
};

inline FactorSieve build_sieve(std::int64_t limit) { return FactorSieve(limit); }

// Lambda(n) = log p if n = p^k, else 0, on [1, N].
inline WeightSeries von_mangoldt_series(const FactorSieve& sieve, std::int64_t N) {
  require(N >= 1, "N must be >= 1");
  require(N <= sieve.limit(), "von_mangoldt_series: N exceeds sieve limit");
  std::vector<cplx> v(static_cast<std::size_t>(N));
  for (std::int64_t n = 2; n <= N; ++n) {
    const std::int64_t p = sieve.spf(n);
    std::int64_t m = n;
    while (m % p == 0) m /= p;
    if (m == 1) v[static_cast<std::size_t>(n - 1)] = std::log(static_cast<double>(p));
  }
  return {"mangoldt", 1, std::move(v)};
}

// tau(n) on [1, N] by the harmonic sweep over d.
inline WeightSeries divisor_series(std::int64_t N) {
  require(N >= 1, "N must be >= 1");
  std::vector<std::int64_t> cnt(static_cast<std::size_t>(N) + 1, 0);
  for (std::int64_t d = 1; d <= N; ++d)
    for (std::int64_t m = d; m <= N; m += d) ++cnt[static_cast<std::size_t>(m)];
  std::vector<cplx> v(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) v[static_cast<std::size_t>(n - 1)] = static_cast<double>(cnt[n]);
  return {"divisor", 1, std::move(v)};
}

// r_2(n) on [0, N]: ordered pairs (a, b) in Z^2, signs included, with
// a^2 + b^2 = n. Lattice sweep over the quarter disc.
inline std::vector<std::int64_t> two_squares_counts(std::int64_t N) {
  require(N >= 0, "N must be >= 0");
  std::vector<std::int64_t> r(static_cast<std::size_t>(N) + 1, 0);
  for (std::int64_t a = 0; a * a <= N; ++a) {
    for (std::int64_t b = 0; a * a + b * b <= N; ++b) {
      const int mult = (a == 0 ? 1 : 2) * (b == 0 ? 1 : 2);
      r[static_cast<std::size_t>(a * a + b * b)] += mult;
    }
  }
  return r;
}

inline WeightSeries two_squares_series(std::int64_t N) {
  auto r = two_squares_counts(N);
  std::vector<cplx> v(r.begin(), r.end());
  return {"r2", 0, std::move(v)};
}

// Moebius and Euler totient on [1, N].
inline std::pair<WeightSeries, WeightSeries> mobius_totient_series(const FactorSieve& sieve, std::int64_t N) {
  require(N >= 1, "N must be >= 1");
  require(N <= sieve.limit(), "mobius_totient_series: N exceeds sieve limit");
  std::vector<std::int64_t> mu(static_cast<std::size_t>(N) + 1), phi(static_cast<std::size_t>(N) + 1);
  mu[1] = 1;
  phi[1] = 1;
  for (std::int64_t n = 2; n <= N; ++n) {
    const std::int64_t p = sieve.spf(n);
    const std::int64_t m = n / p;
    if (m % p == 0) {
      mu[n] = 0;
      phi[n] = phi[m] * p;
    } else {
      mu[n] = -mu[m];
      phi[n] = phi[m] * (p - 1);
    }
  }
  std::vector<cplx> vm(static_cast<std::size_t>(N)), vp(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) {
    vm[static_cast<std::size_t>(n - 1)] = static_cast<double>(mu[n]);
    vp[static_cast<std::size_t>(n - 1)] = static_cast<double>(phi[n]);
  }
  return {WeightSeries("mobius", 1, std::move(vm)), WeightSeries("totient", 1, std::move(vp))};
}

inline std::vector<std::int64_t> primes_upto(const FactorSieve& sieve, std::int64_t N) {
  require(N <= sieve.limit(), "primes_upto: N exceeds sieve limit");
  std::vector<std::int64_t> out;
  for (std::int64_t p : sieve.primes()) {
    if (p > N) break;
    out.push_back(p);
  }
  return out;
}

// Integer helpers shared by the arithmetic modules; trial division is fine
// for the small moduli (q <= a few thousand) they are used with.
namespace arith {

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline std::int64_t mobius(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

inline std::int64_t totient(std::int64_t n) {
  std::int64_t r = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> lo, hi;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d * d != n) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

}  // namespace arith
}  // namespace arith_lab
