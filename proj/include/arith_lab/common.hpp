#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace arith_lab {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.5772156649015329;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Raised when a request exceeds a configured size cap (lcm digits, oracle
// support, trace length). The CLI maps it to exit code 1.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// e(x) = exp(2 pi i x)
inline cplx expi(double x) {
  const double t = kTwoPi * x;
  return {std::cos(t), std::sin(t)};
}

// e(num/den) with the numerator reduced first so large arguments keep
// full precision.
inline cplx expi_frac(std::int64_t num, std::int64_t den) {
  std::int64_t r = num % den;
  if (r < 0) r += den;
  // quarter turns are returned exactly
  if ((4 * static_cast<__int128>(r)) % den == 0) {
    switch (static_cast<int>(4 * static_cast<__int128>(r) / den)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return expi(static_cast<double>(r) / static_cast<double>(den));
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

inline std::int64_t floor_log2(std::uint64_t x) {
  std::int64_t k = -1;
  while (x) {
    x >>= 1;
    ++k;
  }
  return k;
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace arith_lab
