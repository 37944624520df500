#pragma once

// In-place complex FFT. Power-of-two lengths use an iterative radix-2
// kernel; any other length goes through Bluestein's chirp-z transform on
// top of it.

#include <algorithm>
#include <span>
#include <vector>

#include "arith_lab/common.hpp"

namespace arith_lab::fft {

namespace detail {

inline void radix2(std::span<cplx> a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 1.0 : -1.0) * kTwoPi / static_cast<double>(len);
    const std::size_t half = len / 2;
    // twiddles computed directly (not by recurrence) to keep error O(eps log n)
    std::vector<cplx> w(half);
    for (std::size_t k = 0; k < half; ++k)
      w[k] = {std::cos(ang * static_cast<double>(k)), std::sin(ang * static_cast<double>(k))};
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + half] * w[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

inline void bluestein(std::span<cplx> a, bool inverse) {
  const std::size_t n = a.size();
  const std::size_t m = next_pow2(2 * n - 1);
  const double sgn = inverse ? 1.0 : -1.0;
  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small
    const auto k2 = static_cast<std::uint64_t>(k) * k % (2 * n);
    const double ang = sgn * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
    chirp[k] = {std::cos(ang), std::sin(ang)};
  }
  std::vector<cplx> x(m), y(m);
  for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
  y[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(chirp[k]);
  radix2(x, false);
  radix2(y, false);
  for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
  radix2(x, true);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * scale * chirp[k];
}

}  // namespace detail

// Unnormalised forward transform: A[k] = sum_n a[n] e(-nk/len).
inline void forward(std::span<cplx> a) {
  if (a.size() <= 1) return;
  if ((a.size() & (a.size() - 1)) == 0)
    detail::radix2(a, false);
  else
    detail::bluestein(a, false);
}

// Unnormalised inverse transform: a[n] = sum_k A[k] e(nk/len).
inline void inverse(std::span<cplx> a) {
  if (a.size() <= 1) return;
  if ((a.size() & (a.size() - 1)) == 0)
    detail::radix2(a, true);
  else
    detail::bluestein(a, true);
}

// Linear autocorrelation r[k] = sum_x f[x+k] conj(f[x]) for k in (-n, n),
// returned with lag k stored at index k + n - 1.
inline std::vector<cplx> autocorrelation(std::span<const cplx> f) {
  const std::size_t n = f.size();
  if (n == 0) return {};
  const std::size_t m = next_pow2(2 * n);
  std::vector<cplx> buf(m);
  std::copy(f.begin(), f.end(), buf.begin());
  forward(buf);
  for (auto& v : buf) v = std::norm(v);
  inverse(buf);
  const double scale = 1.0 / static_cast<double>(m);
  std::vector<cplx> out(2 * n - 1);
  for (std::size_t k = 0; k < n; ++k) out[n - 1 + k] = buf[k] * scale;
  for (std::size_t k = 1; k < n; ++k) out[n - 1 - k] = buf[m - k] * scale;
  return out;
}

}  // namespace arith_lab::fft
