#pragma once

#include <cmath>
#include <complex>

namespace selmer::detail {

// log(1 + z) without the cancellation std::log(1.0 + z) suffers for small z.
inline std::complex<double> log1p(std::complex<double> z) noexcept {
  const double x = z.real();
  const double y = z.imag();
  return {0.5 * std::log1p(x * (2.0 + x) + y * y), std::atan2(y, 1.0 + x)};
}

// -log(1 - z) - z = sum_{r >= 2} z^r / r, |z| < 1.
inline std::complex<double> log1m_tail(std::complex<double> z) noexcept {
  if (std::abs(z) >= 0.1) return -log1p(-z) - z;
  std::complex<double> power = z * z;
  std::complex<double> acc = power / 2.0;
  for (int r = 3; r < 64; ++r) {
    power *= z;
    const std::complex<double> term = power / static_cast<double>(r);
    acc += term;
    if (std::abs(term) <= 1e-18 * std::abs(acc)) break;
  }
  return acc;
}

}  // namespace selmer::detail
