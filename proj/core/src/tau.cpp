#include "selmer/tau.hpp"

#include <cmath>

#include "selmer/error.hpp"
#include "selmer/primes.hpp"

namespace selmer {

namespace {

struct SparseTerm {
  std::uint64_t exponent;
  int sign;
};

// prod_{n>=1} (1 - q^n) = sum_{k in Z} (-1)^k q^{k(3k-1)/2}, truncated at
// degree `deg`.
std::vector<SparseTerm> pentagonal_series(std::uint64_t deg) {
  std::vector<SparseTerm> terms{{0, 1}};
  for (std::uint64_t k = 1;; ++k) {
    const int sign = (k % 2 == 0) ? 1 : -1;
    const std::uint64_t e1 = k * (3 * k - 1) / 2;
    const std::uint64_t e2 = k * (3 * k + 1) / 2;
    if (e1 > deg) break;
    terms.push_back({e1, sign});
    if (e2 <= deg) terms.push_back({e2, sign});
  }
  return terms;
}

}  // namespace

std::vector<__int128> tau_table(std::uint64_t n_max) {
  if (n_max > kTauTableLimit) {
    throw CapacityError("tau_table size too large", kTauTableLimit);
  }
  std::vector<__int128> tau(n_max + 1, 0);
  if (n_max == 0) return tau;

  // tau(n) is the coefficient of q^(n-1) in P(q)^24.
  const std::uint64_t deg = n_max - 1;
  const auto pent = pentagonal_series(deg);

  std::vector<__int128> acc(deg + 1, 0);
  for (const auto& t : pent) acc[t.exponent] = t.sign;

  std::vector<__int128> next(deg + 1);
  for (int power = 2; power <= 24; ++power) {
    std::fill(next.begin(), next.end(), 0);
    for (const auto& t : pent) {
      const std::uint64_t e = t.exponent;
      __int128* dst = next.data() + e;
      const __int128* src = acc.data();
      const std::uint64_t len = deg + 1 - e;
      if (t.sign > 0) {
        for (std::uint64_t i = 0; i < len; ++i) dst[i] += src[i];
      } else {
        for (std::uint64_t i = 0; i < len; ++i) dst[i] -= src[i];
      }
    }
    acc.swap(next);
  }
  for (std::uint64_t n = 1; n <= n_max; ++n) tau[n] = acc[n - 1];
  return tau;
}

CoefficientTable delta_coefficients(std::uint64_t n_max) {
  const auto tau = tau_table(n_max);
  std::vector<CoefficientTable::Entry> entries;
  SieveOptions opts;
  for_each_prime(2, n_max, opts, [&](std::uint64_t p) {
    const double scale = std::pow(static_cast<double>(p), 5.5);
    entries.push_back({p, static_cast<double>(tau[p]) / scale});
  });
  return CoefficientTable(12, std::move(entries), n_max);
}

}  // namespace selmer
