#pragma once

#include <cstdint>
#include <vector>

#include "selmer/coefficients.hpp"

namespace selmer {

inline constexpr std::uint64_t kTauTableLimit = 1'000'000;

// Ramanujan tau(n) for 0 <= n <= N (index 0 holds 0), the q-expansion
// coefficients of q * prod_{n>=1} (1 - q^n)^24. Exact; |tau(n)| < 2^127 for
// every n within the limit. Throws CapacityError above kTauTableLimit.
std::vector<__int128> tau_table(std::uint64_t n_max);

// Normalized lambda(p) = tau(p) / p^(11/2) for all primes p <= n_max.
CoefficientTable delta_coefficients(std::uint64_t n_max);

}  // namespace selmer
