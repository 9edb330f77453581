#include "selmer/primes.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>

namespace selmer {
namespace detail {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

void check_capacity(std::uint64_t hi, const SieveOptions& opts) {
  if (hi > opts.max_value) {
    throw CapacityError("sieve bound " + std::to_string(hi) +
                            " exceeds the configured maximum",
                        opts.max_value);
  }
  if (opts.segment_span < 64 || opts.segment_span % 2 != 0) {
    throw ValidationError("segment_span must be an even number >= 64");
  }
}

std::vector<std::uint32_t> base_primes(std::uint64_t hi) {
  const std::uint64_t limit = isqrt(hi);
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

void sieve_segment(std::uint64_t seg_lo, std::uint64_t seg_hi,
                   std::span<const std::uint32_t> base,
                   std::vector<std::uint64_t>& bits,
                   std::vector<std::uint64_t>& out) {
  out.clear();
  if (seg_hi <= seg_lo) return;
  if (seg_lo <= 2 && 2 < seg_hi) out.push_back(2);

  const std::uint64_t first_odd = seg_lo | 1;
  if (first_odd >= seg_hi) return;
  // bit i <-> first_odd + 2 i
  const std::uint64_t n_odd = (seg_hi - first_odd + 1) / 2;
  const std::size_t n_words = static_cast<std::size_t>((n_odd + 63) / 64);
  bits.assign(n_words, ~std::uint64_t{0});
  if (n_odd % 64 != 0) bits.back() = (std::uint64_t{1} << (n_odd % 64)) - 1;
  if (first_odd == 1) bits[0] &= ~std::uint64_t{1};

  for (const std::uint32_t q32 : base) {
    const std::uint64_t q = q32;
    if (q == 2) continue;
    if (q * q >= seg_hi) break;
    std::uint64_t m = (first_odd + q - 1) / q * q;
    if (m % 2 == 0) m += q;
    m = std::max(m, q * q);
    for (std::uint64_t i = (m - first_odd) / 2; i < n_odd; i += q) {
      bits[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }

  for (std::size_t w = 0; w < n_words; ++w) {
    std::uint64_t word = bits[w];
    while (word != 0) {
      const int b = std::countr_zero(word);
      out.push_back(first_odd + 2 * (std::uint64_t{w} * 64 + b));
      word &= word - 1;
    }
  }
}

}  // namespace detail

unsigned resolve_threads(unsigned requested) noexcept {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

PrimeRange primes_in_range(std::uint64_t lo, std::uint64_t hi,
                           const SieveOptions& opts) {
  if (hi < lo) throw ValidationError("primes_in_range: hi < lo");
  PrimeRange range{lo, hi, {}};
  for_each_prime_segment(lo, hi, opts, [&](std::span<const std::uint64_t> ps) {
    if (range.primes.size() + ps.size() > opts.materialize_limit) {
      throw CapacityError(
          "primes_in_range would materialize too many primes; use the "
          "streaming interface",
          opts.materialize_limit);
    }
    range.primes.insert(range.primes.end(), ps.begin(), ps.end());
  });
  return range;
}

int kronecker_symbol(std::int64_t d, std::uint64_t n) noexcept {
  // (a/2) for odd a, indexed by a mod 8.
  static constexpr int kTwo[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  if ((d % 2 == 0) && (n % 2 == 0)) return 0;

  int k = 1;
  const int v = std::countr_zero(n);
  n >>= v;
  if (v % 2 == 1) k = kTwo[static_cast<std::uint64_t>(d) & 7];

  // n is now odd and positive: reduce d modulo n and run the Jacobi loop.
  __int128 r = static_cast<__int128>(d) % static_cast<__int128>(n);
  if (r < 0) r += n;
  std::uint64_t a = static_cast<std::uint64_t>(r);
  std::uint64_t b = n;
  while (a != 0) {
    const int t = std::countr_zero(a);
    a >>= t;
    if (t % 2 == 1) k *= kTwo[b & 7];
    if ((a & b & 2) != 0) k = -k;
    const std::uint64_t tmp = a;
    a = b % tmp;
    b = tmp;
  }
  return b == 1 ? k : 0;
}

bool is_fundamental_discriminant(std::int64_t d) noexcept {
  auto squarefree = [](std::uint64_t m) {
    if (m == 0) return false;
    for (std::uint64_t q = 2; q * q <= m; ++q) {
      if (m % (q * q) == 0) return false;
    }
    return true;
  };
  if (d == 0 || d == 1) return false;
  const std::int64_t r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(static_cast<std::uint64_t>(std::llabs(d)));
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t mr = ((m % 4) + 4) % 4;
  if (mr != 2 && mr != 3) return false;
  return squarefree(static_cast<std::uint64_t>(std::llabs(m)));
}

}  // namespace selmer
