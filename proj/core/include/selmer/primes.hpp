#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "selmer/error.hpp"

namespace selmer {

struct SieveOptions {
  // Integers covered by one sieve segment. Segments are aligned to absolute
  // multiples of this value, so segment boundaries never depend on the
  // requested range or on the thread count.
  std::uint64_t segment_span = std::uint64_t{1} << 20;
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 1;
  // Largest integer the sieve may be asked to reach.
  std::uint64_t max_value = 1'000'000'000'000ULL;
  // primes_in_range refuses to materialize more primes than this.
  std::size_t materialize_limit = 10'000'000;
};

// Ascending list of all primes in [lo, hi].
struct PrimeRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> primes;
};

PrimeRange primes_in_range(std::uint64_t lo, std::uint64_t hi,
                           const SieveOptions& opts = {});

// Kronecker symbol (d/n). Completely multiplicative in n; zero exactly when
// gcd(d, n) > 1.
int kronecker_symbol(std::int64_t d, std::uint64_t n) noexcept;

bool is_fundamental_discriminant(std::int64_t d) noexcept;

unsigned resolve_threads(unsigned requested) noexcept;

namespace detail {

std::vector<std::uint32_t> base_primes(std::uint64_t hi);

// Appends the primes of [seg_lo, seg_hi) to `out` (cleared first).
void sieve_segment(std::uint64_t seg_lo, std::uint64_t seg_hi,
                   std::span<const std::uint32_t> base,
                   std::vector<std::uint64_t>& bits_scratch,
                   std::vector<std::uint64_t>& out);

void check_capacity(std::uint64_t hi, const SieveOptions& opts);

}  // namespace detail

// Streams the primes of [lo, hi] in ascending order, one segment at a time:
// fn(std::span<const std::uint64_t>) is called once per non-empty segment.
template <class Fn>
void for_each_prime_segment(std::uint64_t lo, std::uint64_t hi,
                            const SieveOptions& opts, Fn&& fn) {
  if (hi < lo || hi < 2) return;
  detail::check_capacity(hi, opts);
  const auto base = detail::base_primes(hi);
  const std::uint64_t span = opts.segment_span;
  std::vector<std::uint64_t> scratch;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t seg = lo / span; seg <= hi / span; ++seg) {
    const std::uint64_t seg_lo = std::max(seg * span, lo);
    const std::uint64_t seg_hi = std::min(seg * span + span - 1, hi) + 1;
    detail::sieve_segment(seg_lo, seg_hi, base, scratch, primes);
    if (!primes.empty()) fn(std::span<const std::uint64_t>(primes));
  }
}

template <class Fn>
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const SieveOptions& opts, Fn&& fn) {
  for_each_prime_segment(lo, hi, opts, [&](std::span<const std::uint64_t> ps) {
    for (const auto p : ps) fn(p);
  });
}

// Parallel map over the aligned segments intersecting [lo, hi]. `fn` receives
// the primes of one segment (possibly empty) together with the segment's
// half-open integer range [seg_lo, seg_hi) and returns an accumulator; the
// results come back in ascending segment order regardless of which thread
// produced them, so an ordered fold over the result is deterministic.
template <class Acc, class Fn>
std::vector<Acc> map_prime_segments(std::uint64_t lo, std::uint64_t hi,
                                    const SieveOptions& opts, Fn&& fn) {
  if (hi < lo) return {};
  detail::check_capacity(hi, opts);
  const auto base = detail::base_primes(hi);
  const std::uint64_t span = opts.segment_span;
  const std::uint64_t first = lo / span;
  const std::size_t count = static_cast<std::size_t>(hi / span - first + 1);
  std::vector<Acc> results(count);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    std::vector<std::uint64_t> scratch;
    std::vector<std::uint64_t> primes;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      const std::uint64_t seg = first + i;
      const std::uint64_t seg_lo = std::max(seg * span, lo);
      const std::uint64_t seg_hi = std::min(seg * span + span - 1, hi) + 1;
      try {
        detail::sieve_segment(seg_lo, seg_hi, base, scratch, primes);
        results[i] = fn(std::span<const std::uint64_t>(primes), seg_lo, seg_hi);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };

  const unsigned n_threads = std::min<std::size_t>(resolve_threads(opts.threads), count);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace selmer
