#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selmer/lfunc.hpp"
#include "selmer/primes.hpp"
#include "selmer/summation.hpp"

namespace selmer {

enum class ReportKind { mertens1, mertens2, mertens3, pnt };

std::string_view to_string(ReportKind kind) noexcept;
std::optional<ReportKind> parse_report_kind(std::string_view name) noexcept;

// One (instance, x) evaluation. `residual` is always value - main_term as
// stored. `rel_residual` is residual / |main_term|, except for a vanishing
// main term (pnt with m = 0) where it is residual / x.
struct MertensReport {
  std::string instance;
  double x = 0.0;
  ReportKind kind = ReportKind::mertens3;
  double value = 0.0;
  double main_term = 0.0;
  double constant_used = 0.0;
  double residual = 0.0;
  double rel_residual = 0.0;
  double imag_residue = 0.0;
  double elapsed_seconds = 0.0;
  // pnt only: sum_{p<=x} b(p) log p and the r >= 2 prime-power part.
  double prime_part = 0.0;
  double prime_power_part = 0.0;
};

// Per-prime accumulations over p <= x, all compensated.
struct PrimeSums {
  ComplexCompensatedSum log_euler;     // sum_p -sum_j log(1 - alpha_j/p) = log F_x(1)
  ComplexCompensatedSum reciprocal;    // sum_p b(p)/p
  ComplexCompensatedSum log_weighted;  // sum_p b(p) log p / p
  ComplexCompensatedSum chebyshev;     // sum_p b(p) log p
  ComplexCompensatedSum higher;        // sum_p sum_{r>=2} b(p^r)/p^r
  std::uint64_t primes = 0;

  void add(const EulerRoots& roots);
  void merge(const PrimeSums& other);
};

// Sums at every checkpoint (ascending) from a single sieve sweep. The value
// at a checkpoint is bit-identical to a sweep that stops at that checkpoint,
// and independent of opts.threads.
std::vector<PrimeSums> sweep_prime_sums(const SelbergInstance& f,
                                        std::span<const double> checkpoints,
                                        const SieveOptions& opts = {});

struct LogEuler {
  double value;         // Re log F_x(1)
  double imag_residue;  // |Im log F_x(1)|
};

LogEuler log_partial_euler(const SelbergInstance& f, double x,
                           const SieveOptions& opts = {});

// sum over prime powers p^r <= x of b_F(p^r)/p^r (real part).
double dirichlet_partial_sum(const SelbergInstance& f, double x,
                             const SieveOptions& opts = {});

// sum over p^r <= x, r >= 2 of b_F(p^r) log p^r (real part).
double prime_power_chebyshev(const SelbergInstance& f, double x);

// sum over p^r <= x, r >= 2 of b_F(p^r)/p^r (real part).
double prime_power_reciprocal(const SelbergInstance& f, double x);

// --- reports ----------------------------------------------------------------

// Constants the report kinds need; unused ones may stay empty.
struct ReportConstants {
  std::optional<LeadingCoefficient> leading;  // mertens3
  std::optional<double> M;                    // mertens2
  std::optional<double> M1;                   // mertens1
};

std::vector<MertensReport> reports_on_grid(const SelbergInstance& f, ReportKind kind,
                                           std::span<const double> xs,
                                           const ReportConstants& constants,
                                           const SieveOptions& opts = {});

MertensReport mertens3_report(const SelbergInstance& f, double x,
                              const LeadingCoefficient& leading,
                              const SieveOptions& opts = {});
MertensReport mertens2_report(const SelbergInstance& f, double x, double M,
                              const SieveOptions& opts = {});
MertensReport mertens1_report(const SelbergInstance& f, double x, double M1,
                              const SieveOptions& opts = {});
MertensReport pnt_report(const SelbergInstance& f, double x,
                         const SieveOptions& opts = {});

// --- constants ----------------------------------------------------------------

struct ConstantEstimate {
  double value = 0.0;
  double tail_bound = 0.0;
};

// M = log c_{-m} + m gamma - sum_p sum_{r>=2} b(p^r)/p^r, the prime sum cut at
// p <= P; the omitted tail is bounded by 2k/P. P >= 1000.
ConstantEstimate mertens_constant_M(const SelbergInstance& f,
                                    const LeadingCoefficient& leading,
                                    std::uint64_t prime_bound,
                                    const SieveOptions& opts = {});

// sum_{p<=x} b(p)/p - m log log x.
double mertens_constant_M_limit(const SelbergInstance& f, double x,
                                const SieveOptions& opts = {});

struct DecayFit {
  std::vector<std::pair<double, double>> points;  // (x, residual) as supplied
  double C_estimate = 0.0;  // -slope of log|residual| against sqrt(log x)
  double intercept = 0.0;
  double rms_misfit = 0.0;
  std::size_t dropped = 0;  // |residual| < 1e-300
};

// Least squares of log|residual| on sqrt(log x). Needs >= 4 usable points
// with distinct x.
DecayFit fit_decay(std::span<const std::pair<double, double>> points);

struct M1Estimate {
  double value = 0.0;               // integral estimator of M1
  double integral = 0.0;            // int_2^U Delta_2F(u)/u du, exact piecewise
  double tail_estimate = 0.0;       // |int_U^inf| from the fitted envelope (not added)
  std::optional<DecayFit> envelope; // fit of |Delta_2F| on the half-decade grid
  double limit_value = 0.0;         // sum_{p<=x_max} b(p) log p/p - m log x_max
  double gap = 0.0;                 // |value - limit_value|
  bool inconsistent = false;        // gap > 1e-2
};

// M1 = -int_2^inf Delta_2F(u)/u du + M log 2 + m (log 2)(log log 2 - 1), with
// the integral carried exactly interval by interval up to U (U >= 10^4).
M1Estimate mertens_constant_M1(const SelbergInstance& f, double M, double U,
                               double x_max, const SieveOptions& opts = {});

// c_{-m} from log F_x(1) on the half-decade grid 10^2, 10^2.5, ... <= x_max.
LeadingCoefficient empirical_leading_coefficient(const SelbergInstance& f,
                                                 double x_max,
                                                 const SieveOptions& opts = {});

// Least-squares slope of sum_{p<=x} b(p)/p against log log x over `xs`; an
// empirical estimate of the pole order m.
double fit_pole_order(const SelbergInstance& f, std::span<const double> xs,
                      const SieveOptions& opts = {});

// Resolves c_{-m} for the instance, fitting it empirically up to
// `empirical_x_max` when the instance has no closed-form source.
LeadingCoefficient resolve_leading(const SelbergInstance& f, double empirical_x_max,
                                   const SieveOptions& opts = {});

}  // namespace selmer
