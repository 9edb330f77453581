#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "selmer/lfunc.hpp"
#include "selmer/primes.hpp"

namespace selmer {

// Euler's constant, stored. Main terms always use this value; gamma_euler()
// recomputes it from exponential integrals as a self-check.
inline constexpr double kEulerGamma = 0.57721566490153286;

// --- special functions -----------------------------------------------------

// zeta(s) by Euler-Maclaurin summation for Re s > 0, s != 1, |s| <= 1000.
// Absolute error below 1e-10 in that domain. Throws PoleError at s = 1 and
// ValidationError outside the domain.
cplx zeta_em(cplx s);

// Hurwitz zeta(s, a), a in (0, 1], same domain and accuracy as zeta_em.
cplx hurwitz_em(cplx s, double a);

// L(s, chi_d) = |d|^{-s} sum_{a=1}^{|d|} chi_d(a) zeta(s, a/|d|).
cplx dirichlet_l_em(cplx s, std::int64_t d);

double digamma(double x);

// L(1, chi_d) = -(1/|d|) sum_a chi_d(a) digamma(a/|d|), |d| <= 10^4.
double dirichlet_L1(std::int64_t d);

// E1(y) = int_y^inf e^{-u}/u du. Power series below y = 1, continued fraction
// from y = 1 upward.
double exp_integral_E1(double y);

// Ein(w) = int_0^w (1 - e^{-u})/u du.
double ein(double w);

// Ein(1) - E1(1).
double gamma_euler();

// --- circle-contour identities ----------------------------------------------

struct CircleIdentityReport {
  double w = 0.0;
  // int_{-pi}^{pi} exp(w e^{i theta}) d theta, expected 2 pi.
  cplx full_circle;
  double full_circle_error = 0.0;
  // int_{-pi}^{pi} theta exp(w e^{i theta}) d theta, expected
  // (2 pi / i) * int_0^w (e^{-u} - 1)/u du = 2 pi i Ein(w).
  cplx weighted_circle;
  cplx weighted_expected;
  double weighted_error = 0.0;
  // int_0^w (e^{-u} - 1)/u du by quadrature against -(gamma + log w + E1(w)).
  double log_integral_quadrature = 0.0;
  double log_integral_closed_form = 0.0;
  double log_integral_error = 0.0;
  std::size_t nodes = 0;
};

// w in (0, 50].
CircleIdentityReport circle_identity_report(double w, double quad_tol,
                                            std::size_t max_nodes = 1 << 20);

// --- Perron truncation -------------------------------------------------------

// Parameters of the truncated vertical-line integral at height x:
// b = 1/log x, T = exp(sqrt(log x)), circle radius b' = c / sqrt(log x).
struct ContourSpec {
  double x = 0.0;
  double b = 0.0;
  double T = 0.0;
  double b_prime = 0.0;
  double quad_tol = 1e-10;
  std::size_t max_nodes = 1 << 20;

  static ContourSpec for_x(double x, double c = 0.5, double quad_tol = 1e-10,
                           std::size_t max_nodes = 1 << 20);
  // Throws ValidationError when an invariant fails.
  void validate() const;
};

struct LineValue {
  cplx value;
  double tail_bound = 0.0;  // bound on the omitted primes p > P
};

// log F(1 + s) = sum_{p <= P} sum_j -log(1 - alpha_j(p) p^{-1-s}), Re s > 0.
// With `required_tol`, throws AccuracyError if the tail bound
// k P^{-Re s} / (Re s log P) exceeds it.
LineValue log_F_on_line(const SelbergInstance& f, cplx s, std::uint64_t prime_cutoff,
                        std::optional<double> required_tol = std::nullopt,
                        const SieveOptions& opts = {});

// Same sum for several points in one sieve pass.
std::vector<LineValue> log_F_on_line(const SelbergInstance& f, std::span<const cplx> s_values,
                                     std::uint64_t prime_cutoff,
                                     std::optional<double> required_tol = std::nullopt,
                                     const SieveOptions& opts = {});

// Evaluates log g along `path`, unwrapping the argument so consecutive nodes
// never jump by more than pi.
std::vector<cplx> log_along_path(const std::function<cplx(cplx)>& g,
                                 std::span<const cplx> path);

// log zeta(1 + s) along `path` with continuous branch.
std::vector<cplx> log_zeta_along_path(std::span<const cplx> path);

struct PerronResult {
  cplx integral;            // (1/2 pi i) int_{b-iT}^{b+iT} x^s/s log F(1+s) ds
  double partial_sum = 0.0; // sum_{n <= x} b_F(n)/n
  double difference = 0.0;  // Re integral - partial_sum
  double quad_error = 0.0;
  std::size_t nodes = 0;
  // Largest |log F(1+s)| discrepancy between the Euler-Maclaurin evaluator and
  // the truncated Euler product at a handful of contour points, and the
  // Euler-product tail bound at those points.
  double evaluator_gap = 0.0;
  double evaluator_tail_bound = 0.0;
};

// F must be zeta or a Dirichlet character instance; x <= 10^4.
PerronResult perron_truncated(const SelbergInstance& f, const ContourSpec& spec,
                              std::uint64_t prime_cutoff,
                              const SieveOptions& opts = {});

}  // namespace selmer
