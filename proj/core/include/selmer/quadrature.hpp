#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace selmer {

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  std::size_t nodes = 0;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

// Adaptive Simpson with absolute tolerance `tol` and a hard cap on integrand
// evaluations. Throws AccuracyError (carrying the best estimate) when the cap
// is reached before every panel meets its share of the tolerance.
QuadratureResult adaptive_simpson(const ComplexIntegrand& f, double a, double b,
                                  double tol, std::size_t max_nodes);

// Composite 64-point Gauss-Legendre. The panel count doubles until two
// successive estimates agree to `tol`; throws AccuracyError when the next
// doubling would exceed `max_nodes`.
QuadratureResult gauss_legendre(const ComplexIntegrand& f, double a, double b,
                                double tol, std::size_t max_nodes);

// Single fixed-order pass with `panels` panels of 64 nodes each.
std::complex<double> gauss_legendre_fixed(const ComplexIntegrand& f, double a,
                                          double b, std::size_t panels);

}  // namespace selmer
