#include <algorithm>
#include <cmath>
#include <numbers>

#include "selmer/analysis.hpp"
#include "selmer/detail/complex_log.hpp"
#include "selmer/error.hpp"
#include "selmer/mertens.hpp"
#include "selmer/quadrature.hpp"
#include "selmer/summation.hpp"

namespace selmer {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Principal log shifted by the multiple of 2 pi i that brings its argument
// closest to `reference`.
cplx log_near(cplx g, double reference) {
  cplx v = std::log(g);
  const double k = std::round((reference - v.imag()) / kTwoPi);
  return {v.real(), v.imag() + k * kTwoPi};
}

// Unwrapped argument of log g sampled on a uniform grid of a vertical
// segment; queries between nodes pick the branch nearest the linear
// interpolant of the neighbouring unwrapped values.
class BranchTrackedLog {
 public:
  BranchTrackedLog(std::function<cplx(cplx)> g, double sigma, double t_lo, double t_hi,
                   double step)
      : g_(std::move(g)), sigma_(sigma), t_lo_(t_lo) {
    const auto n = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / step)) + 1;
    h_ = (t_hi - t_lo) / static_cast<double>(n - 1);
    std::vector<cplx> path(n);
    for (std::size_t i = 0; i < n; ++i) path[i] = {sigma, t_lo + h_ * static_cast<double>(i)};
    const auto logs = log_along_path(g_, path);
    args_.reserve(n);
    for (const auto& v : logs) args_.push_back(v.imag());
  }

  cplx operator()(double t) const {
    const double pos = std::clamp((t - t_lo_) / h_, 0.0, static_cast<double>(args_.size() - 1));
    const auto i = std::min(static_cast<std::size_t>(pos), args_.size() - 2);
    const double frac = pos - static_cast<double>(i);
    const double ref = args_[i] + frac * (args_[i + 1] - args_[i]);
    return log_near(g_(cplx{sigma_, t}), ref);
  }

 private:
  std::function<cplx(cplx)> g_;
  double sigma_;
  double t_lo_;
  double h_ = 1.0;
  std::vector<double> args_;
};

std::function<cplx(cplx)> em_evaluator(const SelbergInstance& f) {
  switch (f.family()) {
    case Family::zeta:
      return [](cplx s) { return zeta_em(s); };
    case Family::dirichlet: {
      const std::int64_t d = f.discriminant();
      return [d](cplx s) { return dirichlet_l_em(s, d); };
    }
    default:
      throw ValidationError("perron_truncated supports zeta and Dirichlet instances, not " +
                            f.name());
  }
}

}  // namespace

CircleIdentityReport circle_identity_report(double w, double quad_tol,
                                            std::size_t max_nodes) {
  if (!(w > 0.0 && w <= 50.0)) throw ValidationError("circle identities need w in (0, 50]");
  if (!(quad_tol > 0.0)) throw ValidationError("quad_tol must be positive");

  CircleIdentityReport r;
  r.w = w;
  const auto circle = gauss_legendre(
      [w](double th) { return std::exp(w * std::polar(1.0, th)); }, -kPi, kPi, quad_tol,
      max_nodes);
  r.full_circle = circle.value;
  r.full_circle_error = std::abs(circle.value - cplx{kTwoPi, 0.0});

  const auto weighted = gauss_legendre(
      [w](double th) { return th * std::exp(w * std::polar(1.0, th)); }, -kPi, kPi,
      quad_tol, max_nodes);
  r.weighted_circle = weighted.value;
  // (2 pi / i) * int_0^w (e^{-u} - 1)/u du = (2 pi / i)(-Ein(w)) = 2 pi i Ein(w)
  r.weighted_expected = cplx{0.0, kTwoPi * ein(w)};
  r.weighted_error = std::abs(r.weighted_circle - r.weighted_expected);

  const auto line = adaptive_simpson(
      [](double u) -> cplx { return u == 0.0 ? cplx{-1.0, 0.0} : cplx{std::expm1(-u) / u, 0.0}; },
      0.0, w, quad_tol, max_nodes);
  r.log_integral_quadrature = line.value.real();
  r.log_integral_closed_form = -(kEulerGamma + std::log(w) + exp_integral_E1(w));
  r.log_integral_error = std::fabs(r.log_integral_quadrature - r.log_integral_closed_form);
  r.nodes = circle.nodes + weighted.nodes + line.nodes;
  return r;
}

ContourSpec ContourSpec::for_x(double x, double c, double quad_tol, std::size_t max_nodes) {
  if (!(x >= 2.0)) throw ValidationError("ContourSpec needs x >= 2");
  if (!(c > 0.0 && c < 1.0)) throw ValidationError("circle constant c must lie in (0, 1)");
  ContourSpec spec;
  const double L = std::log(x);
  spec.x = x;
  spec.b = 1.0 / L;
  spec.T = std::exp(std::sqrt(L));
  spec.b_prime = c / std::sqrt(L);
  spec.quad_tol = quad_tol;
  spec.max_nodes = max_nodes;
  spec.validate();
  return spec;
}

void ContourSpec::validate() const {
  if (!(x >= 2.0)) throw ValidationError("ContourSpec: x must be >= 2");
  if (!(b > 0.0)) throw ValidationError("ContourSpec: b must be positive");
  if (!(T >= 1.0)) throw ValidationError("ContourSpec: T must be >= 1");
  if (!(b_prime > 0.0 && b_prime < 0.5)) {
    throw ValidationError("ContourSpec: b' must lie in (0, 1/2)");
  }
  if (!(quad_tol >= 1e-14 && quad_tol <= 1e-6)) {
    throw ValidationError("ContourSpec: quad_tol must lie in [1e-14, 1e-6]");
  }
  if (max_nodes < 64) throw ValidationError("ContourSpec: max_nodes too small");
}

std::vector<cplx> log_along_path(const std::function<cplx(cplx)>& g,
                                 std::span<const cplx> path) {
  std::vector<cplx> out;
  out.reserve(path.size());
  for (const cplx& s : path) {
    const cplx gs = g(s);
    if (gs == cplx{}) throw ValidationError("log_along_path: function vanishes on the path");
    out.push_back(out.empty() ? std::log(gs) : log_near(gs, out.back().imag()));
  }
  return out;
}

std::vector<cplx> log_zeta_along_path(std::span<const cplx> path) {
  return log_along_path([](cplx s) { return zeta_em(1.0 + s); }, path);
}

std::vector<LineValue> log_F_on_line(const SelbergInstance& f, std::span<const cplx> s_values,
                                     std::uint64_t prime_cutoff,
                                     std::optional<double> required_tol,
                                     const SieveOptions& opts) {
  if (prime_cutoff < 2) throw ValidationError("log_F_on_line needs P >= 2");
  f.require_coverage(prime_cutoff);
  std::vector<ComplexCompensatedSum> acc(s_values.size());
  for (const cplx& s : s_values) {
    if (!(s.real() > 0.0)) throw ValidationError("log_F_on_line needs Re s > 0");
  }
  for_each_prime(2, prime_cutoff, opts, [&](std::uint64_t p) {
    const EulerRoots roots = f.roots_at(p);
    const double log_p = std::log(static_cast<double>(p));
    for (std::size_t i = 0; i < s_values.size(); ++i) {
      const cplx scale = std::exp(-(1.0 + s_values[i]) * log_p);
      cplx term{};
      for (const auto& a : roots.roots()) term -= detail::log1p(-a * scale);
      acc[i].add(term);
    }
  });
  const double log_P = std::log(static_cast<double>(prime_cutoff));
  std::vector<LineValue> out;
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    const double sigma = s_values[i].real();
    const double bound = static_cast<double>(f.degree()) *
                         std::exp(-sigma * log_P) / (sigma * log_P);
    if (required_tol && bound > *required_tol) {
      throw AccuracyError("log_F_on_line: prime cutoff too small for the requested accuracy",
                          acc[i].real(), bound);
    }
    out.push_back({acc[i].value(), bound});
  }
  return out;
}

LineValue log_F_on_line(const SelbergInstance& f, cplx s, std::uint64_t prime_cutoff,
                        std::optional<double> required_tol, const SieveOptions& opts) {
  const cplx one[] = {s};
  return log_F_on_line(f, one, prime_cutoff, required_tol, opts)[0];
}

PerronResult perron_truncated(const SelbergInstance& f, const ContourSpec& spec,
                              std::uint64_t prime_cutoff, const SieveOptions& opts) {
  spec.validate();
  if (spec.x > 1e4) throw ValidationError("perron_truncated needs x <= 10^4");
  const auto g = em_evaluator(f);
  const double sigma = 1.0 + spec.b;
  const BranchTrackedLog log_g(g, sigma, -spec.T, spec.T, 0.02);

  const double log_x = std::log(spec.x);
  const double b = spec.b;
  auto integrand = [&](double t) -> cplx {
    const cplx s{b, t};
    return std::exp(s * log_x) / s * log_g(t) / kTwoPi;
  };
  const auto q = adaptive_simpson(integrand, -spec.T, spec.T, spec.quad_tol, spec.max_nodes);

  PerronResult r;
  r.integral = q.value;
  r.quad_error = q.error_estimate;
  r.nodes = q.nodes;
  r.partial_sum = dirichlet_partial_sum(f, spec.x, opts);
  r.difference = r.integral.real() - r.partial_sum;

  const double probes[] = {-spec.T, -0.5 * spec.T, 0.0, 0.5 * spec.T, spec.T};
  std::vector<cplx> points;
  for (const double t : probes) points.emplace_back(b, t);
  const auto euler = log_F_on_line(f, points, prime_cutoff, std::nullopt, opts);
  for (std::size_t i = 0; i < points.size(); ++i) {
    r.evaluator_gap = std::max(r.evaluator_gap, std::abs(euler[i].value - log_g(probes[i])));
    r.evaluator_tail_bound = std::max(r.evaluator_tail_bound, euler[i].tail_bound);
  }
  return r;
}

}  // namespace selmer
