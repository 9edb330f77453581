#include "selmer/mertens.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "selmer/analysis.hpp"
#include "selmer/detail/complex_log.hpp"
#include "selmer/error.hpp"

namespace selmer {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t floor_u64(double x) {
  if (!(x >= 0.0)) return 0;
  if (x >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::floor(x));
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void require_grid(std::span<const double> xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] >= 2.0) || !std::isfinite(xs[i])) {
      throw ValidationError("grid values must be finite and >= 2");
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw ValidationError("grid must be strictly ascending");
    }
  }
}

struct SegmentResult {
  PrimeSums total;
  std::vector<std::pair<std::size_t, PrimeSums>> snapshots;
};

// 10^2, 10^2.5, ..., up to x_max (x_max itself appended when off-grid).
std::vector<double> half_decade_grid(double x_max) {
  std::vector<double> xs;
  for (int k = 0;; ++k) {
    const double x = std::floor(std::pow(10.0, 2.0 + 0.5 * k));
    if (x > x_max) break;
    xs.push_back(x);
  }
  if (xs.empty() || xs.back() < x_max) xs.push_back(x_max);
  return xs;
}

double least_squares_slope(std::span<const double> u, std::span<const double> v,
                           double* intercept = nullptr) {
  const auto n = static_cast<double>(u.size());
  double mu = 0.0;
  double mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double suu = 0.0;
  double suv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suv += (u[i] - mu) * (v[i] - mv);
  }
  const double slope = suv / suu;
  if (intercept) *intercept = mv - slope * mu;
  return slope;
}

}  // namespace

std::string_view to_string(ReportKind kind) noexcept {
  switch (kind) {
    case ReportKind::mertens1: return "mertens1";
    case ReportKind::mertens2: return "mertens2";
    case ReportKind::mertens3: return "mertens3";
    case ReportKind::pnt: return "pnt";
  }
  return "unknown";
}

std::optional<ReportKind> parse_report_kind(std::string_view name) noexcept {
  if (name == "mertens1") return ReportKind::mertens1;
  if (name == "mertens2") return ReportKind::mertens2;
  if (name == "mertens3") return ReportKind::mertens3;
  if (name == "pnt") return ReportKind::pnt;
  return std::nullopt;
}

void PrimeSums::add(const EulerRoots& roots) {
  const auto p = static_cast<double>(roots.p);
  const double log_p = std::log(p);
  cplx b{};
  cplx log_factor{};
  cplx tail{};
  for (const auto& a : roots.roots()) {
    const cplx z = a / p;
    b += a;
    log_factor -= detail::log1p(-z);
    tail += detail::log1m_tail(z);
  }
  log_euler.add(log_factor);
  reciprocal.add(b / p);
  log_weighted.add(b * (log_p / p));
  chebyshev.add(b * log_p);
  higher.add(tail);
  ++primes;
}

void PrimeSums::merge(const PrimeSums& other) {
  log_euler.merge(other.log_euler);
  reciprocal.merge(other.reciprocal);
  log_weighted.merge(other.log_weighted);
  chebyshev.merge(other.chebyshev);
  higher.merge(other.higher);
  primes += other.primes;
}

std::vector<PrimeSums> sweep_prime_sums(const SelbergInstance& f,
                                        std::span<const double> checkpoints,
                                        const SieveOptions& opts) {
  std::vector<std::uint64_t> cps;
  cps.reserve(checkpoints.size());
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (i > 0 && !(checkpoints[i] >= checkpoints[i - 1])) {
      throw ValidationError("checkpoints must be ascending");
    }
    cps.push_back(floor_u64(checkpoints[i]));
  }
  std::vector<PrimeSums> out(cps.size());
  if (cps.empty()) return out;
  const std::uint64_t hi = cps.back();
  f.require_coverage(hi);

  auto per_segment = [&](std::span<const std::uint64_t> primes, std::uint64_t seg_lo,
                         std::uint64_t seg_hi) {
    SegmentResult r;
    auto it = std::lower_bound(cps.begin(), cps.end(), seg_lo);
    const auto end = std::lower_bound(it, cps.end(), seg_hi);
    for (const std::uint64_t p : primes) {
      while (it != end && *it < p) {
        r.snapshots.emplace_back(static_cast<std::size_t>(it - cps.begin()), r.total);
        ++it;
      }
      r.total.add(f.roots_at(p));
    }
    for (; it != end; ++it) {
      r.snapshots.emplace_back(static_cast<std::size_t>(it - cps.begin()), r.total);
    }
    return r;
  };
  const auto segments = map_prime_segments<SegmentResult>(0, hi, opts, per_segment);

  PrimeSums running;
  for (const auto& seg : segments) {
    for (const auto& [idx, snap] : seg.snapshots) {
      out[idx] = running;
      out[idx].merge(snap);
    }
    running.merge(seg.total);
  }
  return out;
}

LogEuler log_partial_euler(const SelbergInstance& f, double x, const SieveOptions& opts) {
  const double xs[] = {x};
  const auto sums = sweep_prime_sums(f, xs, opts);
  return {sums[0].log_euler.real(), std::fabs(sums[0].log_euler.imag())};
}

double prime_power_chebyshev(const SelbergInstance& f, double x) {
  const std::uint64_t n = floor_u64(x);
  CompensatedSum acc;
  SieveOptions opts;
  for_each_prime(2, isqrt(n), opts, [&](std::uint64_t p) {
    const EulerRoots roots = f.roots_at(p);
    const double log_p = std::log(static_cast<double>(p));
    std::uint64_t pw = p * p;
    for (int r = 2;; ++r) {
      acc.add(b_coeff(roots, r).real() * r * log_p);
      if (pw > n / p) break;
      pw *= p;
    }
  });
  return acc.value();
}

double prime_power_reciprocal(const SelbergInstance& f, double x) {
  const std::uint64_t n = floor_u64(x);
  CompensatedSum acc;
  SieveOptions opts;
  for_each_prime(2, isqrt(n), opts, [&](std::uint64_t p) {
    const EulerRoots roots = f.roots_at(p);
    std::uint64_t pw = p * p;
    for (int r = 2;; ++r) {
      acc.add(b_coeff(roots, r).real() / static_cast<double>(pw));
      if (pw > n / p) break;
      pw *= p;
    }
  });
  return acc.value();
}

double dirichlet_partial_sum(const SelbergInstance& f, double x, const SieveOptions& opts) {
  const double xs[] = {x};
  const auto sums = sweep_prime_sums(f, xs, opts);
  CompensatedSum acc;
  acc.add(sums[0].reciprocal.real());
  acc.add(prime_power_reciprocal(f, x));
  return acc.value();
}

std::vector<MertensReport> reports_on_grid(const SelbergInstance& f, ReportKind kind,
                                           std::span<const double> xs,
                                           const ReportConstants& constants,
                                           const SieveOptions& opts) {
  require_grid(xs);
  if (kind == ReportKind::mertens3 && !constants.leading) {
    throw ValidationError("mertens3 report needs a resolved leading coefficient");
  }
  if (kind == ReportKind::mertens2 && !constants.M) {
    throw ValidationError("mertens2 report needs the constant M");
  }
  if (kind == ReportKind::mertens1 && !constants.M1) {
    throw ValidationError("mertens1 report needs the constant M1");
  }
  const auto start = Clock::now();
  const auto sums = sweep_prime_sums(f, xs, opts);
  const double m = f.pole_order();

  std::vector<MertensReport> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const PrimeSums& s = sums[i];
    MertensReport r;
    r.instance = f.name();
    r.x = x;
    r.kind = kind;
    switch (kind) {
      case ReportKind::mertens3: {
        const double c = constants.leading->value.real();
        r.value = std::exp(s.log_euler.real());
        r.main_term = c * std::exp(kEulerGamma * m) * std::pow(std::log(x), m);
        r.constant_used = std::log(std::fabs(c));
        r.imag_residue = std::fabs(s.log_euler.imag());
        break;
      }
      case ReportKind::mertens2:
        r.value = s.reciprocal.real();
        r.main_term = m * std::log(std::log(x)) + *constants.M;
        r.constant_used = *constants.M;
        r.imag_residue = std::fabs(s.reciprocal.imag());
        break;
      case ReportKind::mertens1:
        r.value = s.log_weighted.real();
        r.main_term = m * std::log(x) + *constants.M1;
        r.constant_used = *constants.M1;
        r.imag_residue = std::fabs(s.log_weighted.imag());
        break;
      case ReportKind::pnt: {
        r.prime_part = s.chebyshev.real();
        r.prime_power_part = prime_power_chebyshev(f, x);
        CompensatedSum v;
        v.add(r.prime_part);
        v.add(r.prime_power_part);
        r.value = v.value();
        r.main_term = m * x;
        r.constant_used = m;
        r.imag_residue = std::fabs(s.chebyshev.imag());
        break;
      }
    }
    r.residual = r.value - r.main_term;
    r.rel_residual = r.main_term != 0.0 ? r.residual / std::fabs(r.main_term)
                                        : r.residual / x;
    out.push_back(std::move(r));
  }
  const double elapsed = seconds_since(start);
  for (auto& r : out) r.elapsed_seconds = elapsed;
  return out;
}

MertensReport mertens3_report(const SelbergInstance& f, double x,
                              const LeadingCoefficient& leading,
                              const SieveOptions& opts) {
  const double xs[] = {x};
  ReportConstants c;
  c.leading = leading;
  return reports_on_grid(f, ReportKind::mertens3, xs, c, opts)[0];
}

MertensReport mertens2_report(const SelbergInstance& f, double x, double M,
                              const SieveOptions& opts) {
  const double xs[] = {x};
  ReportConstants c;
  c.M = M;
  return reports_on_grid(f, ReportKind::mertens2, xs, c, opts)[0];
}

MertensReport mertens1_report(const SelbergInstance& f, double x, double M1,
                              const SieveOptions& opts) {
  const double xs[] = {x};
  ReportConstants c;
  c.M1 = M1;
  return reports_on_grid(f, ReportKind::mertens1, xs, c, opts)[0];
}

MertensReport pnt_report(const SelbergInstance& f, double x, const SieveOptions& opts) {
  const double xs[] = {x};
  return reports_on_grid(f, ReportKind::pnt, xs, {}, opts)[0];
}

ConstantEstimate mertens_constant_M(const SelbergInstance& f,
                                    const LeadingCoefficient& leading,
                                    std::uint64_t prime_bound, const SieveOptions& opts) {
  if (prime_bound < 1000) throw ValidationError("mertens_constant_M needs P >= 1000");
  const double xs[] = {static_cast<double>(prime_bound)};
  const auto sums = sweep_prime_sums(f, xs, opts);
  const double m = f.pole_order();
  const double log_c = std::log(std::abs(leading.value));
  ConstantEstimate out;
  out.value = log_c + m * kEulerGamma - sums[0].higher.real();
  out.tail_bound = 2.0 * static_cast<double>(f.degree()) / static_cast<double>(prime_bound);
  return out;
}

double mertens_constant_M_limit(const SelbergInstance& f, double x,
                                const SieveOptions& opts) {
  const double xs[] = {x};
  const auto sums = sweep_prime_sums(f, xs, opts);
  return sums[0].reciprocal.real() - f.pole_order() * std::log(std::log(x));
}

DecayFit fit_decay(std::span<const std::pair<double, double>> points) {
  DecayFit fit;
  fit.points.assign(points.begin(), points.end());
  std::vector<double> u;
  std::vector<double> v;
  for (const auto& [x, res] : points) {
    if (!(x > 1.0) || !std::isfinite(x)) throw ValidationError("fit_decay needs x > 1");
    if (!(std::fabs(res) >= 1e-300) || !std::isfinite(res)) {
      ++fit.dropped;
      continue;
    }
    u.push_back(std::sqrt(std::log(x)));
    v.push_back(std::log(std::fabs(res)));
  }
  if (u.size() < 4) {
    throw InsufficientDataError("fit_decay needs >= 4 points with nonzero residual, got " +
                                std::to_string(u.size()));
  }
  std::vector<double> sorted_x;
  for (const auto& [x, res] : points) sorted_x.push_back(x);
  std::sort(sorted_x.begin(), sorted_x.end());
  if (std::adjacent_find(sorted_x.begin(), sorted_x.end()) != sorted_x.end()) {
    throw ValidationError("fit_decay needs distinct x values");
  }
  double intercept = 0.0;
  const double slope = least_squares_slope(u, v, &intercept);
  fit.C_estimate = -slope;
  fit.intercept = intercept;
  double ss = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double e = v[i] - (intercept + slope * u[i]);
    ss += e * e;
  }
  fit.rms_misfit = std::sqrt(ss / static_cast<double>(u.size()));
  return fit;
}

M1Estimate mertens_constant_M1(const SelbergInstance& f, double M, double U,
                               double x_max, const SieveOptions& opts) {
  if (!(U >= 1e4)) throw ValidationError("mertens_constant_M1 needs U >= 10^4");
  if (!(x_max >= 2.0)) throw ValidationError("mertens_constant_M1 needs x_max >= 2");
  const std::uint64_t u_int = floor_u64(U);
  f.require_coverage(u_int);
  const double m = f.pole_order();

  // G(u) = (S - M) log u - m H(u), H(u) = log u (log log u - 1), is an
  // antiderivative of Delta_2F(u)/u on any interval where S is constant.
  auto H = [](double log_u) { return log_u * (std::log(log_u) - 1.0); };

  const auto grid = half_decade_grid(U);
  std::vector<std::pair<double, double>> deltas;
  std::size_t next_cp = 0;

  CompensatedSum S;
  CompensatedSum integral;
  double prev_log = 0.0;
  double prev_h = 0.0;
  bool have_prev = false;

  auto record_until = [&](double limit) {
    while (next_cp < grid.size() && grid[next_cp] < limit) {
      const double x = grid[next_cp++];
      deltas.emplace_back(x, S.value() - m * std::log(std::log(x)) - M);
    }
  };

  for_each_prime(2, u_int, opts, [&](std::uint64_t q) {
    record_until(static_cast<double>(q));
    const double log_q = std::log(static_cast<double>(q));
    const double h_q = H(log_q);
    if (have_prev) {
      integral.add((S.value() - M) * (log_q - prev_log) - m * (h_q - prev_h));
    }
    S.add(b_coeff(f.roots_at(q), 1).real() / static_cast<double>(q));
    prev_log = log_q;
    prev_h = h_q;
    have_prev = true;
  });
  const double log_U = std::log(U);
  integral.add((S.value() - M) * (log_U - prev_log) - m * (H(log_U) - prev_h));
  record_until(std::numeric_limits<double>::infinity());

  M1Estimate out;
  out.integral = integral.value();
  const double log2 = std::log(2.0);
  out.value = -out.integral + M * log2 + m * log2 * (std::log(log2) - 1.0);

  try {
    out.envelope = fit_decay(deltas);
    const double C = out.envelope->C_estimate;
    const double V = std::sqrt(log_U);
    out.tail_estimate = C > 0.0 ? 2.0 * std::exp(out.envelope->intercept - C * V) *
                                      (V / C + 1.0 / (C * C))
                                : std::numeric_limits<double>::infinity();
  } catch (const InsufficientDataError&) {
    out.tail_estimate = std::numeric_limits<double>::infinity();
  }

  const double xs[] = {x_max};
  const auto sums = sweep_prime_sums(f, xs, opts);
  out.limit_value = sums[0].log_weighted.real() - m * std::log(x_max);
  out.gap = std::fabs(out.value - out.limit_value);
  out.inconsistent = out.gap > 1e-2;
  return out;
}

LeadingCoefficient empirical_leading_coefficient(const SelbergInstance& f, double x_max,
                                                 const SieveOptions& opts) {
  const auto xs = half_decade_grid(x_max);
  const auto sums = sweep_prime_sums(f, xs, opts);
  std::vector<Mertens3Sample> samples;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    samples.push_back({xs[i], sums[i].log_euler.real()});
  }
  return fit_leading_coefficient(f.pole_order(), samples);
}

double fit_pole_order(const SelbergInstance& f, std::span<const double> xs,
                      const SieveOptions& opts) {
  require_grid(xs);
  if (xs.size() < 2) throw InsufficientDataError("fit_pole_order needs >= 2 points");
  const auto sums = sweep_prime_sums(f, xs, opts);
  std::vector<double> u;
  std::vector<double> v;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    u.push_back(std::log(std::log(xs[i])));
    v.push_back(sums[i].reciprocal.real());
  }
  return least_squares_slope(u, v);
}

LeadingCoefficient resolve_leading(const SelbergInstance& f, double empirical_x_max,
                                   const SieveOptions& opts) {
  if (f.leading_source().kind != LeadingSource::Kind::empirical_fit) {
    return leading_coefficient(f);
  }
  const double cap = static_cast<double>(f.coverage());
  return empirical_leading_coefficient(f, std::min(empirical_x_max, cap), opts);
}

}  // namespace selmer
