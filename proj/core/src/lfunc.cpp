#include "selmer/lfunc.hpp"

#include <algorithm>
#include <cmath>

#include "selmer/analysis.hpp"
#include "selmer/error.hpp"
#include "selmer/primes.hpp"

namespace selmer {

namespace {

cplx ipow(cplx z, int r) {
  cplx out{1.0, 0.0};
  for (int i = 0; i < r; ++i) out *= z;
  return out;
}

// Roots of z^2 - lambda z + 1 for |lambda| <= 2, taken on the branch where
// alpha * beta = 1 holds to rounding: alpha = lambda/2 + i sqrt(1 - lambda^2/4).
std::pair<cplx, cplx> hecke_roots(double lambda) {
  const double h = lambda / 2.0;
  const double s = std::sqrt(std::max(0.0, (1.0 - h) * (1.0 + h)));
  return {cplx{h, s}, cplx{h, -s}};
}

}  // namespace

double EulerRoots::max_modulus() const noexcept {
  double m = 0.0;
  for (const auto& a : roots()) m = std::max(m, std::abs(a));
  return m;
}

SelbergInstance SelbergInstance::zeta() {
  SelbergInstance f;
  f.name_ = "zeta";
  f.degree_ = 1;
  f.pole_order_ = 1;
  f.leading_ = {LeadingSource::Kind::exact, cplx{1.0, 0.0}, 0};
  f.family_ = Family::zeta;
  f.roots_ = [](std::uint64_t p) {
    EulerRoots r;
    r.p = p;
    r.degree = 1;
    r.alpha[0] = 1.0;
    return r;
  };
  return f;
}

SelbergInstance SelbergInstance::dirichlet(std::int64_t d) {
  if (!is_fundamental_discriminant(d)) {
    throw ValidationError(std::to_string(d) + " is not a fundamental discriminant");
  }
  SelbergInstance f;
  f.name_ = "dirichlet(" + std::to_string(d) + ")";
  f.degree_ = 1;
  f.pole_order_ = 0;
  f.leading_ = {LeadingSource::Kind::analytic_l1, cplx{}, d};
  f.family_ = Family::dirichlet;
  f.discriminant_ = d;
  f.roots_ = [d](std::uint64_t p) {
    EulerRoots r;
    r.p = p;
    r.degree = 1;
    r.alpha[0] = static_cast<double>(kronecker_symbol(d, p));
    return r;
  };
  return f;
}

SelbergInstance SelbergInstance::dedekind_quadratic(std::int64_t d) {
  if (!is_fundamental_discriminant(d)) {
    throw ValidationError(std::to_string(d) + " is not a fundamental discriminant");
  }
  SelbergInstance f;
  f.name_ = "dedekind(" + std::to_string(d) + ")";
  f.degree_ = 2;
  f.pole_order_ = 1;
  // zeta_K = zeta * L(., chi_d), so the residue is L(1, chi_d).
  f.leading_ = {LeadingSource::Kind::analytic_l1, cplx{}, d};
  f.family_ = Family::dedekind_quadratic;
  f.discriminant_ = d;
  f.roots_ = [d](std::uint64_t p) {
    EulerRoots r;
    r.p = p;
    r.degree = 2;
    r.alpha[0] = 1.0;
    r.alpha[1] = static_cast<double>(kronecker_symbol(d, p));
    return r;
  };
  return f;
}

SelbergInstance SelbergInstance::rankin_selberg(std::shared_ptr<const CoefficientTable> tf,
                                                std::shared_ptr<const CoefficientTable> tg,
                                                std::optional<double> leading) {
  if (!tf || !tg) throw ValidationError("rankin_selberg: missing coefficient table");
  if (tf->weight() != tg->weight()) {
    throw ValidationError("rankin_selberg: tables must have equal weight");
  }
  const bool same = (tf == tg) || (*tf == *tg);
  SelbergInstance f;
  f.name_ = same ? "rankin(f x f)" : "rankin(f x g)";
  f.degree_ = 4;
  f.pole_order_ = same ? 1 : 0;
  if (leading) {
    f.leading_ = {LeadingSource::Kind::config, cplx{*leading, 0.0}, 0};
  } else {
    f.leading_ = {LeadingSource::Kind::empirical_fit, cplx{}, 0};
  }
  f.family_ = Family::rankin_selberg;
  f.coverage_ = std::min(tf->coverage(), tg->coverage());
  f.roots_ = [tf, tg](std::uint64_t p) {
    const auto lf = tf->lambda(p);
    const auto lg = tg->lambda(p);
    if (!lf || !lg) {
      throw CoverageError("no eigenvalue data at p = " + std::to_string(p),
                          std::min(tf->coverage(), tg->coverage()));
    }
    const auto [af, bf] = hecke_roots(*lf);
    const auto [ag, bg] = hecke_roots(*lg);
    EulerRoots r;
    r.p = p;
    r.degree = 4;
    r.alpha[0] = af * ag;
    r.alpha[1] = af * bg;
    r.alpha[2] = bf * ag;
    r.alpha[3] = bf * bg;
    return r;
  };
  return f;
}

SelbergInstance SelbergInstance::custom(std::string name, std::size_t degree,
                                        int pole_order, LeadingSource leading,
                                        std::uint64_t coverage, RootGenerator roots,
                                        bool self_dual) {
  if (degree == 0 || degree > kMaxDegree) {
    throw ValidationError("degree must be in [1, " + std::to_string(kMaxDegree) + "]");
  }
  if (!roots) throw ValidationError("custom instance needs a root generator");
  SelbergInstance f;
  f.name_ = std::move(name);
  f.degree_ = degree;
  f.pole_order_ = pole_order;
  f.leading_ = leading;
  f.family_ = Family::custom;
  f.coverage_ = coverage;
  f.self_dual_ = self_dual;
  f.roots_ = std::move(roots);
  return f;
}

void SelbergInstance::require_coverage(std::uint64_t x) const {
  if (x > coverage_) {
    throw CoverageError(name_ + ": x = " + std::to_string(x) +
                            " beyond coefficient coverage",
                        coverage_);
  }
}

EulerRoots SelbergInstance::roots_at(std::uint64_t p) const {
  if (p > coverage_) {
    throw CoverageError(name_ + ": prime " + std::to_string(p) +
                            " beyond coefficient coverage",
                        coverage_);
  }
  EulerRoots r = roots_(p);
  r.p = p;
  if (r.degree != degree_) {
    throw ValidationError(name_ + ": root generator returned wrong degree");
  }
  return r;
}

EulerRoots local_roots(const SelbergInstance& f, std::uint64_t p) {
  return f.roots_at(p);
}

cplx b_coeff(const EulerRoots& roots, int r) {
  if (r < 1) throw ValidationError("b_coeff: r must be >= 1");
  cplx sum{};
  for (const auto& a : roots.roots()) sum += ipow(a, r);
  return sum / static_cast<double>(r);
}

cplx b_coeff(const SelbergInstance& f, std::uint64_t p, int r) {
  return b_coeff(f.roots_at(p), r);
}

cplx a_coeff(const SelbergInstance& f, std::uint64_t p, int r) {
  if (r < 0 || r > 64) throw ValidationError("a_coeff: r must be in [0, 64]");
  const EulerRoots roots = f.roots_at(p);
  // Newton: n h_n = sum_{i=1}^{n} P_i h_{n-i}, P_i the i-th power sum.
  std::vector<cplx> power_sum(r + 1);
  for (int i = 1; i <= r; ++i) {
    cplx s{};
    for (const auto& a : roots.roots()) s += ipow(a, i);
    power_sum[i] = s;
  }
  std::vector<cplx> h(r + 1);
  h[0] = 1.0;
  for (int n = 1; n <= r; ++n) {
    cplx acc{};
    for (int i = 1; i <= n; ++i) acc += power_sum[i] * h[n - i];
    h[n] = acc / static_cast<double>(n);
  }
  return h[r];
}

LeadingCoefficient leading_coefficient(const SelbergInstance& f,
                                       std::span<const Mertens3Sample> samples) {
  const auto& src = f.leading_source();
  switch (src.kind) {
    case LeadingSource::Kind::exact:
    case LeadingSource::Kind::config:
      return {src.value, 0.0, src.kind};
    case LeadingSource::Kind::analytic_l1:
      return {cplx{dirichlet_L1(src.discriminant), 0.0}, 1e-10, src.kind};
    case LeadingSource::Kind::empirical_fit:
      break;
  }
  return fit_leading_coefficient(f.pole_order(), samples);
}

LeadingCoefficient fit_leading_coefficient(int pole_order,
                                           std::span<const Mertens3Sample> samples) {
  if (samples.size() < 4) {
    throw InsufficientDataError("empirical leading coefficient needs >= 4 samples, got " +
                                std::to_string(samples.size()));
  }
  const double m = pole_order;
  std::vector<double> y;
  y.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!(s.x > 1.0) || (i > 0 && s.x <= samples[i - 1].x)) {
      throw ValidationError("empirical fit samples must be ascending with x > 1");
    }
    y.push_back(s.log_partial_product - m * kEulerGamma -
                m * std::log(std::log(s.x)));
  }
  const double last = y.back();
  double spread = 0.0;
  for (std::size_t i = y.size() / 2; i < y.size(); ++i) {
    spread = std::max(spread, std::fabs(y[i] - last));
  }
  const double c = std::exp(last);
  return {cplx{c, 0.0}, c * spread, LeadingSource::Kind::empirical_fit};
}

}  // namespace selmer
