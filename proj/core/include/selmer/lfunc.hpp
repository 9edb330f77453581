#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "selmer/coefficients.hpp"

namespace selmer {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxDegree = 8;
inline constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

// Inverse roots alpha_1(p), ..., alpha_k(p) of the local factor at p.
// Ramified or degenerate factors are padded with exact zeros up to k.
struct EulerRoots {
  std::uint64_t p = 0;
  std::size_t degree = 0;
  std::array<cplx, kMaxDegree> alpha{};

  std::span<const cplx> roots() const noexcept { return {alpha.data(), degree}; }
  double max_modulus() const noexcept;
};

enum class Family { zeta, dirichlet, dedekind_quadratic, rankin_selberg, custom };

// Where c_{-m} = lim_{s->1} (s-1)^m F(s) comes from.
struct LeadingSource {
  enum class Kind { exact, analytic_l1, config, empirical_fit };
  Kind kind = Kind::exact;
  cplx value{1.0, 0.0};          // exact / config
  std::int64_t discriminant = 0;  // analytic_l1
};

// Analytic hypotheses an instance is assumed to satisfy. They are recorded,
// never checked.
struct Assumptions {
  bool absolutely_convergent = true;   // Dirichlet series converges for Re s > 1
  bool prime_supported_log = true;     // log F has coefficients on prime powers only
  bool euler_product = true;           // degree-k product with |alpha| <= 1
  bool zero_free_region = true;        // classical-shape zero-free region near Re s = 1
};

class SelbergInstance {
 public:
  using RootGenerator = std::function<EulerRoots(std::uint64_t p)>;

  static SelbergInstance zeta();
  // Throws ValidationError unless d is a fundamental discriminant.
  static SelbergInstance dirichlet(std::int64_t d);
  static SelbergInstance dedekind_quadratic(std::int64_t d);
  // L(s, f x g) from normalized eigenvalue tables of equal weight. When the
  // two tables are identical the instance has a simple pole (m = 1),
  // otherwise m = 0. Without `leading`, c_{-m} is fitted empirically.
  static SelbergInstance rankin_selberg(std::shared_ptr<const CoefficientTable> f,
                                        std::shared_ptr<const CoefficientTable> g,
                                        std::optional<double> leading = std::nullopt);
  static SelbergInstance custom(std::string name, std::size_t degree, int pole_order,
                                LeadingSource leading, std::uint64_t coverage,
                                RootGenerator roots, bool self_dual);

  const std::string& name() const noexcept { return name_; }
  std::size_t degree() const noexcept { return degree_; }
  // m > 0: pole of order m at s = 1; m < 0: zero of order -m; m = 0: regular.
  int pole_order() const noexcept { return pole_order_; }
  const LeadingSource& leading_source() const noexcept { return leading_; }
  Family family() const noexcept { return family_; }
  std::int64_t discriminant() const noexcept { return discriminant_; }
  // Largest prime for which Euler roots are available.
  std::uint64_t coverage() const noexcept { return coverage_; }
  bool self_dual() const noexcept { return self_dual_; }
  const Assumptions& assumptions() const noexcept { return assumptions_; }

  // Throws CoverageError if p > coverage().
  EulerRoots roots_at(std::uint64_t p) const;
  void require_coverage(std::uint64_t x) const;

 private:
  SelbergInstance() = default;

  std::string name_;
  std::size_t degree_ = 1;
  int pole_order_ = 0;
  LeadingSource leading_;
  Family family_ = Family::custom;
  std::int64_t discriminant_ = 0;
  std::uint64_t coverage_ = kUnbounded;
  bool self_dual_ = true;
  Assumptions assumptions_;
  RootGenerator roots_;
};

EulerRoots local_roots(const SelbergInstance& f, std::uint64_t p);

// b_F(p^r) = (alpha_1(p)^r + ... + alpha_k(p)^r) / r, r >= 1.
cplx b_coeff(const SelbergInstance& f, std::uint64_t p, int r);
cplx b_coeff(const EulerRoots& roots, int r);

// a_F(p^r): coefficient of z^r in prod_j (1 - alpha_j z)^{-1}, via Newton's
// identities. 0 <= r <= 64.
cplx a_coeff(const SelbergInstance& f, std::uint64_t p, int r);

struct Mertens3Sample {
  double x;
  double log_partial_product;  // log F_x(1)
};

struct LeadingCoefficient {
  cplx value;
  double uncertainty = 0.0;  // 0 for exact / analytic sources
  LeadingSource::Kind source = LeadingSource::Kind::exact;
};

// Resolves c_{-m}. The empirical-fit source needs at least four samples of
// log F_x(1) on an ascending grid; the estimate is
// exp(log F_x(1) - m*gamma - m*log log x) at the largest x, and the reported
// uncertainty is the spread of that quantity over the upper half of the grid.
LeadingCoefficient leading_coefficient(const SelbergInstance& f,
                                       std::span<const Mertens3Sample> samples = {});

// The empirical estimator on its own, whatever the instance's declared source.
LeadingCoefficient fit_leading_coefficient(int pole_order,
                                           std::span<const Mertens3Sample> samples);

}  // namespace selmer
