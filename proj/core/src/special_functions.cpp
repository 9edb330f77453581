#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "selmer/analysis.hpp"
#include "selmer/error.hpp"
#include "selmer/summation.hpp"

namespace selmer {

namespace {

constexpr int kMaxBernoulli = 40;

// B_{2k} / (2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}, k = 1..kMaxBernoulli.
std::array<double, kMaxBernoulli + 1> make_bernoulli_ratios() {
  std::array<double, kMaxBernoulli + 1> c{};
  const double two_pi = 2.0 * std::numbers::pi;
  double scale = 1.0;
  // Exact values where the truncated zeta sum below would be too coarse.
  constexpr double kLow[] = {0.0, 1.0 / 6 / 2, -1.0 / 30 / 24, 1.0 / 42 / 720,
                             -1.0 / 30 / 40320};
  for (int k = 1; k <= kMaxBernoulli; ++k) {
    scale /= two_pi * two_pi;
    if (k <= 4) {
      c[k] = kLow[k];
      continue;
    }
    double z = 0.0;
    for (int n = 200; n >= 1; --n) z += std::pow(static_cast<double>(n), -2.0 * k);
    c[k] = ((k % 2 == 1) ? 2.0 : -2.0) * z * scale;
  }
  return c;
}

const std::array<double, kMaxBernoulli + 1>& bernoulli_ratios() {
  static const auto c = make_bernoulli_ratios();
  return c;
}

void check_em_domain(cplx s) {
  if (s == cplx{1.0, 0.0}) throw PoleError("zeta has a pole at s = 1");
  if (!(s.real() > 0.0)) throw ValidationError("Euler-Maclaurin evaluator needs Re s > 0");
  if (std::abs(s) > 1000.0) throw ValidationError("Euler-Maclaurin evaluator needs |s| <= 1000");
}

}  // namespace

cplx hurwitz_em(cplx s, double a) {
  check_em_domain(s);
  if (!(a > 0.0 && a <= 1.0)) throw ValidationError("hurwitz_em needs a in (0, 1]");

  const auto n_cut = static_cast<int>(std::ceil(std::abs(s))) + 16;
  ComplexCompensatedSum head;
  for (int n = n_cut - 1; n >= 0; --n) {
    head.add(std::exp(-s * std::log(n + a)));
  }
  const double big = n_cut + a;
  const double log_big = std::log(big);
  const cplx big_pow = std::exp(-s * log_big);  // (N+a)^{-s}
  cplx sum = head.value() + big * big_pow / (s - 1.0) + 0.5 * big_pow;

  // Remainder terms c_k (s)_{2k-1} (N+a)^{-s-2k+1}.
  const auto& c = bernoulli_ratios();
  cplx rising = s;                    // (s)_{2k-1}
  cplx power = big_pow / big;         // (N+a)^{-s-2k+1}
  for (int k = 1; k <= kMaxBernoulli; ++k) {
    const cplx term = c[k] * rising * power;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    power /= big * big;
  }
  return sum;
}

cplx zeta_em(cplx s) { return hurwitz_em(s, 1.0); }

cplx dirichlet_l_em(cplx s, std::int64_t d) {
  if (!is_fundamental_discriminant(d)) {
    throw ValidationError(std::to_string(d) + " is not a fundamental discriminant");
  }
  const auto q = static_cast<std::uint64_t>(std::llabs(d));
  ComplexCompensatedSum acc;
  for (std::uint64_t a = 1; a < q; ++a) {
    const int chi = kronecker_symbol(d, a);
    if (chi == 0) continue;
    const cplx h = hurwitz_em(s, static_cast<double>(a) / static_cast<double>(q));
    acc.add(chi > 0 ? h : -h);
  }
  return std::exp(-s * std::log(static_cast<double>(q))) * acc.value();
}

double digamma(double x) {
  if (!(x > 0.0)) throw ValidationError("digamma needs x > 0");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series with B_2 .. B_14.
  static constexpr double kB[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30,
                                  5.0 / 66, -691.0 / 2730, 7.0 / 6};
  const double inv2 = 1.0 / (x * x);
  double power = inv2;
  double series = 0.0;
  for (int k = 1; k <= 7; ++k) {
    series += kB[k - 1] / (2.0 * k) * power;
    power *= inv2;
  }
  return shift + std::log(x) - 0.5 / x - series;
}

double dirichlet_L1(std::int64_t d) {
  if (!is_fundamental_discriminant(d)) {
    throw ValidationError(std::to_string(d) + " is not a fundamental discriminant");
  }
  const auto q = static_cast<std::uint64_t>(std::llabs(d));
  if (q > 10'000) throw ValidationError("dirichlet_L1 needs |d| <= 10^4");
  CompensatedSum acc;
  for (std::uint64_t a = 1; a < q; ++a) {
    const int chi = kronecker_symbol(d, a);
    if (chi == 0) continue;
    const double v = digamma(static_cast<double>(a) / static_cast<double>(q));
    acc.add(chi > 0 ? v : -v);
  }
  return -acc.value() / static_cast<double>(q);
}

namespace {

// sum_{r>=1} (-1)^{r+1} w^r / (r r!)
double ein_alternating(double w) {
  double term = 1.0;  // w^r / r!
  CompensatedSum acc;
  for (int r = 1; r < 200; ++r) {
    term *= w / r;
    const double t = term / r;
    acc.add((r % 2 == 1) ? t : -t);
    if (t < 1e-18 * std::fabs(acc.value())) break;
  }
  return acc.value();
}

// e^{-w} sum_{n>=1} H_n w^n / n!, all terms positive.
double ein_harmonic(double w) {
  double term = 1.0;  // w^n / n!
  double harmonic = 0.0;
  CompensatedSum acc;
  for (int n = 1; n < 2000; ++n) {
    term *= w / n;
    harmonic += 1.0 / n;
    const double t = term * harmonic;
    acc.add(t);
    if (n > w && t < 1e-18 * acc.value()) break;
  }
  return std::exp(-w) * acc.value();
}

// E1 by modified Lentz on the continued fraction
// e^{-y} / (y + 1 - 1^2/(y + 3 - 2^2/(y + 5 - ...))).
double e1_continued_fraction(double y) {
  constexpr double kTiny = 1e-300;
  double b = y + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10'000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-y);
}

}  // namespace

double ein(double w) {
  if (!(w >= 0.0)) throw ValidationError("ein needs w >= 0");
  if (w == 0.0) return 0.0;
  return w <= 2.0 ? ein_alternating(w) : ein_harmonic(w);
}

double exp_integral_E1(double y) {
  if (!(y > 0.0)) throw ValidationError("E1 needs y > 0");
  if (y < 1.0) return -kEulerGamma - std::log(y) + ein_alternating(y);
  return e1_continued_fraction(y);
}

double gamma_euler() { return ein(1.0) - exp_integral_E1(1.0); }

}  // namespace selmer
