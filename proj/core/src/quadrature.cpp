#include "selmer/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "selmer/error.hpp"
#include "selmer/summation.hpp"

namespace selmer {

namespace {

using cplx = std::complex<double>;

constexpr int kGaussOrder = 64;

struct GaussRule {
  std::array<double, kGaussOrder> nodes{};
  std::array<double, kGaussOrder> weights{};
};

// Legendre nodes on [-1, 1] by Newton iteration from the Chebyshev guess.
GaussRule make_gauss_rule() {
  GaussRule rule;
  const int n = kGaussOrder;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

struct Panel {
  double a, b;
  cplx fa, fm, fb;
  cplx whole;
  double tol;
  int depth;
};

cplx simpson(double a, double b, cplx fa, cplx fm, cplx fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

QuadratureResult adaptive_simpson(const ComplexIntegrand& f, double a, double b,
                                  double tol, std::size_t max_nodes) {
  if (!(tol > 0.0)) throw ValidationError("adaptive_simpson: tol must be positive");
  constexpr int kInitialPanels = 16;
  constexpr int kMaxDepth = 48;

  QuadratureResult out;
  std::vector<Panel> stack;
  const double h = (b - a) / kInitialPanels;
  std::vector<cplx> grid(2 * kInitialPanels + 1);
  for (int i = 0; i <= 2 * kInitialPanels; ++i) grid[i] = f(a + 0.5 * h * i);
  out.nodes = grid.size();
  for (int i = kInitialPanels - 1; i >= 0; --i) {
    const double pa = a + h * i;
    const double pb = (i == kInitialPanels - 1) ? b : a + h * (i + 1);
    stack.push_back({pa, pb, grid[2 * i], grid[2 * i + 1], grid[2 * i + 2],
                     simpson(pa, pb, grid[2 * i], grid[2 * i + 1], grid[2 * i + 2]),
                     tol / kInitialPanels, 0});
  }

  ComplexCompensatedSum total;
  CompensatedSum err;
  bool exhausted = false;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    if (exhausted) {
      total.add(p.whole);
      err.add(std::abs(p.whole) + p.tol);
      continue;
    }
    const cplx flm = f(0.5 * (p.a + m));
    const cplx frm = f(0.5 * (m + p.b));
    out.nodes += 2;
    const cplx left = simpson(p.a, m, p.fa, flm, p.fm);
    const cplx right = simpson(m, p.b, p.fm, frm, p.fb);
    const cplx diff = left + right - p.whole;
    if (std::abs(diff) <= 15.0 * p.tol || p.depth >= kMaxDepth) {
      total.add(left + right + diff / 15.0);
      err.add(std::abs(diff) / 15.0);
      continue;
    }
    if (out.nodes + 4 > max_nodes) {
      exhausted = true;
      total.add(left + right);
      err.add(std::abs(diff));
      continue;
    }
    // Right half pushed first so panels are consumed left to right.
    stack.push_back({m, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
    stack.push_back({p.a, m, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
  }
  out.value = total.value();
  out.error_estimate = err.value();
  if (exhausted) {
    throw AccuracyError("adaptive Simpson hit the node cap of " +
                            std::to_string(max_nodes),
                        out.value.real(), out.error_estimate);
  }
  return out;
}

cplx gauss_legendre_fixed(const ComplexIntegrand& f, double a, double b,
                          std::size_t panels) {
  const auto& rule = gauss_rule();
  const double h = (b - a) / static_cast<double>(panels);
  ComplexCompensatedSum total;
  for (std::size_t k = 0; k < panels; ++k) {
    const double lo = a + h * static_cast<double>(k);
    const double mid = lo + 0.5 * h;
    cplx panel{};
    for (int i = 0; i < kGaussOrder; ++i) {
      panel += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    }
    total.add(0.5 * h * panel);
  }
  return total.value();
}

QuadratureResult gauss_legendre(const ComplexIntegrand& f, double a, double b,
                                double tol, std::size_t max_nodes) {
  std::size_t panels = 1;
  cplx prev = gauss_legendre_fixed(f, a, b, panels);
  std::size_t used = kGaussOrder;
  for (;;) {
    if (used + 2 * panels * kGaussOrder > max_nodes) {
      throw AccuracyError("Gauss-Legendre refinement exceeded " +
                              std::to_string(max_nodes) + " nodes",
                          prev.real(), std::numeric_limits<double>::infinity());
    }
    panels *= 2;
    const cplx next = gauss_legendre_fixed(f, a, b, panels);
    used += panels * kGaussOrder;
    const double diff = std::abs(next - prev);
    if (diff <= tol) return {next, diff, used};
    prev = next;
  }
}

}  // namespace selmer
