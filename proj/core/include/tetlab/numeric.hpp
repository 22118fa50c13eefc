#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <type_traits>
#include <vector>

#include "tetlab/distribution.hpp"
#include "tetlab/errors.hpp"

namespace tetlab {

inline constexpr int kDefaultScanSteps = 4096;

/// Bisection-refines a sign change of f inside [a, b] (fa, fb of opposite sign).
template <class F>
double bisect(F&& f, double a, double b, double fa, double tol) {
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/// All sign-change roots of f on [lo, hi], found by scanning `scan_steps`
/// equal sub-intervals and bisecting each bracket down to 1e-12 (hi - lo).
/// Roots are sorted ascending. A root that touches zero without crossing is
/// only reported if it lands exactly on a scan node.
template <class F>
std::vector<double> find_roots(F&& f, double lo, double hi, int scan_steps = kDefaultScanSteps) {
  std::vector<double> roots;
  if (!(hi > lo) || scan_steps < 1) return roots;
  const double tol = 1e-12 * (hi - lo);
  const double h = (hi - lo) / scan_steps;
  double x0 = lo;
  double f0 = f(x0);
  if (f0 == 0.0) roots.push_back(x0);
  for (int i = 1; i <= scan_steps; ++i) {
    const double x1 = i == scan_steps ? hi : lo + i * h;
    const double f1 = f(x1);
    if (f1 == 0.0) {
      roots.push_back(x1);
    } else if (f0 != 0.0 && ((f0 < 0.0) != (f1 < 0.0))) {
      roots.push_back(bisect(f, x0, x1, f0, tol));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

/// Central difference with step 1e-6 max(1, |x|).
template <class F>
double central_difference(F&& f, double x) {
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Composite trapezoid of f sampled on the grid.
template <class F>
double trapezoid(F&& f, const Grid1D& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid[i]);
  return trapezoid(std::span<const double>(v), grid.spacing());
}

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  bool converged = false;
  int panels = 0;
};

namespace detail {

// 15-point Kronrod nodes (positive half) and weights, with the embedded
// 7-point Gauss weights for the even-indexed Kronrod nodes.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
auto kronrod_panel(F& f, double a, double b) {
  using T = std::invoke_result_t<F&, double>;
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = r * kKronrodNodes[j];
    const T s = f(c - dx) + f(c + dx);
    kron += s * kKronrodWeights[j];
    if (j % 2 == 1) gauss += s * kGaussWeights[j / 2];
  }
  return Panel<T>{a, b, kron * r, std::abs(kron * r - gauss * r)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) quadrature over [a, b], starting
/// from `initial_panels` equal panels and bisecting the worst panel until the
/// summed error estimate is below max(abs_tol, rel_tol |I|). Works for real
/// and complex integrands.
template <class F>
auto integrate_gauss_kronrod(F&& f, double a, double b, int initial_panels, double rel_tol,
                             double abs_tol = 0.0, int max_panels = 20000) {
  using T = std::invoke_result_t<F&, double>;
  QuadratureResult<T> out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }
  initial_panels = std::max(initial_panels, 1);
  std::priority_queue<detail::Panel<T>> heap;
  T total{};
  double err = 0.0;
  const double w = (b - a) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double pa = a + i * w;
    const double pb = i + 1 == initial_panels ? b : a + (i + 1) * w;
    auto p = detail::kronrod_panel(f, pa, pb);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  int panels = initial_panels;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && panels < max_panels) {
    auto worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    auto left = detail::kronrod_panel(f, worst.a, m);
    auto right = detail::kronrod_panel(f, m, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed accumulated cancellation from the incremental updates.
  T resum{};
  double reerr = 0.0;
  while (!heap.empty()) {
    resum += heap.top().value;
    reerr += heap.top().error;
    heap.pop();
  }
  out.value = resum;
  out.error = reerr;
  out.panels = panels;
  out.converged = reerr <= std::max(abs_tol, rel_tol * std::abs(resum));
  return out;
}

}  // namespace tetlab
