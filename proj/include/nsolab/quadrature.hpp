#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

namespace nsolab {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1] or [a, b].
Rule gauss_legendre(int n);
Rule gauss_legendre(int n, double a, double b);
// Gauss-Hermite for weight exp(-x^2) (Golub-Welsch).
Rule gauss_hermite(int n);

struct AdaptiveOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_panels = 20000;
};

template <class T>
struct QuadResult {
  T value{};
  double abs_error = 0.0;
  int panels = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
auto gk15(F& f, double a, double b) {
  using T = decltype(f(a));
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    T f1 = f(c - dx), f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  return Panel<T>{a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace detail

// Adaptive G7-K15 integration over consecutive breakpoints; the panel with the
// largest error estimate is bisected until the total estimate meets the tolerance.
template <class F>
auto integrate_adaptive(F&& f, std::span<const double> breaks, const AdaptiveOptions& opt = {}) {
  using T = decltype(f(0.0));
  using P = detail::Panel<T>;
  std::priority_queue<P> heap;
  QuadResult<T> r;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    heap.push(detail::gk15(f, breaks[i], breaks[i + 1]));
  }
  auto totals = [&] {
    T v{};
    double e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().err;
      copy.pop();
    }
    return std::pair<T, double>(v, e);
  };
  auto [v, e] = totals();
  while (!heap.empty()) {
    double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(v));
    if (e <= target) {
      r.converged = true;
      break;
    }
    if (int(heap.size()) >= opt.max_panels) break;
    P worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;
    }
    P left = detail::gk15(f, worst.a, mid);
    P right = detail::gk15(f, mid, worst.b);
    v += left.value + right.value - worst.value;
    e += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    if (heap.size() % 64 == 0) std::tie(v, e) = totals();
  }
  std::tie(v, e) = totals();
  if (!r.converged) r.converged = e <= std::max(opt.abs_tol, opt.rel_tol * std::abs(v));
  r.value = v;
  r.abs_error = e;
  r.panels = int(heap.size());
  return r;
}

// Breakpoints from a to b, at the given extra points, with no panel wider than max_width.
std::vector<double> panel_breaks(double a, double b, double max_width,
                                 std::span<const double> extra = {});

}  // namespace nsolab
