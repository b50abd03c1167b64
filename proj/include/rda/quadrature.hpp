// Globally adaptive Gauss-Kronrod (7/15) quadrature with interval hints and
// maps for semi-infinite and infinite ranges.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace rda::quad {

struct Options {
  double abs_tol = 1e-9;
  double rel_tol = 0.0;
  int max_intervals = 2000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Raised when refinement stops before the tolerance is met.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(double achieved, double requested);
  double achieved() const { return achieved_; }
  double requested() const { return requested_; }

 private:
  double achieved_;
  double requested_;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
};

template <class F>
Segment gk15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    kron += kWgk[j] * (f1[j] + f2[j]);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kron;
  double asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  asc *= std::abs(half);
  const double value = kron * half;
  double err = std::abs((kron - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
  err = std::max(err, floor);
  if (!std::isfinite(value)) err = std::numeric_limits<double>::infinity();
  return {a, b, value, err};
}

}  // namespace detail

/// Integrates f over [a, b]; interior points listed in `hints` start as
/// interval boundaries, which puts refinement where narrow peaks sit.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {},
                 std::vector<double> hints = {}) {
  if (a == b) return {};
  const double sign = a < b ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);
  std::vector<double> cuts{a};
  std::sort(hints.begin(), hints.end());
  for (double h : hints) {
    if (h > a && h < b && h - cuts.back() > 1e-12 * (b - a)) cuts.push_back(h);
  }
  cuts.push_back(b);

  auto worse = [](const detail::Segment& l, const detail::Segment& r) { return l.error < r.error; };
  std::vector<detail::Segment> heap;
  heap.reserve(64);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) heap.push_back(detail::gk15(f, cuts[i], cuts[i + 1]));
  std::make_heap(heap.begin(), heap.end(), worse);

  auto totals = [&heap]() {
    double v = 0.0, e = 0.0;
    for (const auto& s : heap) {
      v += s.value;
      e += s.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value))) {
    if (static_cast<int>(heap.size()) >= opt.max_intervals) {
      throw QuadratureError(error, std::max(opt.abs_tol, opt.rel_tol * std::abs(value)));
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const detail::Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError(error, std::max(opt.abs_tol, opt.rel_tol * std::abs(value)));
    }
    const detail::Segment left = detail::gk15(f, worst.a, mid);
    const detail::Segment right = detail::gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
    if (heap.size() % 64 == 0) std::tie(value, error) = totals();  // limit drift
  }
  std::tie(value, error) = totals();
  return {sign * value, error, static_cast<int>(heap.size())};
}

/// Integral over [a, inf) through x = a + scale * u / (1 - u).
template <class F>
Result integrate_to_infinity(F&& f, double a, double scale = 1.0, const Options& opt = {}) {
  auto g = [&](double u) {
    const double w = 1.0 - u;
    const double x = a + scale * u / w;
    const double jac = scale / (w * w);
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx * jac;
  };
  return integrate(g, 0.0, 1.0, opt);
}

/// Integral over the real line through x = centre + scale * u / (1 - u^2).
template <class F>
Result integrate_real_line(F&& f, double centre = 0.0, double scale = 1.0, const Options& opt = {}) {
  auto g = [&](double u) {
    const double w = 1.0 - u * u;
    const double x = centre + scale * u / w;
    const double jac = scale * (1.0 + u * u) / (w * w);
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx * jac;
  };
  return integrate(g, -1.0, 1.0, opt, {0.0});
}

}  // namespace rda::quad
