#include "rda/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace rda {

double erfcx(double x) {
  if (x < 25.0) return std::exp(x * x) * std::erfc(x);
  // Asymptotic series; the terms shrink monotonically for the first x^2 orders.
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0, sum = 1.0;
  for (int n = 1; n <= 12; ++n) {
    term *= -(2.0 * n - 1.0) * inv2x2;
    sum += term;
  }
  return sum / (x * std::sqrt(std::numbers::pi));
}

double erfc_tail_closed_form(double a, double r) {
  if (!(a > 0.0) || r < 0.0) throw std::domain_error("erfc_tail needs a > 0 and r >= 0");
  return std::sqrt(std::numbers::pi) * (erfcx(std::sqrt(4.0 * a * (r + 1.0))) + 1.0) / (2.0 * std::sqrt(a));
}

double quarter_gamma_closed_form(double a) {
  if (!(a > 0.0)) throw std::domain_error("quarter_gamma needs a > 0");
  return 2.0 * std::tgamma(1.25) / std::pow(a, 0.25);
}

namespace {

// Break points around the Gaussian peak in s so narrow bumps are resolved.
std::vector<double> peak_hints(double centre, double width) {
  std::vector<double> h;
  if (!std::isfinite(centre)) return h;
  for (double k : {0.0, -1.0, 1.0, -4.0, 4.0, -16.0, 16.0}) h.push_back(centre + k * width);
  return h;
}

}  // namespace

double drag_integral(double x, double t, const DragParams& p, const quad::Options& opt) {
  if (!(t > 0.0)) throw std::domain_error("drag_integral needs t > 0");
  if (!(p.M > 0.0)) throw PreconditionError("drag_integral needs M > 0");
  if (p.j != 0 && p.j != 1) throw PreconditionError("drag_integral needs j in {0,1}");
  if (p.origin_power < 0.0 || p.origin_power >= 1.0) {
    throw PreconditionError("drag_integral needs 0 <= origin_power < 1");
  }
  const double gap = p.c_other - p.c_self;
  const double base = x + t * p.c_self;
  const double scale = p.M * (1.0 + t);
  const double front = 1.0 / std::sqrt(1.0 + t);
  const double q = p.origin_power;

  auto core = [&](double s) {
    const double z = base + s * gap;
    return front * std::exp(-z * z / scale) * std::pow(1.0 + s, -p.power_decay);
  };
  double peak = std::numeric_limits<double>::quiet_NaN();
  double width = 0.0;
  if (gap != 0.0) {
    peak = -base / gap;
    width = std::sqrt(scale / 2.0) / std::abs(gap);
  }

  quad::Options half = opt;
  half.abs_tol = 0.5 * opt.abs_tol;
  const double mid = 0.5 * t;

  // [0, t/2]: s = w^{1/(1-q)} absorbs the s^{-q} factor.
  double left;
  if (q > 0.0) {
    const double e = 1.0 / (1.0 - q);
    auto f = [&](double w) {
      const double s = std::pow(w, e);
      return e * core(s) * (p.j == 1 ? 1.0 / std::sqrt(t - s) : 1.0);
    };
    std::vector<double> hints;
    for (double h : peak_hints(peak, width)) {
      if (h > 0.0 && h < mid) hints.push_back(std::pow(h, 1.0 - q));
    }
    left = quad::integrate(f, 0.0, std::pow(mid, 1.0 - q), half, hints).value;
  } else {
    auto f = [&](double s) { return core(s) * (p.j == 1 ? 1.0 / std::sqrt(t - s) : 1.0); };
    left = quad::integrate(f, 0.0, mid, half, peak_hints(peak, width)).value;
  }

  // [t/2, t]: s = t - w^2 removes the (t-s)^{-1/2} endpoint singularity.
  double right;
  if (p.j == 1) {
    auto f = [&](double w) {
      const double s = t - w * w;
      return 2.0 * core(s) * (q > 0.0 ? std::pow(s, -q) : 1.0);
    };
    std::vector<double> hints;
    for (double h : peak_hints(peak, width)) {
      if (h > mid && h < t) hints.push_back(std::sqrt(t - h));
    }
    right = quad::integrate(f, 0.0, std::sqrt(t - mid), half, hints).value;
  } else {
    auto f = [&](double s) { return core(s) * (q > 0.0 ? std::pow(s, -q) : 1.0); };
    right = quad::integrate(f, mid, t, half, peak_hints(peak, width)).value;
  }
  return left + right;
}

double drag_weight(double x, double s, double c_self, double c_other, double M, const quad::Options& opt) {
  if (s <= 0.0) return 0.0;
  quad::Options half = opt;
  half.abs_tol = 0.5 * opt.abs_tol;
  const DragParams origin{c_self, c_other, M, 0, 0.75, 0.5};
  const DragParams endpoint{c_self, c_other, M, 1, 1.0, 0.0};
  return drag_integral(x, s, origin, half) + drag_integral(x, s, endpoint, half);
}

double normal_form_v_weight(double zeta, double s, double c, double M, const quad::Options& opt) {
  if (s <= 0.0) return 0.0;
  quad::Options half = opt;
  half.abs_tol = 0.5 * opt.abs_tol;
  const DragParams origin{c, 0.0, M, 0, 0.375, 0.875};
  const DragParams endpoint{c, 0.0, M, 1, 0.5, 0.5};
  return drag_integral(zeta, s, origin, half) + drag_integral(zeta, s, endpoint, half);
}

double exact_u(double x, double t, double c1) {
  if (t < 0.0) throw std::domain_error("exact_u needs t >= 0");
  const double z = x + c1 * t;
  return std::exp(-z * z / (4.0 * (1.0 + t))) / std::sqrt(4.0 * std::numbers::pi * (1.0 + t));
}

double exact_v(double x, double t, double c1, double c2, const quad::Options& opt) {
  if (t < 0.0) throw std::domain_error("exact_v needs t >= 0");
  if (t == 0.0) return 0.0;
  const double pi = std::numbers::pi;
  quad::Options scaled = opt;
  scaled.abs_tol = opt.abs_tol * 16.0 * pi * pi;
  const DragParams p{c2, c1, 1.0, 0, 1.5, 0.0};
  return drag_integral(x, t, p, scaled) / (16.0 * pi * pi);
}

double IdentityReport::max_error() const {
  double m = 0.0;
  for (const auto& r : identities) m = std::max(m, r.max_abs_error);
  return m;
}

namespace {

constexpr double kSuiteM = 16.0;
constexpr double kSuiteD1 = 1.0;
constexpr std::array<double, 4> kSuiteT = {0.5, 1.0, 5.0, 20.0};
constexpr std::array<double, 4> kSuiteSFrac = {0.0, 0.25, 0.5, 0.75};
constexpr std::array<double, 5> kSuiteX = {0.0, 1.0, -1.0, 5.0, -5.0};
constexpr std::array<std::pair<double, double>, 3> kSuiteVel = {{{0.0, 1.0}, {0.0, 10.0}, {-2.0, 3.0}}};

const quad::Options kOracle{1e-12, 1e-13, 4000};

void record(IdentityResult& r, double lhs, double rhs, const std::string& where) {
  ++r.cases;
  const double err = std::abs(lhs - rhs);
  if (!(err <= r.max_abs_error)) {
    r.max_abs_error = std::isfinite(err) ? err : std::numeric_limits<double>::infinity();
    r.worst_case = where;
  }
}

// y-integral of a product of Gaussians peaked at the listed centres.
template <class F>
double line_integral(F&& f, std::initializer_list<double> centres, double width) {
  const double lo = std::min(centres) - 40.0 * width;
  const double hi = std::max(centres) + 40.0 * width;
  return quad::integrate(f, lo, hi, kOracle, std::vector<double>(centres)).value;
}

std::string tuple(std::initializer_list<std::pair<const char*, double>> items) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : items) {
    os << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

IdentityResult check_gauss() {
  IdentityResult r;
  r.name = "gaussian_integral";
  for (double a : {0.5, 1.0, 2.0, 4.0, 10.0}) {
    for (double b : {-2.0, 0.0, 1.5}) {
      for (double c : {0.0, -1.0}) {
        auto f = [&](double y) { return std::exp(-a * y * y + b * y + c); };
        const double lhs = line_integral(f, {b / (2.0 * a)}, 1.0 / std::sqrt(a));
        record(r, lhs, gauss_integral(a, b, c), tuple({{"a", a}, {"b", b}, {"c", c}}));
      }
    }
  }
  return r;
}

IdentityResult check_propagated() {
  IdentityResult r;
  r.name = "propagated_gaussian";
  const double M = kSuiteM, d1 = kSuiteD1;
  for (double t : kSuiteT)
    for (double sf : kSuiteSFrac)
      for (double x : kSuiteX)
        for (auto [c1, c2] : kSuiteVel) {
          (void)c2;
          const double s = sf * t;
          auto f = [&](double y) {
            const double a = x - y + c1 * (t - s);
            const double b = y + c1 * s;
            return std::exp(-a * a / (M * (t - s)) - b * b / (M * (1 + s))) /
                   (std::sqrt(4.0 * std::numbers::pi * d1 * (t - s)) * (1 + s) * (1 + s));
          };
          const double lhs = line_integral(f, {x + c1 * (t - s), -c1 * s}, std::sqrt(M * (1 + t)));
          record(r, lhs, propagated_gaussian_closed_form(x, s, t, M, d1, c1),
                 tuple({{"x", x}, {"s", s}, {"t", t}, {"c1", c1}}));
        }
  return r;
}

IdentityResult check_mix_product() {
  IdentityResult r;
  r.name = "mix_product";
  const double M = kSuiteM, d1 = kSuiteD1;
  for (double t : kSuiteT)
    for (double sf : kSuiteSFrac)
      for (double x : kSuiteX)
        for (auto [c1, c2] : kSuiteVel) {
          const double s = sf * t;
          auto f = [&](double y) {
            const double a = x - y + c1 * (t - s);
            const double b1 = y + c1 * s;
            const double b2 = y + c2 * s;
            return std::exp(-2.0 * a * a / (M * (t - s)) - b1 * b1 / (M * (1 + s)) - b2 * b2 / (M * (1 + s))) /
                   (std::sqrt(4.0 * std::numbers::pi * d1 * (t - s)) * (1 + s));
          };
          const double lhs =
              line_integral(f, {x + c1 * (t - s), -c1 * s, -c2 * s}, std::sqrt(M * (1 + t)));
          record(r, lhs, mix_product_closed_form(x, s, t, M, d1, c1, c2),
                 tuple({{"x", x}, {"s", s}, {"t", t}, {"c1", c1}, {"c2", c2}}));
        }
  return r;
}

IdentityResult check_convolution() {
  IdentityResult r;
  r.name = "gaussian_convolution";
  const double M = kSuiteM;
  for (double t : kSuiteT)
    for (double sf : kSuiteSFrac)
      for (double x : kSuiteX)
        for (auto [c1, c2] : kSuiteVel) {
          const double s = sf * t;
          auto f = [&](double y) {
            const double a = x - y + c1 * (t - s);
            const double b = y + c2 * s;
            return std::exp(-a * a / (M * (t - s)) - b * b / (M * (1 + s)));
          };
          const double lhs = line_integral(f, {x + c1 * (t - s), -c2 * s}, std::sqrt(M * (1 + t)));
          record(r, lhs, gaussian_convolution_closed_form(x, s, t, M, c1, c2),
                 tuple({{"x", x}, {"s", s}, {"t", t}, {"c1", c1}, {"c2", c2}}));
        }
  return r;
}

IdentityResult check_erfc_tail() {
  IdentityResult r;
  r.name = "erfc_tail";
  std::vector<double> as;
  for (auto [c1, c2] : kSuiteVel) as.push_back((c1 - c2) * (c1 - c2) / (4.0 * kSuiteM));
  as.push_back(1.0);
  for (double a : as)
    for (double rr : {0.0, 0.5, 1.0, 5.0, 20.0}) {
      auto f = [&](double u) {
        const double s = rr + u;
        return std::exp(-u * u * a / (1.0 + s)) / std::sqrt(1.0 + s);
      };
      const double scale = std::max({1.0, 1.0 / a, std::sqrt((1.0 + rr) / a)});
      const double lhs = quad::integrate_to_infinity(f, 0.0, scale, kOracle).value;
      record(r, lhs, erfc_tail_closed_form(a, rr), tuple({{"a", a}, {"r", rr}}));
    }
  return r;
}

IdentityResult check_quarter_gamma() {
  IdentityResult r;
  r.name = "quarter_gamma";
  for (int i = 0; i < 20; ++i) {
    const double a = std::pow(10.0, -2.0 + 4.0 * i / 19.0);
    auto f = [&](double w) { return 2.0 * std::exp(-a * w * w * w * w); };  // z = w^2
    const double lhs = quad::integrate_to_infinity(f, 0.0, std::pow(a, -0.25), kOracle).value;
    record(r, lhs, quarter_gamma_closed_form(a), tuple({{"a", a}}));
  }
  return r;
}

}  // namespace

IdentityReport verify_identity_suite() {
  IdentityReport report;
  report.identities = {check_gauss(), check_propagated(), check_mix_product(), check_convolution(), check_erfc_tail(), check_quarter_gamma()};
  return report;
}

}  // namespace rda
