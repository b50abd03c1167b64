// Closed-form drifting Gaussian kernels, the integral identities behind the
// pointwise estimates, and the drag-integral family evaluated by quadrature.
#pragma once

#include "rda/core.hpp"
#include "rda/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rda {

struct GaussKernelParams {
  double d = 1.0;
  double c = 0.0;
  double t = 1.0;
};

/// e^{-(x+ct)^2/(4dt)} / sqrt(4 pi d t)
template <class Scalar>
Scalar heat_kernel(Scalar x, Scalar d, Scalar c, Scalar t) {
  using std::exp;
  using std::sqrt;
  if (!(t > Scalar(0)) || !(d > Scalar(0))) throw std::domain_error("heat_kernel needs d > 0 and t > 0");
  const Scalar z = x + c * t;
  return exp(-z * z / (Scalar(4) * d * t)) / sqrt(Scalar(4) * Scalar(std::numbers::pi) * d * t);
}

inline double heat_kernel(double x, const GaussKernelParams& p) { return heat_kernel(x, p.d, p.c, p.t); }

/// Integral over the real line of e^{-a y^2 + b y + c}.
template <class Scalar>
Scalar gauss_integral(Scalar a, Scalar b, Scalar c) {
  using std::exp;
  using std::sqrt;
  if (!(a > Scalar(0))) throw std::domain_error("gauss_integral needs a > 0");
  return sqrt(Scalar(std::numbers::pi) / a) * exp(b * b / (Scalar(4) * a)) * exp(c);
}

/// Propagated linear envelope of initial data bounded by delta e^{-x^2/M}.
template <class Scalar>
Scalar linear_envelope_bound(Scalar x, Scalar t, Scalar M, Scalar d, Scalar c, Scalar delta) {
  using std::exp;
  using std::sqrt;
  if (!(M >= Scalar(4) * d)) throw PreconditionError("linear_envelope_bound needs M >= 4d");
  if (t < Scalar(0)) throw std::domain_error("linear_envelope_bound needs t >= 0");
  const Scalar z = x + c * t;
  return delta * sqrt(M) * exp(-z * z / (M * (Scalar(1) + t))) / (Scalar(2) * sqrt(d * (Scalar(1) + t)));
}

/// Scaled complementary error function e^{x^2} erfc(x), stable for large x.
double erfcx(double x);

// Right-hand sides of the integral identities. The propagated-Gaussian form
// carries a factor 1/2; quadrature confirms it.
template <class Scalar>
Scalar propagated_gaussian_closed_form(Scalar x, Scalar s, Scalar t, Scalar M, Scalar d1, Scalar c1) {
  using std::exp;
  using std::pow;
  using std::sqrt;
  const Scalar z = x + c1 * t;
  return sqrt(M) * exp(-z * z / (M * (1 + t))) / (2 * sqrt(d1 * (1 + t)) * pow(1 + s, Scalar(1.5)));
}

template <class Scalar>
Scalar mix_product_closed_form(Scalar x, Scalar s, Scalar t, Scalar M, Scalar d1, Scalar c1, Scalar c2) {
  using std::exp;
  using std::sqrt;
  const Scalar z = x + c1 * t;
  const Scalar dc = c1 - c2;
  const Scalar zs = x + c1 * t + s * (c2 - c1);
  const Scalar e = -z * z / (M * (1 + t)) - s * s * (t - s) * dc * dc / (2 * M * (1 + s) * (1 + t)) -
                   zs * zs / (M * (1 + t));
  return sqrt(M) * exp(e) / (2 * sqrt(2 * d1 * (1 + t) * (1 + s)));
}

template <class Scalar>
Scalar gaussian_convolution_closed_form(Scalar x, Scalar s, Scalar t, Scalar M, Scalar c1, Scalar c2) {
  using std::exp;
  using std::sqrt;
  const Scalar zs = x + c1 * t + (c2 - c1) * s;
  return exp(-zs * zs / (M * (1 + t))) * sqrt(Scalar(std::numbers::pi) * M * (1 + s) * (t - s) / (1 + t));
}

/// (sqrt(pi)/(2 sqrt(a))) (e^{4a(r+1)} erfc(sqrt(4a(r+1))) + 1)
double erfc_tail_closed_form(double a, double r);

/// 2 Gamma(5/4) / a^{1/4}
double quarter_gamma_closed_form(double a);

/// Parameters of the drag family
///   int_0^t e^{-(x + t c_self + s (c_other - c_self))^2/(M(1+t))}
///        / (sqrt(1+t) (1+s)^power_decay s^origin_power (t-s)^{j/2}) ds.
struct DragParams {
  double c_self = 0.0;
  double c_other = 0.0;
  double M = 16.0;
  int j = 0;
  double power_decay = 0.0;
  double origin_power = 0.0;  // integrable s^{-q} factor, 0 <= q < 1
};

double drag_integral(double x, double t, const DragParams& p, const quad::Options& opt = {});

/// Drag part of the irrelevant-coupling weight for one component:
/// int_0^s e^{...}/(sqrt(1+s)(1+r)) ((1+r)^{1/4}/sqrt(r) + 1/sqrt(s-r)) dr.
double drag_weight(double x, double s, double c_self, double c_other, double M,
                   const quad::Options& opt = {});

/// Drag part of the normal-form weight for the transformed v component in
/// the comoving frame (relative velocity c).
double normal_form_v_weight(double zeta, double s, double c, double M, const quad::Options& opt = {});

/// Exact solution of u_t = u_xx + c1 u_x, v_t = v_xx/4 + c2 v_x + u^4 with
/// u(x,0) = e^{-x^2/4}/sqrt(4 pi) and v(x,0) = 0.
double exact_u(double x, double t, double c1);
double exact_v(double x, double t, double c1, double c2, const quad::Options& opt = {});

struct IdentityResult {
  std::string name;
  int cases = 0;
  double max_abs_error = 0.0;
  std::string worst_case;
};

struct IdentityReport {
  std::vector<IdentityResult> identities;

  double max_error() const;
  bool within(double tol) const { return max_error() <= tol; }
};

IdentityReport verify_identity_suite();

}  // namespace rda
