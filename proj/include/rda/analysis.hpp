// Verdict layer: term classification and admissibility, envelope
// weights over sampled trajectories, decay regression, the quadratic-coupling
// lower bounds and the logarithmic amplitude law.
#pragma once

#include "rda/core.hpp"
#include "rda/quadrature.hpp"
#include "rda/solver.hpp"

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace rda {

enum class Category { Relevant, Marginal, Irrelevant };
enum class CouplingFor { UEquation, VEquation, Neither };

struct TermClass {
  int p = 0;
  Category category = Category::Relevant;
  bool is_mix = false;
  CouplingFor is_coupling_for = CouplingFor::Neither;  // equation where a pure term couples
};

TermClass classify_term(const PolyTerm& term, int dims = 1);

std::string to_string(Category c);
std::string to_string(CouplingFor c);

/// Coefficients of the cubic system when the spec has exactly that shape.
struct CubicShape {
  double alpha = 0.0;  // uv in the u-equation
  double beta = 0.0;   // u^3 in the u-equation
  double gamma = 0.0;  // (u^2)_x in the v-equation
};

struct AdmissibilityReport {
  bool gaussian_decay = false;
  bool drag_decay = false;
  std::optional<CubicShape> cubic_shape;
  std::optional<double> sign_value;  // beta - gamma alpha / (c2 - c1)
  bool sign_condition = false;
  std::vector<std::string> notes;
};

AdmissibilityReport check_admissibility(const SystemSpec& spec);

/// Fitted slope of log(value) against log(1+t) with a 95% half-width.
struct DecayFit {
  double exponent = 0.0;
  double half_width = 0.0;
  int samples = 0;
};

/// Uses samples with t_min <= t <= t_max. Needs at least 8 of them, all positive.
DecayFit fit_decay_exponent(const std::vector<double>& times, const std::vector<double>& values, double t_min,
                            double t_max = std::numeric_limits<double>::infinity());

struct EnvelopeVerdict {
  EnvelopeKind kind = EnvelopeKind::ExponentialGaussian;
  std::vector<double> times;
  std::vector<double> instantaneous;  // sup over the trust region at each sample
  std::vector<double> eta_series;     // running maximum
  std::vector<bool> sample_valid;     // false once past the domain budget
  std::vector<double> h2_series;      // normal-form kind only, diagnostic
  double max_eta = 0.0;
  double eta_at_1 = 0.0;
  bool bounded = false;
  bool valid = true;
  std::optional<DecayFit> fit;
};

/// Shared evaluation context. Quadrature options feed the drag weights.
struct EnvelopeContext {
  SystemSpec spec;
  Grid grid;
  EnvelopeSpec env;
  quad::Options quadrature{1e-9, 1e-8, 2000};
  double bound_factor = 3.0;
};

double trust_radius(double M, double s);

EnvelopeVerdict eta_exponential(const std::vector<State>& history, const EnvelopeContext& ctx);
EnvelopeVerdict eta_algebraic(const std::vector<State>& history, const EnvelopeContext& ctx);
EnvelopeVerdict eta_drag(const std::vector<State>& history, const EnvelopeContext& ctx);
/// Weight of the cubic system in the comoving frame built from normal-form
/// snapshots; the H^2 term is recorded separately as a diagnostic.
EnvelopeVerdict eta_normal_form(const std::vector<NormalFormState>& history, const EnvelopeContext& ctx);

EnvelopeVerdict evaluate_envelope(const std::vector<State>& history, const EnvelopeContext& ctx,
                                  const std::optional<CubicShape>& shape = std::nullopt);

enum class Regime { EqualVelocities, DistinctVelocities };

struct LowerBoundParams {
  double d1 = 1.0;
  double d2 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double nu0 = 0.0;
  double alpha = 1.0;  // u0 >= nu0 e^{-alpha x^2}
};

struct LowerBoundCurve {
  std::vector<double> times;
  std::vector<double> l1_bound;
  std::vector<double> linf_bound;
  Regime regime = Regime::EqualVelocities;
};

LowerBoundCurve cas2_lower_bounds(const LowerBoundParams& p, const std::vector<double>& times);

/// Largest nu0 with u0 >= nu0 e^{-alpha x^2} on the grid for the given alpha.
double gaussian_lower_bound_amplitude(const Eigen::ArrayXd& u0, const Grid& grid, double alpha);

struct AmplitudeVerdict {
  std::vector<double> times;
  std::vector<double> quantity;  // |A| sqrt(2 nu log(1+t))
  double nu = 0.0;
  double max_after_burn = 0.0;
  bool pass = false;
  // Diagnostics, not gates.
  double final_decade_min = 0.0;
  double final_decade_max = 0.0;
  bool window_ok = false;
  std::optional<double> log_law_slope;
  double max_with_delta = 0.0;  // |A| sqrt(delta^-2 + 2 nu log(1+t))
};

AmplitudeVerdict amplitude_law_check(const std::vector<NormalFormState>& series, double delta,
                                     double t_burn = 10.0, double upper = 1.1);

}  // namespace rda
