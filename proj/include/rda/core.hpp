// Domain types shared by every part of the laboratory: nonlinearity terms,
// the two-component system, the periodic grid, solution states, envelope
// descriptions and the scenario bundle that drives a run.
#pragma once

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rda {

/// Raised when an operation is called outside its documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One monomial coeff * d/dx^gamma (u^alpha v^beta).
struct PolyTerm {
  double coeff = 1.0;
  int alpha = 0;
  int beta = 0;
  int gamma = 0;  // 1: divergence form, the product sits under d/dx

  int order() const { return alpha + beta + gamma; }
  bool is_mix() const { return alpha >= 1 && beta >= 1; }

  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

/// u_t = d1 u_xx + c1 u_x + f1(u,v) + (g1(u,v))_x
/// v_t = d2 v_xx + c2 v_x + f2(u,v) + (g2(u,v))_x
struct SystemSpec {
  double d1 = 1.0;
  double d2 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<PolyTerm> f1, f2;  // gamma = 0
  std::vector<PolyTerm> g1, g2;  // gamma = 1

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

/// Periodic collocation grid on [-L, L) with n points.
class Grid {
 public:
  Grid() : Grid(32.0, 256) {}
  Grid(double half_width, int n);

  double half_width() const { return half_width_; }
  int size() const { return n_; }
  double dx() const { return dx_; }
  double x(int j) const { return -half_width_ + dx_ * j; }
  Eigen::ArrayXd points() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double half_width_;
  int n_;
  double dx_;
};

struct State {
  double t = 0.0;
  Eigen::ArrayXd u;
  Eigen::ArrayXd v;

  bool finite() const { return u.allFinite() && v.allFinite(); }
};

enum class EnvelopeKind { ExponentialGaussian, Algebraic, DragAugmented, NormalForm };

struct EnvelopeSpec {
  EnvelopeKind kind = EnvelopeKind::ExponentialGaussian;
  double M = 16.0;  // Gaussian width parameter
  double r = 3.0;   // algebraic power

  friend bool operator==(const EnvelopeSpec&, const EnvelopeSpec&) = default;
};

/// Initial profile of a single component.
struct Profile {
  enum class Kind { GaussianBump, AlgebraicBump, ExactRemark51, Custom };

  Kind kind = Kind::GaussianBump;
  double amplitude = 0.0;
  double width = 4.0;   // a * exp(-(x - x0)^2 / width)
  double power = 3.0;   // a * (1 + |x - x0|)^-power
  double center = 0.0;
  std::string expression;  // Custom only

  friend bool operator==(const Profile&, const Profile&) = default;
};

struct InitialData {
  Profile u;
  Profile v;

  friend bool operator==(const InitialData&, const InitialData&) = default;
};

/// Knobs for the verdict layer. Unset optionals are derived from the scenario.
struct AnalysisParams {
  double blow_up_threshold = 1e8;
  double fit_t_min = 5.0;
  double decay_target = -0.5;
  double decay_tolerance = 0.1;
  double t_burn = 10.0;
  std::optional<double> nu0;    // Gaussian lower bound amplitude of u0
  std::optional<double> alpha;  // Gaussian lower bound rate of u0
  std::optional<double> delta;  // initial-data size used by the amplitude law

  friend bool operator==(const AnalysisParams&, const AnalysisParams&) = default;
};

struct Scenario {
  std::string name = "scenario";
  SystemSpec system;
  Grid grid;
  InitialData initial;
  double t_end = 1.0;
  double dt = 1e-2;
  double sample_dt = 0.1;
  std::optional<EnvelopeSpec> envelope;
  AnalysisParams analysis;
  std::vector<std::string> outputs;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Violation {
  std::string invariant;  // e.g. "d1>0"
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& invariant) const;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

ValidationReport validate_spec(const SystemSpec& spec);

/// Everything validate_spec checks plus grid, time stepping, envelope and
/// the domain-truncation budget (reported as a warning).
ValidationReport validate_scenario(const Scenario& scenario);

/// True while max|c| t + 6 sqrt(M(1+t)) <= 0.9 L, i.e. drifting mass has not
/// reached the periodic wraparound zone.
bool within_domain_budget(const SystemSpec& spec, const Grid& grid, double M, double t);

double envelope_threshold_M(const SystemSpec& spec);

std::string to_string(EnvelopeKind kind);
EnvelopeKind envelope_kind_from_string(const std::string& name);

}  // namespace rda
