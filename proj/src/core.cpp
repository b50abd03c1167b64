#include "rda/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rda {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void add(ValidationReport& report, std::string invariant, std::string message) {
  report.violations.push_back({std::move(invariant), std::move(message)});
}

void check_terms(ValidationReport& report, const std::vector<PolyTerm>& terms,
                 const char* list, int expected_gamma) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const PolyTerm& t = terms[i];
    std::ostringstream where;
    where << list << "[" << i << "]";
    if (t.alpha < 0 || t.beta < 0) {
      add(report, "alpha,beta>=0", where.str() + ": negative power");
    }
    if (t.alpha + t.beta < 2) {
      add(report, "alpha+beta>=2",
          where.str() + ": alpha+beta >= 2 failed (term is constant or linear)");
    }
    if (t.gamma != 0 && t.gamma != 1) {
      add(report, "gamma in {0,1}", where.str() + ": gamma must be 0 or 1");
    } else if (t.gamma != expected_gamma) {
      add(report, expected_gamma == 0 ? "f-terms have gamma=0" : "g-terms have gamma=1",
          where.str() + (expected_gamma == 0 ? ": derivative term in an f list"
                                             : ": non-derivative term in a g list"));
    }
    if (!std::isfinite(t.coeff)) {
      add(report, "coeff finite", where.str() + ": coefficient is not finite");
    }
  }
}

}  // namespace

Grid::Grid(double half_width, int n) : half_width_(half_width), n_(n), dx_(2.0 * half_width / n) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw PreconditionError("grid half width must be positive and finite");
  }
  if (n < 64 || !is_power_of_two(n)) {
    throw PreconditionError("grid size must be a power of two and at least 64");
  }
}

Eigen::ArrayXd Grid::points() const {
  Eigen::ArrayXd x(n_);
  for (int j = 0; j < n_; ++j) x[j] = this->x(j);
  return x;
}

bool ValidationReport::has(const std::string& invariant) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.invariant == invariant; });
}

ValidationReport validate_spec(const SystemSpec& spec) {
  ValidationReport report;
  if (!(spec.d1 > 0.0)) add(report, "d1>0", "d1 > 0 failed");
  if (!(spec.d2 > 0.0)) add(report, "d2>0", "d2 > 0 failed");
  if (!std::isfinite(spec.c1) || !std::isfinite(spec.c2)) {
    add(report, "velocities finite", "velocities must be finite");
  }
  check_terms(report, spec.f1, "f1", 0);
  check_terms(report, spec.f2, "f2", 0);
  check_terms(report, spec.g1, "g1", 1);
  check_terms(report, spec.g2, "g2", 1);
  return report;
}

double envelope_threshold_M(const SystemSpec& spec) {
  return std::max({16.0 * spec.d1, 16.0 * spec.d2, 1.0});
}

bool within_domain_budget(const SystemSpec& spec, const Grid& grid, double M, double t) {
  const double c = std::max(std::abs(spec.c1), std::abs(spec.c2));
  return c * t + 6.0 * std::sqrt(M * (1.0 + t)) <= 0.9 * grid.half_width();
}

namespace {

void check_profile(ValidationReport& report, const Profile& p, const char* which) {
  const std::string name = std::string("initial.") + which;
  if (!std::isfinite(p.amplitude)) add(report, name + ".amplitude finite", name + ": amplitude not finite");
  if (!std::isfinite(p.center)) add(report, name + ".center finite", name + ": center not finite");
  if (p.kind == Profile::Kind::GaussianBump && !(p.width > 0.0)) {
    add(report, name + ".width>0", name + ": Gaussian width must be positive");
  }
  if (p.kind == Profile::Kind::AlgebraicBump && !(p.power > 0.0)) {
    add(report, name + ".power>0", name + ": algebraic power must be positive");
  }
  if (p.kind == Profile::Kind::Custom && p.expression.empty()) {
    add(report, name + ".expr", name + ": custom profile needs an expression");
  }
}

}  // namespace

ValidationReport validate_scenario(const Scenario& s) {
  ValidationReport report = validate_spec(s.system);
  if (!(s.t_end > 0.0)) add(report, "t_end>0", "t_end must be positive");
  if (!(s.dt > 0.0)) add(report, "dt>0", "dt must be positive");
  if (!(s.dt < s.t_end)) add(report, "dt<t_end", "dt < t_end failed");
  if (!(s.sample_dt > 0.0)) add(report, "sample_dt>0", "sample_dt must be positive");
  const double cmax = std::max(std::abs(s.system.c1), std::abs(s.system.c2));
  if (s.dt * cmax / s.grid.dx() > 10.0) {
    add(report, "dt*max|c|/dx<=10", "dt*max(|c1|,|c2|)/dx <= 10 failed");
  }
  check_profile(report, s.initial.u, "u");
  check_profile(report, s.initial.v, "v");
  if (!(s.analysis.blow_up_threshold > 0.0)) {
    add(report, "blow_up_threshold>0", "blow-up threshold must be positive");
  }

  double budget_M = 16.0;
  if (s.envelope) {
    const EnvelopeSpec& env = *s.envelope;
    if (env.kind == EnvelopeKind::Algebraic) {
      if (!(env.r >= 3.0)) add(report, "r>=3", "algebraic envelope needs r >= 3");
    } else {
      const double m0 = envelope_threshold_M(s.system);
      if (!(env.M >= m0)) {
        add(report, "M>=max(16d1,16d2,1)", "envelope M >= max(16 d1, 16 d2, 1) failed");
      }
    }
    if (env.kind == EnvelopeKind::DragAugmented && s.system.c1 == s.system.c2) {
      add(report, "c1!=c2", "drag envelope needs distinct velocities");
    }
    if (env.kind != EnvelopeKind::Algebraic) budget_M = env.M;
  }
  if (!within_domain_budget(s.system, s.grid, budget_M, s.t_end)) {
    std::ostringstream msg;
    msg << "domain budget exceeded: max|c|*t_end + 6*sqrt(M(1+t_end)) > 0.9*L with M="
        << budget_M << "; samples past the budget are flagged invalid";
    report.warnings.push_back(msg.str());
  }
  return report;
}

std::string to_string(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::ExponentialGaussian: return "exponential";
    case EnvelopeKind::Algebraic: return "algebraic";
    case EnvelopeKind::DragAugmented: return "drag";
    case EnvelopeKind::NormalForm: return "normal_form";
  }
  return "exponential";
}

EnvelopeKind envelope_kind_from_string(const std::string& name) {
  if (name == "exponential") return EnvelopeKind::ExponentialGaussian;
  if (name == "algebraic") return EnvelopeKind::Algebraic;
  if (name == "drag") return EnvelopeKind::DragAugmented;
  if (name == "normal_form") return EnvelopeKind::NormalForm;
  throw std::invalid_argument("unknown envelope kind '" + name + "'");
}

}  // namespace rda
