#include "rda/registry.hpp"

namespace rda {

namespace {

PolyTerm term(double coeff, int a, int b, int g = 0) { return {coeff, a, b, g}; }

Profile gaussian(double amplitude, double width) {
  Profile p;
  p.kind = Profile::Kind::GaussianBump;
  p.amplitude = amplitude;
  p.width = width;
  return p;
}

Profile algebraic(double amplitude, double power) {
  Profile p;
  p.kind = Profile::Kind::AlgebraicBump;
  p.amplitude = amplitude;
  p.power = power;
  return p;
}

Scenario base(const std::string& name, double c1, double c2) {
  Scenario s;
  s.name = name;
  s.system.c1 = c1;
  s.system.c2 = c2;
  return s;
}

SystemSpec thm1_system() {
  SystemSpec s;
  s.c1 = 0.0;
  s.c2 = 5.0;
  s.f1 = {term(1, 4, 0), term(1, 1, 1), term(1, 2, 1)};
  s.g1 = {term(1, 2, 0, 1), term(1, 1, 1, 1)};
  s.f2 = {term(1, 0, 4), term(1, 1, 2)};
  s.g2 = {term(1, 0, 2, 1)};
  return s;
}

Scenario toy() {
  Scenario s = base("toy", 0.0, 5.0);
  s.system.f1 = {term(1, 4, 0), term(1, 1, 1)};
  s.grid = Grid(1000.0, 8192);
  s.initial = {gaussian(1e-3, 4.0), gaussian(1e-3, 4.0)};
  s.t_end = 100.0;
  s.dt = 0.02;
  s.sample_dt = 0.5;
  s.envelope = EnvelopeSpec{EnvelopeKind::ExponentialGaussian, 32.0, 3.0};
  s.analysis.fit_t_min = 5.0;
  s.outputs = {"trajectory", "envelope", "decay", "l1_variation", "plots"};
  return s;
}

Scenario thm1_exp() {
  Scenario s = base("thm1-exp", 0.0, 5.0);
  s.system = thm1_system();
  s.grid = Grid(560.0, 4096);
  s.initial = {gaussian(1e-3, 4.0), gaussian(1e-3, 4.0)};
  s.t_end = 50.0;
  s.dt = 0.02;
  s.sample_dt = 0.5;
  s.envelope = EnvelopeSpec{EnvelopeKind::ExponentialGaussian, 32.0, 3.0};
  s.outputs = {"trajectory", "envelope", "decay", "plots"};
  return s;
}

Scenario thm1_alg() {
  Scenario s = thm1_exp();
  s.name = "thm1-alg";
  s.initial = {algebraic(1e-3, 3.0), algebraic(1e-3, 3.0)};
  s.envelope = EnvelopeSpec{EnvelopeKind::Algebraic, 32.0, 3.0};
  s.outputs = {"trajectory", "envelope", "plots"};
  return s;
}

Scenario thm2() {
  Scenario s = base("thm2-irrelevant", 0.0, 5.0);
  s.system.f1 = {term(1, 1, 1)};
  s.system.f2 = {term(1, 4, 0), term(1, 1, 1)};
  s.grid = Grid(1000.0, 8192);
  s.initial = {gaussian(1e-3, 4.0), gaussian(1e-3, 4.0)};
  s.t_end = 100.0;
  s.dt = 0.02;
  s.sample_dt = 1.0;
  s.envelope = EnvelopeSpec{EnvelopeKind::DragAugmented, 32.0, 3.0};
  s.analysis.fit_t_min = 10.0;
  s.outputs = {"trajectory", "envelope", "decay_upper", "plots"};
  return s;
}

Scenario remark51() {
  Scenario s = base("remark51-exact", 0.0, 2.0);
  s.system.d2 = 0.25;
  s.system.f2 = {term(1, 4, 0)};
  s.grid = Grid(80.0, 2048);
  Profile exact;
  exact.kind = Profile::Kind::ExactRemark51;
  s.initial = {exact, exact};
  s.t_end = 5.0;
  s.dt = 2.5e-3;
  s.sample_dt = 0.1;
  s.envelope = EnvelopeSpec{EnvelopeKind::DragAugmented, 16.0, 3.0};
  s.outputs = {"trajectory", "envelope", "exact_error", "plots"};
  return s;
}

Scenario cas2(const std::string& name, double c2, double L, int n) {
  Scenario s = base(name, 0.0, c2);
  s.system.f1 = {term(1, 0, 2)};
  s.system.f2 = {term(1, 2, 0)};
  s.grid = Grid(L, n);
  s.initial = {gaussian(0.5, 1.0), gaussian(0.5, 1.0)};
  s.t_end = 20.0;
  s.dt = 5e-3;
  s.sample_dt = 0.1;
  s.analysis.nu0 = 0.5;
  s.analysis.alpha = 1.0;
  s.outputs = {"trajectory", "lower_bound", "blow_up", "plots"};
  return s;
}

Scenario cas3(const std::string& name, double gamma) {
  Scenario s = base(name, 0.0, 1.0);
  s.system.f1 = {term(1, 1, 1), term(0.5, 3, 0)};
  s.system.g2 = {term(gamma, 2, 0, 1)};
  s.grid = Grid(600.0, 4096);
  s.initial = {gaussian(1e-2, 4.0), gaussian(1e-2, 4.0)};
  s.t_end = 200.0;
  s.dt = 0.02;
  s.sample_dt = 1.0;
  s.analysis.fit_t_min = 10.0;
  s.analysis.decay_tolerance = 0.15;
  s.analysis.delta = 1e-2;
  if (gamma > 0) {
    s.envelope = EnvelopeSpec{EnvelopeKind::NormalForm, 16.0, 3.0};
    s.outputs = {"trajectory", "envelope", "decay", "amplitude_law", "blow_up", "plots"};
  } else {
    s.outputs = {"trajectory", "blow_up", "plots"};
  }
  return s;
}

std::vector<RegistryEntry> build() {
  return {
      {"toy", "toy model u^4 + uv in the u-equation, Gaussian data", toy()},
      {"thm1-exp", "mix and self terms, exponentially localized data", thm1_exp()},
      {"thm1-alg", "mix and self terms, algebraically localized data", thm1_alg()},
      {"thm2-irrelevant", "u^4 forcing of the v-equation plus uv mix terms", thm2()},
      {"remark51-exact", "linear u driving v through u^4, closed-form solution", remark51()},
      {"cas2-equal", "quadratic cross coupling v^2, u^2 with equal velocities", cas2("cas2-equal", 0.0, 40.0, 1024)},
      {"cas2-distinct", "quadratic cross coupling v^2, u^2 with c = (0, 2)", cas2("cas2-distinct", 2.0, 80.0, 2048)},
      {"cas3-stable", "cubic system with the sign condition satisfied", cas3("cas3-stable", 1.0)},
      {"cas3-sign-violated", "cubic system with the sign condition violated", cas3("cas3-sign-violated", -1.0)},
  };
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = build();
  return entries;
}

std::optional<Scenario> builtin_scenario(const std::string& name) {
  for (const RegistryEntry& e : registry()) {
    if (e.name == name) return e.scenario;
  }
  return std::nullopt;
}

}  // namespace rda
