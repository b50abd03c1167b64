#include "rda/solver.hpp"

#include "rda/expression.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace rda {

namespace {

using cd = std::complex<double>;

std::string blow_up_message(double t) {
  std::ostringstream os;
  os << "non-finite field values at t=" << t;
  return os.str();
}

}  // namespace

struct FftPlans {
  fftw_plan r2c;
  fftw_plan c2r;
};

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
const FftPlans* plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, FftPlans> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<double> in(n);
    std::vector<fftw_complex> out(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    FftPlans p{fftw_plan_dft_r2c_1d(n, in.data(), out.data(), flags),
               fftw_plan_dft_c2r_1d(n, out.data(), in.data(), flags | FFTW_DESTROY_INPUT)};
    it = cache.emplace(n, p).first;
  }
  return &it->second;
}

}  // namespace

BlowUp::BlowUp(double time) : std::runtime_error(blow_up_message(time)), time_(time) {}

SpectralWorkspace SpectralWorkspace::build(const SystemSpec& spec, const Grid& grid, double dt) {
  if (!(dt > 0.0)) throw PreconditionError("time step must be positive");
  SpectralWorkspace ws;
  ws.n = grid.size();
  ws.dt = dt;
  const int nh = ws.n / 2 + 1;
  ws.k.resize(nh);
  ws.dealias_mask.resize(nh);
  for (int m = 0; m < nh; ++m) {
    ws.k[m] = std::numbers::pi * m / grid.half_width();
    ws.dealias_mask[m] = 3 * m < ws.n;
  }
  auto multiplier = [&](double d, double c, double tau) {
    Spectrum e(nh);
    for (int m = 0; m < nh; ++m) {
      const double k = ws.k[m];
      e[m] = std::exp(cd(-d * k * k, c * k) * tau);
    }
    return e;
  };
  ws.full_u = multiplier(spec.d1, spec.c1, dt);
  ws.full_v = multiplier(spec.d2, spec.c2, dt);
  ws.half_u = multiplier(spec.d1, spec.c1, 0.5 * dt);
  ws.half_v = multiplier(spec.d2, spec.c2, 0.5 * dt);
  return ws;
}

SpectralOps::SpectralOps(const Grid& grid)
    : n_(grid.size()), L_(grid.half_width()), k_(grid.size() / 2 + 1), plans_(plans_for(grid.size())) {
  for (int m = 0; m < k_.size(); ++m) k_[m] = std::numbers::pi * m / L_;
}

void SpectralOps::forward(const Eigen::ArrayXd& f, Spectrum& out) {
  if (f.size() != n_) throw PreconditionError("field length does not match the grid");
  out.resize(n_ / 2 + 1);
  const FftPlans* p = plans_;
  fftw_execute_dft_r2c(p->r2c, const_cast<double*>(f.data()), reinterpret_cast<fftw_complex*>(out.data()));
}

void SpectralOps::inverse(const Spectrum& f, Eigen::ArrayXd& out) {
  if (f.size() != n_ / 2 + 1) throw PreconditionError("spectrum length does not match the grid");
  out.resize(n_);
  scratch_ = f;  // c2r overwrites its input
  const FftPlans* p = plans_;
  fftw_execute_dft_c2r(p->c2r, reinterpret_cast<fftw_complex*>(scratch_.data()), out.data());
  out /= static_cast<double>(n_);
}

Spectrum SpectralOps::forward(const Eigen::ArrayXd& f) {
  Spectrum out;
  forward(f, out);
  return out;
}

Eigen::ArrayXd SpectralOps::inverse(const Spectrum& f) {
  Eigen::ArrayXd out;
  inverse(f, out);
  return out;
}

Eigen::ArrayXd SpectralOps::derivative(const Eigen::ArrayXd& f, int order) {
  Spectrum h = forward(f);
  for (int m = 0; m < h.size(); ++m) h[m] *= std::pow(cd(0.0, k_[m]), order);
  if (order % 2 == 1) h[h.size() - 1] = 0.0;
  return inverse(h);
}

Eigen::ArrayXd SpectralOps::translate(const Eigen::ArrayXd& f, double a) {
  Spectrum h = forward(f);
  const int last = static_cast<int>(h.size()) - 1;
  for (int m = 0; m < last; ++m) h[m] *= std::exp(cd(0.0, k_[m] * a));
  h[last] = h[last].real() * std::cos(k_[last] * a);
  return inverse(h);
}

std::pair<double, double> SpectralOps::transform_norms(const Eigen::ArrayXd& f) {
  const Spectrum h = forward(f);
  const double dx = 2.0 * L_ / n_;
  const double dk = std::numbers::pi / L_;
  const Eigen::ArrayXd mag = h.abs() * dx;
  const int last = static_cast<int>(mag.size()) - 1;
  const double l1 = dk * (mag[0] + mag[last] + 2.0 * mag.segment(1, last - 1).sum());
  return {mag.maxCoeff(), l1};
}

double SpectralOps::h2_norm(const Eigen::ArrayXd& f) {
  const Spectrum h = forward(f);
  const double dx = 2.0 * L_ / n_;
  const double dk = std::numbers::pi / L_;
  const int last = static_cast<int>(h.size()) - 1;
  double sum = 0.0;
  for (int m = 0; m <= last; ++m) {
    const double w = (m == 0 || m == last) ? 1.0 : 2.0;
    const double k2 = k_[m] * k_[m];
    sum += w * std::norm(h[m] * dx) * (1.0 + k2) * (1.0 + k2);
  }
  return std::sqrt(sum * dk / (2.0 * std::numbers::pi));
}

Stepper::Stepper(const SystemSpec& spec, const Grid& grid, double dt)
    : Stepper(spec, grid, SpectralWorkspace::build(spec, grid, dt)) {}

Stepper::Stepper(const SystemSpec& spec, const Grid& grid, SpectralWorkspace ws)
    : spec_(spec), ws_(std::move(ws)), ops_(grid) {
  if (ws_.n != grid.size()) throw PreconditionError("workspace built for a different grid");
  for (const auto* list : {&spec_.f1, &spec_.f2, &spec_.g1, &spec_.g2}) {
    for (const PolyTerm& t : *list) {
      max_alpha_ = std::max(max_alpha_, t.alpha);
      max_beta_ = std::max(max_beta_, t.beta);
    }
  }
  upow_.resize(max_alpha_ + 1);
  vpow_.resize(max_beta_ + 1);
}

void Stepper::project(Spectrum& f) const {
  for (int m = 0; m < f.size(); ++m) {
    if (!ws_.dealias_mask[m]) f[m] = 0.0;
  }
}

void Stepper::to_spectral(const State& s, Spectrum& uh, Spectrum& vh) {
  ops_.forward(s.u, uh);
  ops_.forward(s.v, vh);
  project(uh);
  project(vh);
}

State Stepper::to_physical(double t, const Spectrum& uh, const Spectrum& vh) {
  State s;
  s.t = t;
  ops_.inverse(uh, s.u);
  ops_.inverse(vh, s.v);
  return s;
}

void Stepper::evaluate(const std::vector<PolyTerm>& f, const std::vector<PolyTerm>& g, Spectrum& out) {
  const int nh = ws_.n / 2 + 1;
  out.setZero(nh);
  auto accumulate = [&](const std::vector<PolyTerm>& terms, Spectrum& dst) {
    work_.setZero(ws_.n);
    for (const PolyTerm& t : terms) {
      if (t.alpha > 0 && t.beta > 0) {
        work_ += t.coeff * upow_[t.alpha] * vpow_[t.beta];
      } else if (t.alpha > 0) {
        work_ += t.coeff * upow_[t.alpha];
      } else if (t.beta > 0) {
        work_ += t.coeff * vpow_[t.beta];
      } else {
        work_ += t.coeff;
      }
    }
    ops_.forward(work_, dst);
  };
  if (!f.empty()) {
    accumulate(f, fh_);
    out += fh_;
  }
  if (!g.empty()) {
    accumulate(g, gh_);
    for (int m = 0; m < nh; ++m) out[m] += cd(0.0, ws_.k[m]) * gh_[m];
  }
  project(out);
}

void Stepper::rhs(const Spectrum& uh, const Spectrum& vh, Spectrum& nu, Spectrum& nv) {
  ops_.inverse(uh, u_);
  ops_.inverse(vh, v_);
  if (max_alpha_ >= 1) upow_[1] = u_;
  for (int a = 2; a <= max_alpha_; ++a) upow_[a] = upow_[a - 1] * u_;
  if (max_beta_ >= 1) vpow_[1] = v_;
  for (int b = 2; b <= max_beta_; ++b) vpow_[b] = vpow_[b - 1] * v_;
  evaluate(spec_.f1, spec_.g1, nu);
  evaluate(spec_.f2, spec_.g2, nv);
}

void Stepper::step(Spectrum& uh, Spectrum& vh) {
  const bool linear = spec_.f1.empty() && spec_.f2.empty() && spec_.g1.empty() && spec_.g2.empty();
  if (linear) {
    uh *= ws_.full_u;
    vh *= ws_.full_v;
    return;
  }
  const double dt = ws_.dt;
  uh *= ws_.half_u;
  vh *= ws_.half_v;
  rhs(uh, vh, k1u_, k1v_);
  tu_ = uh + (0.5 * dt) * k1u_;
  tv_ = vh + (0.5 * dt) * k1v_;
  rhs(tu_, tv_, k2u_, k2v_);
  tu_ = uh + (0.5 * dt) * k2u_;
  tv_ = vh + (0.5 * dt) * k2v_;
  rhs(tu_, tv_, k3u_, k3v_);
  tu_ = uh + dt * k3u_;
  tv_ = vh + dt * k3v_;
  rhs(tu_, tv_, k4u_, k4v_);
  uh += (dt / 6.0) * (k1u_ + 2.0 * k2u_ + 2.0 * k3u_ + k4u_);
  vh += (dt / 6.0) * (k1v_ + 2.0 * k2v_ + 2.0 * k3v_ + k4v_);
  uh *= ws_.half_u;
  vh *= ws_.half_v;
}

State Stepper::step(const State& s) {
  if (!s.finite()) throw PreconditionError("step needs a finite state");
  Spectrum uh, vh;
  to_spectral(s, uh, vh);
  step(uh, vh);
  State out = to_physical(s.t + ws_.dt, uh, vh);
  if (!out.finite()) throw BlowUp(out.t);
  return out;
}

double Stepper::sup_bound(const Spectrum& uh, const Spectrum& vh) const {
  const double n = ws_.n;
  const double bu = (2.0 * uh.abs().sum() - std::abs(uh[0])) / n;
  const double bv = (2.0 * vh.abs().sum() - std::abs(vh[0])) / n;
  return std::max(bu, bv);
}

State step(const State& state, const SystemSpec& spec, const Grid& grid, const SpectralWorkspace& ws) {
  Stepper stepper(spec, grid, ws);
  return stepper.step(state);
}

bool detect_blow_up(const State& state, double threshold) {
  if (!(threshold > 0.0)) throw PreconditionError("blow-up threshold must be positive");
  if (!state.finite()) return true;
  const double m = std::max(state.u.size() ? state.u.abs().maxCoeff() : 0.0,
                            state.v.size() ? state.v.abs().maxCoeff() : 0.0);
  return m > threshold;
}

Eigen::ArrayXd evaluate_profile(const Profile& p, const Grid& grid, bool is_u) {
  const Eigen::ArrayXd x = grid.points() - p.center;
  switch (p.kind) {
    case Profile::Kind::GaussianBump:
      return p.amplitude * (-x.square() / p.width).exp();
    case Profile::Kind::AlgebraicBump:
      return p.amplitude * (1.0 + x.abs()).pow(-p.power);
    case Profile::Kind::ExactRemark51:
      if (!is_u) return Eigen::ArrayXd::Zero(grid.size());
      return (-x.square() / 4.0).exp() / std::sqrt(4.0 * std::numbers::pi);
    case Profile::Kind::Custom: {
      const Expression e = Expression::parse(p.expression);
      Eigen::ArrayXd out(grid.size());
      for (int j = 0; j < grid.size(); ++j) out[j] = e.eval(grid.x(j));
      return out;
    }
  }
  return Eigen::ArrayXd::Zero(grid.size());
}

State initial_state(const Scenario& s) {
  State st;
  st.t = 0.0;
  st.u = evaluate_profile(s.initial.u, s.grid, true);
  st.v = evaluate_profile(s.initial.v, s.grid, false);
  return st;
}

Sample measure(const State& s, const Grid& grid) {
  Sample m;
  m.t = s.t;
  m.linf_u = s.u.abs().maxCoeff();
  m.linf_v = s.v.abs().maxCoeff();
  m.l1_u = grid.dx() * s.u.abs().sum();
  m.l1_v = grid.dx() * s.v.abs().sum();
  return m;
}

TrajectoryReport run(const Scenario& scenario, const Observer& observer) {
  const ValidationReport check = validate_scenario(scenario);
  if (!check.ok()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : check.violations) msg += " [" + v.invariant + "] " + v.message + ";";
    throw PreconditionError(msg);
  }
  Stepper stepper(scenario.system, scenario.grid, scenario.dt);
  const double threshold = scenario.analysis.blow_up_threshold;
  const long steps = std::max(1L, std::lround(scenario.t_end / scenario.dt));
  const long every = std::max(1L, std::lround(scenario.sample_dt / scenario.dt));

  TrajectoryReport report;
  Spectrum uh, vh;
  stepper.to_spectral(initial_state(scenario), uh, vh);
  auto emit = [&](const State& s) {
    report.samples.push_back(measure(s, scenario.grid));
    if (observer) observer(s);
  };
  {
    const State s0 = stepper.to_physical(0.0, uh, vh);
    if (detect_blow_up(s0, threshold)) {
      report.blew_up = true;
      report.blow_up_time = 0.0;
      report.blow_up_sample = measure(s0, scenario.grid);
      return report;
    }
    emit(s0);
  }
  for (long n = 1; n <= steps; ++n) {
    stepper.step(uh, vh);
    report.steps = static_cast<int>(n);
    const double t = n * scenario.dt;
    std::optional<State> phys;
    const double bound = stepper.sup_bound(uh, vh);
    if (!std::isfinite(bound) || bound > threshold) {
      phys = stepper.to_physical(t, uh, vh);
      if (detect_blow_up(*phys, threshold)) {
        report.blew_up = true;
        report.blow_up_time = t;
        report.blow_up_sample = measure(*phys, scenario.grid);
        break;
      }
    }
    if (n % every == 0 || n == steps) {
      if (!phys) phys = stepper.to_physical(t, uh, vh);
      emit(*phys);
    }
  }
  return report;
}

NormalFormState to_normal_form(const State& state, const SystemSpec& spec, const Grid& grid, double alpha,
                               double beta, double gamma) {
  const double c = spec.c2 - spec.c1;
  if (c == 0.0) throw PreconditionError("normal form needs c2 != c1");
  SpectralOps ops(grid);
  NormalFormState nf;
  nf.t = state.t;
  nf.c = c;
  nf.mu = gamma * alpha / c - beta;
  nf.nu = nf.mu / (4.0 * std::sqrt(3.0) * spec.d1 * std::numbers::pi);
  const double shift = -spec.c1 * state.t;
  nf.w = shift == 0.0 ? state.u : ops.translate(state.u, shift);
  const Eigen::ArrayXd vc = shift == 0.0 ? state.v : ops.translate(state.v, shift);
  nf.v_tilde = vc + (gamma / c) * nf.w.square();
  nf.A = grid.dx() * nf.w.sum();
  const double var = 4.0 * spec.d1 * (1.0 + state.t);
  nf.sigma = (-grid.points().square() / var).exp();
  nf.sigma /= grid.dx() * nf.sigma.sum();
  nf.R = nf.w - nf.sigma * nf.A;
  return nf;
}

NormalFormResidual normal_form_residual(const NormalFormState& prev, const NormalFormState& mid,
                                        const NormalFormState& next, double h, const SystemSpec& spec,
                                        const Grid& grid, double alpha, double gamma) {
  SpectralOps ops(grid);
  const double d1 = spec.d1, d2 = spec.d2;
  const double c = mid.c, mu = mid.mu;
  const Eigen::ArrayXd& w = mid.w;
  const Eigen::ArrayXd& vt = mid.v_tilde;
  const Eigen::ArrayXd w_t = (next.w - prev.w) / (2.0 * h);
  const Eigen::ArrayXd v_t = (next.v_tilde - prev.v_tilde) / (2.0 * h);
  const Eigen::ArrayXd wz = ops.derivative(w, 1);
  const Eigen::ArrayXd wzz = ops.derivative(w, 2);
  const Eigen::ArrayXd vz = ops.derivative(vt, 1);
  const Eigen::ArrayXd vzz = ops.derivative(vt, 2);
  const Eigen::ArrayXd w2zz = ops.derivative(w.square().eval(), 2);
  const Eigen::ArrayXd rhs_w = d1 * wzz + alpha * w * vt - mu * w.cube();
  const Eigen::ArrayXd rhs_v =
      d2 * vzz + c * vz +
      (gamma / c) * ((d1 - d2) * w2zz - 2.0 * d1 * wz.square() + 2.0 * alpha * w.square() * vt -
                     2.0 * mu * w.square().square());
  return {(w_t - rhs_w).abs().maxCoeff(), (v_t - rhs_v).abs().maxCoeff()};
}

}  // namespace rda
