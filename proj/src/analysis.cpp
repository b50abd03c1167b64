#include "rda/analysis.hpp"

#include "rda/kernels.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rda {

TermClass classify_term(const PolyTerm& term, int dims) {
  if (dims < 1) throw PreconditionError("classify_term needs dims >= 1");
  TermClass c;
  c.p = term.alpha + term.beta + term.gamma;
  // p < 1 + 2/d  <=>  d p < d + 2, exact in integers.
  const int lhs = dims * c.p, rhs = dims + 2;
  c.category = lhs < rhs ? Category::Relevant : (lhs == rhs ? Category::Marginal : Category::Irrelevant);
  c.is_mix = term.alpha >= 1 && term.beta >= 1;
  if (c.is_mix) c.is_coupling_for = CouplingFor::Neither;
  else if (term.beta >= 1) c.is_coupling_for = CouplingFor::UEquation;
  else c.is_coupling_for = CouplingFor::VEquation;
  return c;
}

std::string to_string(Category c) {
  switch (c) {
    case Category::Relevant: return "relevant";
    case Category::Marginal: return "marginal";
    case Category::Irrelevant: return "irrelevant";
  }
  return "relevant";
}

std::string to_string(CouplingFor c) {
  switch (c) {
    case CouplingFor::UEquation: return "u-eq";
    case CouplingFor::VEquation: return "v-eq";
    case CouplingFor::Neither: return "neither";
  }
  return "neither";
}

namespace {

std::string describe(const PolyTerm& t) {
  std::ostringstream os;
  os << t.coeff;
  if (t.alpha) os << " u^" << t.alpha;
  if (t.beta) os << " v^" << t.beta;
  if (t.gamma) os << " ddx";
  return os.str();
}

// Checks one equation's term list. `own_is_u` selects which power is the
// equation's own component.
void scan(const std::vector<PolyTerm>& terms, bool own_is_u, bool derivative, const char* list,
          bool& gaussian_decay, bool& drag_decay, std::vector<std::string>& notes) {
  for (const PolyTerm& t : terms) {
    if (t.is_mix()) continue;
    const int own = own_is_u ? t.alpha : t.beta;
    const int degree = t.alpha + t.beta;
    if (own > 0) {
      // Pure self-interaction: |u|^4 dominance for f, |u|^2 for g.
      const bool ok = derivative ? degree >= 2 : degree >= 4;
      if (!ok) {
        gaussian_decay = drag_decay = false;
        notes.push_back(std::string(list) + ": self term " + describe(t) + " below the admissible degree");
      }
    } else {
      gaussian_decay = false;
      notes.push_back(std::string(list) + ": non-mix coupling " + describe(t) + " excluded from Gaussian-envelope decay");
      const bool ok = derivative ? degree >= 3 : degree >= 4;
      if (!ok) {
        drag_decay = false;
        notes.push_back(std::string(list) + ": coupling " + describe(t) + " is not irrelevant, excluded from drag-envelope decay");
      }
    }
  }
}

std::optional<CubicShape> cubic_shape(const SystemSpec& s) {
  if (!s.f2.empty() || !s.g1.empty()) return std::nullopt;
  CubicShape shape;
  for (const PolyTerm& t : s.f1) {
    if (t.alpha == 1 && t.beta == 1 && t.gamma == 0) shape.alpha += t.coeff;
    else if (t.alpha == 3 && t.beta == 0 && t.gamma == 0) shape.beta += t.coeff;
    else return std::nullopt;
  }
  for (const PolyTerm& t : s.g2) {
    if (t.alpha == 2 && t.beta == 0 && t.gamma == 1) shape.gamma += t.coeff;
    else return std::nullopt;
  }
  return shape;
}

}  // namespace

AdmissibilityReport check_admissibility(const SystemSpec& spec) {
  AdmissibilityReport r;
  r.gaussian_decay = r.drag_decay = true;
  if (spec.c1 == spec.c2) {
    r.gaussian_decay = r.drag_decay = false;
    r.notes.push_back("equal velocities: mix terms are not damped");
  }
  scan(spec.f1, true, false, "f1", r.gaussian_decay, r.drag_decay, r.notes);
  scan(spec.g1, true, true, "g1", r.gaussian_decay, r.drag_decay, r.notes);
  scan(spec.f2, false, false, "f2", r.gaussian_decay, r.drag_decay, r.notes);
  scan(spec.g2, false, true, "g2", r.gaussian_decay, r.drag_decay, r.notes);
  r.cubic_shape = cubic_shape(spec);
  if (r.cubic_shape && spec.c1 != spec.c2) {
    const CubicShape& s = *r.cubic_shape;
    r.sign_value = s.beta - s.gamma * s.alpha / (spec.c2 - spec.c1);
    r.sign_condition = *r.sign_value < 0.0;
  } else if (r.cubic_shape) {
    r.notes.push_back("cubic shape with equal velocities: sign condition undefined");
  }
  return r;
}

DecayFit fit_decay_exponent(const std::vector<double>& times, const std::vector<double>& values, double t_min,
                            double t_max) {
  if (times.size() != values.size()) throw PreconditionError("times and values differ in length");
  std::vector<double> X, Y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_min || times[i] > t_max) continue;
    if (!(values[i] > 0.0)) throw PreconditionError("fit_decay_exponent needs positive values");
    X.push_back(std::log1p(times[i]));
    Y.push_back(std::log(values[i]));
  }
  const int n = static_cast<int>(X.size());
  if (n < 8) throw PreconditionError("fit_decay_exponent needs at least 8 samples in the window");
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += X[i];
    my += Y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
  }
  if (!(sxx > 0.0)) throw PreconditionError("fit_decay_exponent needs distinct times");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = Y[i] - (intercept + slope * X[i]);
    ss += r * r;
  }
  const double se = std::sqrt(ss / (n - 2) / sxx);
  const boost::math::students_t dist(n - 2);
  const double q = boost::math::quantile(dist, 0.975);
  return {slope, q * se, n};
}

double trust_radius(double M, double s) { return std::sqrt(M * (1.0 + s) * std::log(1e12)); }

namespace {

enum class Weight { Exponential, Algebraic, Drag };

double gaussian(double z, double M, double s) { return std::exp(-z * z / (M * (1.0 + s))) / std::sqrt(1.0 + s); }

void finish(EnvelopeVerdict& v, double factor) {
  double run = 0.0;
  v.eta_series.clear();
  for (double e : v.instantaneous) {
    run = std::max(run, e);
    v.eta_series.push_back(run);
  }
  v.max_eta = run;
  v.eta_at_1 = v.eta_series.empty() ? 0.0 : v.eta_series.back();
  for (std::size_t i = 0; i < v.times.size(); ++i) {
    if (v.times[i] >= 1.0 - 1e-9) {
      v.eta_at_1 = v.eta_series[i];
      break;
    }
  }
  v.bounded = v.max_eta <= factor * v.eta_at_1;
  v.valid = std::all_of(v.sample_valid.begin(), v.sample_valid.end(), [](bool b) { return b; });
  try {
    v.fit = fit_decay_exponent(v.times, v.instantaneous, 1.0);
  } catch (const std::exception&) {
    v.fit.reset();
  }
}

EnvelopeVerdict physical_eta(const std::vector<State>& history, const EnvelopeContext& ctx, Weight kind) {
  EnvelopeVerdict v;
  const double M = ctx.env.M;
  const double r = ctx.env.r;
  const Grid& grid = ctx.grid;
  const double c[2] = {ctx.spec.c1, ctx.spec.c2};
  for (const State& st : history) {
    const double s = st.t;
    const double radius = trust_radius(M, s);
    const Eigen::ArrayXd* f[2] = {&st.u, &st.v};
    Eigen::ArrayXd total = Eigen::ArrayXd::Zero(grid.size());
    for (int i = 0; i < 2; ++i) {
      for (int jx = 0; jx < grid.size(); ++jx) {
        const double x = grid.x(jx);
        const double z = x + c[i] * s;
        if (std::abs(z) > radius) continue;
        const double a = std::abs((*f[i])[jx]);
        if (a == 0.0) continue;
        double value = 0.0;
        switch (kind) {
          case Weight::Exponential:
            value = a * std::sqrt(1.0 + s) * std::exp(z * z / (M * (1.0 + s)));
            break;
          case Weight::Algebraic:
            value = a / (std::pow(1.0 + std::abs(z) + std::sqrt(s), -r) + gaussian(z, M, s));
            break;
          case Weight::Drag:
            value = a / (gaussian(z, M, s) + drag_weight(x, s, c[i], c[1 - i], M, ctx.quadrature));
            break;
        }
        total[jx] += value;
      }
    }
    v.times.push_back(s);
    v.instantaneous.push_back(total.maxCoeff());
    v.sample_valid.push_back(within_domain_budget(ctx.spec, grid, M, s));
  }
  finish(v, ctx.bound_factor);
  return v;
}

}  // namespace

EnvelopeVerdict eta_exponential(const std::vector<State>& history, const EnvelopeContext& ctx) {
  if (ctx.env.kind != EnvelopeKind::ExponentialGaussian) throw PreconditionError("eta_exponential needs an exponential envelope");
  EnvelopeVerdict v = physical_eta(history, ctx, Weight::Exponential);
  v.kind = ctx.env.kind;
  return v;
}

EnvelopeVerdict eta_algebraic(const std::vector<State>& history, const EnvelopeContext& ctx) {
  if (ctx.env.kind != EnvelopeKind::Algebraic) throw PreconditionError("eta_algebraic needs an algebraic envelope");
  if (!(ctx.env.r >= 3.0)) throw PreconditionError("eta_algebraic needs r >= 3");
  EnvelopeVerdict v = physical_eta(history, ctx, Weight::Algebraic);
  v.kind = ctx.env.kind;
  return v;
}

EnvelopeVerdict eta_drag(const std::vector<State>& history, const EnvelopeContext& ctx) {
  if (ctx.env.kind != EnvelopeKind::DragAugmented) throw PreconditionError("eta_drag needs a drag envelope");
  if (ctx.spec.c1 == ctx.spec.c2) throw PreconditionError("eta_drag needs c1 != c2");
  EnvelopeVerdict v = physical_eta(history, ctx, Weight::Drag);
  v.kind = ctx.env.kind;
  return v;
}

EnvelopeVerdict eta_normal_form(const std::vector<NormalFormState>& history, const EnvelopeContext& ctx) {
  if (ctx.env.kind != EnvelopeKind::NormalForm) throw PreconditionError("eta_normal_form needs a normal-form envelope");
  EnvelopeVerdict v;
  v.kind = ctx.env.kind;
  const double M = ctx.env.M;
  const Grid& grid = ctx.grid;
  SpectralOps ops(grid);
  for (const NormalFormState& nf : history) {
    const double s = nf.t;
    const double radius = trust_radius(M, s);
    const Eigen::ArrayXd wz = ops.derivative(nf.w, 1);
    Eigen::ArrayXd total = Eigen::ArrayXd::Zero(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
      const double zeta = grid.x(j);
      if (std::abs(zeta) <= radius) {
        total[j] += std::sqrt(1.0 + s) * std::exp(zeta * zeta / (M * (1.0 + s))) *
                    (std::abs(nf.w[j]) + std::sqrt(s) * std::abs(wz[j]));
      }
      const double z = zeta + nf.c * s;
      const double a = std::abs(nf.v_tilde[j]);
      if (std::abs(z) <= radius && a != 0.0) {
        total[j] += a / (gaussian(z, M, s) + normal_form_v_weight(zeta, s, nf.c, M, ctx.quadrature));
      }
    }
    const auto [rsup, rl1] = ops.transform_norms(nf.R);
    const double remainder = std::pow(std::log(s + 2.0), 0.75) * (rsup + std::sqrt(1.0 + s) * rl1);
    v.times.push_back(s);
    v.instantaneous.push_back(total.maxCoeff() + remainder);
    v.h2_series.push_back(ops.h2_norm(nf.w));
    v.sample_valid.push_back(within_domain_budget(ctx.spec, grid, M, s));
  }
  finish(v, ctx.bound_factor);
  return v;
}

EnvelopeVerdict evaluate_envelope(const std::vector<State>& history, const EnvelopeContext& ctx,
                                  const std::optional<CubicShape>& shape) {
  switch (ctx.env.kind) {
    case EnvelopeKind::ExponentialGaussian: return eta_exponential(history, ctx);
    case EnvelopeKind::Algebraic: return eta_algebraic(history, ctx);
    case EnvelopeKind::DragAugmented: return eta_drag(history, ctx);
    case EnvelopeKind::NormalForm: {
      if (!shape) throw PreconditionError("normal-form envelope needs the cubic system shape");
      std::vector<NormalFormState> nf;
      nf.reserve(history.size());
      for (const State& s : history) {
        nf.push_back(to_normal_form(s, ctx.spec, ctx.grid, shape->alpha, shape->beta, shape->gamma));
      }
      return eta_normal_form(nf, ctx);
    }
  }
  throw PreconditionError("unknown envelope kind");
}

LowerBoundCurve cas2_lower_bounds(const LowerBoundParams& p, const std::vector<double>& times) {
  if (!(p.d1 > 0.0) || !(p.d2 > 0.0) || !(p.alpha > 0.0)) {
    throw PreconditionError("cas2_lower_bounds needs d1, d2, alpha > 0");
  }
  LowerBoundCurve curve;
  curve.times = times;
  curve.regime = p.c1 == p.c2 ? Regime::EqualVelocities : Regime::DistinctVelocities;
  const double dm = std::min(p.d1, p.d2);
  const double a = p.alpha;
  const double nu4 = std::pow(p.nu0, 4);
  const double d13d2 = p.d1 * p.d1 * p.d1 * p.d2;
  const double pi = std::numbers::pi;
  const double dc = std::abs(p.c1 - p.c2);
  for (double t : times) {
    double l1 = 0.0, linf = 0.0;
    if (t > 0.0) {
      const double g = 1.0 + 4.0 * a * dm * t;
      if (curve.regime == Regime::EqualVelocities) {
        l1 = nu4 * std::pow(dm, 4) * std::sqrt(pi) * t * t * t / (64.0 * d13d2 * std::sqrt(a) * std::pow(g, 1.5));
        linf = nu4 * std::pow(dm, 4) * t * t * t / (32.0 * d13d2 * g * g);
      } else {
        const double inner =
            -2.0 * std::sqrt(g) + std::sqrt(a * pi) * dc * t * std::erf(std::sqrt(a) * dc * t / (2.0 * std::sqrt(g)));
        l1 = nu4 * std::pow(dm, 4) * std::sqrt(pi) * t * inner / (32.0 * d13d2 * std::pow(a, 1.5) * dc * dc * g);
        const double e = std::erf(std::sqrt(2.0 * a * t / g) * dc);
        linf = nu4 * std::pow(dm, 3) * pi * std::log(g / (1.0 + 4.0 * a * dm * std::sqrt(t))) * e * e /
               (128.0 * a * a * d13d2 * dc * dc);
      }
    }
    curve.l1_bound.push_back(std::max(0.0, l1));
    curve.linf_bound.push_back(std::max(0.0, linf));
  }
  return curve;
}

double gaussian_lower_bound_amplitude(const Eigen::ArrayXd& u0, const Grid& grid, double alpha) {
  // Restricted to where the reference Gaussian is above round-off.
  const double radius = std::sqrt(std::log(1e12) / alpha);
  double nu = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    if (std::abs(x) > radius) continue;
    nu = std::min(nu, u0[j] * std::exp(alpha * x * x));
  }
  return std::isfinite(nu) ? std::max(0.0, nu) : 0.0;
}

AmplitudeVerdict amplitude_law_check(const std::vector<NormalFormState>& series, double delta, double t_burn,
                                     double upper) {
  if (series.empty()) throw PreconditionError("amplitude_law_check needs samples");
  if (!(series.front().mu > 0.0)) throw PreconditionError("amplitude_law_check needs mu > 0");
  AmplitudeVerdict v;
  v.nu = series.front().nu;
  bool any_after_burn = false;
  std::vector<double> lx, ly;
  for (const NormalFormState& nf : series) {
    const double L = std::log1p(nf.t);
    const double q = std::abs(nf.A) * std::sqrt(2.0 * v.nu * L);
    v.times.push_back(nf.t);
    v.quantity.push_back(q);
    if (delta > 0.0) {
      v.max_with_delta = std::max(v.max_with_delta, std::abs(nf.A) * std::sqrt(1.0 / (delta * delta) + 2.0 * v.nu * L));
    }
    if (nf.t >= t_burn) {
      any_after_burn = true;
      v.max_after_burn = std::max(v.max_after_burn, q);
      if (nf.A != 0.0) {
        lx.push_back(std::log(L));
        ly.push_back(std::log(std::abs(nf.A)));
      }
    }
  }
  v.pass = any_after_burn && v.max_after_burn <= upper;
  const double t_last = v.times.back();
  v.final_decade_min = std::numeric_limits<double>::infinity();
  v.final_decade_max = 0.0;
  for (std::size_t i = 0; i < v.times.size(); ++i) {
    if (v.times[i] >= 0.1 * t_last && v.times[i] > 0.0) {
      v.final_decade_min = std::min(v.final_decade_min, v.quantity[i]);
      v.final_decade_max = std::max(v.final_decade_max, v.quantity[i]);
    }
  }
  v.window_ok = v.final_decade_min >= 0.3 && v.final_decade_max <= upper;
  if (lx.size() >= 3) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxx += (lx[i] - mx) * (lx[i] - mx);
      sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx > 0.0) v.log_law_slope = sxy / sxx;
  }
  return v;
}

}  // namespace rda
