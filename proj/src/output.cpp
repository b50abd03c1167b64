#include "rda/output.hpp"

#include "rda/config.hpp"
#include "rda/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace rda {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kL1VariationLimit = 0.2;
constexpr double kGrowthExponentMin = 0.8;
constexpr double kExactTolU = 1e-4;
constexpr double kExactTolV = 5e-4;

bool wants(const Scenario& s, const std::string& selector) {
  return std::find(s.outputs.begin(), s.outputs.end(), selector) != s.outputs.end();
}

std::vector<double> column(const std::vector<Sample>& samples, double Sample::*field) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Sample& s : samples) out.push_back(s.*field);
  return out;
}

std::optional<DecayFit> try_fit(const std::vector<double>& t, const std::vector<double>& y, double t_min,
                                double t_max = std::numeric_limits<double>::infinity()) {
  try {
    return fit_decay_exponent(t, y, t_min, t_max);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

double relative_error(const Eigen::ArrayXd& sim, const Eigen::ArrayXd& exact) {
  const double scale = exact.abs().maxCoeff();
  return (sim - exact).abs().maxCoeff() / (scale > 0.0 ? scale : 1.0);
}

void lower_bound_verdicts(ExperimentResult& r) {
  const Scenario& sc = r.scenario;
  const std::vector<Sample>& samples = r.trajectory.samples;
  double alpha = 1.0;
  if (sc.analysis.alpha) alpha = *sc.analysis.alpha;
  else if (sc.initial.u.kind == Profile::Kind::GaussianBump) alpha = 1.0 / sc.initial.u.width;
  double nu0 = 0.0;
  if (sc.analysis.nu0) {
    nu0 = *sc.analysis.nu0;
  } else {
    nu0 = gaussian_lower_bound_amplitude(evaluate_profile(sc.initial.u, sc.grid, true), sc.grid, alpha);
  }
  const LowerBoundParams p{sc.system.d1, sc.system.d2, sc.system.c1, sc.system.c2, nu0, alpha};
  const std::vector<double> times = column(samples, &Sample::t);
  r.lower_bound = cas2_lower_bounds(p, times);
  const LowerBoundCurve& lb = *r.lower_bound;

  bool l1_ok = true, linf_ok = true;
  double l1_ratio = std::numeric_limits<double>::infinity();
  double linf_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    l1_ok = l1_ok && samples[i].l1_u >= lb.l1_bound[i];
    linf_ok = linf_ok && samples[i].linf_u >= lb.linf_bound[i];
    if (lb.l1_bound[i] > 0.0) l1_ratio = std::min(l1_ratio, samples[i].l1_u / lb.l1_bound[i]);
    if (lb.linf_bound[i] > 0.0) linf_ratio = std::min(linf_ratio, samples[i].linf_u / lb.linf_bound[i]);
  }
  r.verdicts.push_back({"l1_lower_bound", l1_ok && !samples.empty(), l1_ratio});

  // Strict growth of max(|u|, |v|) after t = 2.
  // The statistic is the smallest ratio of consecutive maxima.
  int compared = 0;
  double min_step = std::numeric_limits<double>::infinity();
  double prev = kNaN;
  for (const Sample& s : samples) {
    if (s.t <= 2.0) continue;
    const double m = std::max(s.linf_u, s.linf_v);
    if (!std::isnan(prev)) {
      ++compared;
      min_step = std::min(min_step, m / prev);
    }
    prev = m;
  }
  r.verdicts.push_back({"linf_growth", linf_ok && !samples.empty(), linf_ratio});
  r.verdicts.push_back({"linf_monotone", compared > 0 && min_step > 1.0, min_step});

  // Growth exponent of |u|_1 over the last available decade of time.
  const double t_last = times.empty() ? 0.0 : times.back();
  const auto fit = try_fit(times, column(samples, &Sample::l1_u), 0.1 * t_last);
  r.verdicts.push_back({"l1_growth_exponent", fit && fit->exponent >= kGrowthExponentMin,
                        fit ? fit->exponent : kNaN});
}

}  // namespace

const Verdict* ExperimentResult::find(const std::string& name) const {
  for (const Verdict& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

const std::vector<std::string>& known_outputs() {
  static const std::vector<std::string> names = {"trajectory",   "envelope",    "decay",
                                                 "decay_upper",  "l1_variation", "lower_bound",
                                                 "amplitude_law", "blow_up",    "exact_error",
                                                 "plots"};
  return names;
}

ExperimentResult execute(const Scenario& sc) {
  for (const std::string& o : sc.outputs) {
    const auto& k = known_outputs();
    if (std::find(k.begin(), k.end(), o) == k.end()) throw PreconditionError("unknown output selector '" + o + "'");
  }
  const bool envelope = sc.envelope && wants(sc, "envelope");
  const bool amplitude = wants(sc, "amplitude_law");
  const bool exact = wants(sc, "exact_error");
  const bool keep_history = envelope || amplitude;

  std::optional<CubicShape> shape;
  if (amplitude || (envelope && sc.envelope->kind == EnvelopeKind::NormalForm)) {
    shape = check_admissibility(sc.system).cubic_shape;
    if (!shape) throw PreconditionError("normal-form analyses need the cubic system shape");
  }

  ExperimentResult r;
  r.scenario = sc;
  std::vector<State> history;
  State last;
  r.trajectory = run(sc, [&](const State& s) {
    if (keep_history) history.push_back(s);
    last = s;
  });
  const std::vector<Sample>& samples = r.trajectory.samples;
  const std::vector<double> times = column(samples, &Sample::t);

  if (envelope) {
    EnvelopeContext ctx{sc.system, sc.grid, *sc.envelope};
    r.envelope = evaluate_envelope(history, ctx, shape);
    const EnvelopeVerdict& e = *r.envelope;
    const double ratio = e.eta_at_1 > 0.0 ? e.max_eta / e.eta_at_1 : kNaN;
    r.verdicts.push_back({"eta_" + to_string(sc.envelope->kind), e.bounded, ratio});
  }

  const AnalysisParams& a = sc.analysis;
  if (wants(sc, "decay")) {
    const auto fit = try_fit(times, column(samples, &Sample::linf_u), a.fit_t_min);
    const bool pass = fit && std::abs(fit->exponent - a.decay_target) <= a.decay_tolerance;
    r.verdicts.push_back({"decay_u", pass, fit ? fit->exponent : kNaN});
  }
  if (wants(sc, "decay_upper")) {
    const auto fu = try_fit(times, column(samples, &Sample::linf_u), a.fit_t_min);
    const auto fv = try_fit(times, column(samples, &Sample::linf_v), a.fit_t_min);
    const double limit = a.decay_target + a.decay_tolerance;
    r.verdicts.push_back({"decay_upper_u", fu && fu->exponent <= limit, fu ? fu->exponent : kNaN});
    r.verdicts.push_back({"decay_upper_v", fv && fv->exponent <= limit, fv ? fv->exponent : kNaN});
  }
  if (wants(sc, "l1_variation")) {
    const std::vector<double> l1 = column(samples, &Sample::l1_u);
    double variation = kNaN;
    if (!l1.empty()) {
      const auto [lo, hi] = std::minmax_element(l1.begin(), l1.end());
      variation = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
    }
    r.verdicts.push_back({"l1_variation", !l1.empty() && variation < kL1VariationLimit, variation});
  }
  if (wants(sc, "lower_bound")) lower_bound_verdicts(r);
  if (amplitude) {
    std::vector<NormalFormState> nf;
    nf.reserve(history.size());
    for (const State& s : history) nf.push_back(to_normal_form(s, sc.system, sc.grid, shape->alpha, shape->beta, shape->gamma));
    if (!nf.empty() && nf.front().mu > 0.0) {
      r.amplitude = amplitude_law_check(nf, a.delta.value_or(0.0), a.t_burn);
      r.verdicts.push_back({"amplitude_law", r.amplitude->pass && !r.trajectory.blew_up, r.amplitude->max_after_burn});
    } else {
      r.verdicts.push_back({"amplitude_law", false, nf.empty() ? kNaN : nf.front().mu});
    }
  }
  if (wants(sc, "blow_up")) {
    const double t = r.trajectory.blow_up_time.value_or(times.empty() ? 0.0 : times.back());
    r.verdicts.push_back({"no_blow_up", !r.trajectory.blew_up, t});
  }
  if (exact) {
    if (sc.initial.u.kind != Profile::Kind::ExactRemark51 || r.trajectory.blew_up) {
      r.verdicts.push_back({"exact_u_error", false, kNaN});
      r.verdicts.push_back({"exact_v_error", false, kNaN});
    } else {
      Eigen::ArrayXd eu(sc.grid.size()), ev(sc.grid.size());
      const quad::Options opt{1e-14, 1e-10, 4000};
      for (int j = 0; j < sc.grid.size(); ++j) {
        eu[j] = exact_u(sc.grid.x(j), last.t, sc.system.c1);
        ev[j] = exact_v(sc.grid.x(j), last.t, sc.system.c1, sc.system.c2, opt);
      }
      const double erru = relative_error(last.u, eu);
      const double errv = relative_error(last.v, ev);
      r.verdicts.push_back({"exact_u_error", erru <= kExactTolU, erru});
      r.verdicts.push_back({"exact_v_error", errv <= kExactTolV, errv});
    }
  }
  return r;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::filesystem::filesystem_error("cannot open for writing", path, std::make_error_code(std::errc::io_error));
  out << content;
  out.flush();
  if (!out) throw std::filesystem::filesystem_error("write failed", path, std::make_error_code(std::errc::io_error));
}

}  // namespace

void write_outputs(const ExperimentResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "trajectory.csv", trajectory_csv(r.trajectory));
  if (r.envelope) write_file(dir / "envelope.csv", envelope_csv(*r.envelope));
  write_file(dir / "verdicts.csv", verdicts_csv(r.verdicts));
  if (wants(r.scenario, "plots")) {
    write_file(dir / "plot_norms.svg", trajectory_svg(r.trajectory, r.scenario.name + ": norms"));
    if (r.envelope) {
      write_file(dir / "plot_eta.svg", loglog_svg(r.scenario.name + ": eta", "t", "eta",
                                                  {{"eta", r.envelope->times, r.envelope->eta_series},
                                                   {"instantaneous", r.envelope->times, r.envelope->instantaneous}}));
    }
  }
}

int run_experiment(const Scenario& scenario, const std::filesystem::path& out_dir, std::ostream& log) {
  ExperimentResult r;
  try {
    r = execute(scenario);
  } catch (const PreconditionError& e) {
    log << scenario.name << ": " << e.what() << '\n';
    return 1;
  } catch (const quad::QuadratureError& e) {
    log << scenario.name << ": " << e.what() << '\n';
    return 1;
  }
  try {
    write_outputs(r, out_dir);
  } catch (const std::exception& e) {
    log << scenario.name << ": " << e.what() << '\n';
    return 2;
  }
  for (const Verdict& v : r.verdicts) {
    log << scenario.name << ": " << v.name << ' ' << (v.pass ? "pass" : "fail") << ' ' << format_double(v.statistic)
        << '\n';
  }
  return 0;
}

std::string trajectory_csv(const TrajectoryReport& report) {
  std::string out = "t,linf_u,linf_v,l1_u,l1_v,blow_up_flag\n";
  auto row = [&](const Sample& s, int flag) {
    out += format_double(s.t) + ',' + format_double(s.linf_u) + ',' + format_double(s.linf_v) + ',' +
           format_double(s.l1_u) + ',' + format_double(s.l1_v) + ',' + std::to_string(flag) + '\n';
  };
  for (const Sample& s : report.samples) row(s, 0);
  if (report.blow_up_sample) row(*report.blow_up_sample, 1);
  return out;
}

std::string envelope_csv(const EnvelopeVerdict& v) {
  std::string out = "t,eta,bounded_flag\n";
  for (std::size_t i = 0; i < v.times.size(); ++i) {
    out += format_double(v.times[i]) + ',' + format_double(v.eta_series[i]) + ',' + (v.bounded ? "1" : "0") + '\n';
  }
  return out;
}

std::string verdicts_csv(const std::vector<Verdict>& verdicts) {
  std::string out = "name,result,statistic\n";
  for (const Verdict& v : verdicts) {
    out += v.name + ',' + (v.pass ? "pass" : "fail") + ',' + format_double(v.statistic) + '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

NumericTable parse_numeric_csv(const std::string& text) {
  const std::vector<std::string> lines = lines_of(text);
  if (lines.empty()) throw ParseError(1, "empty CSV");
  NumericTable t;
  t.header = split_line(lines[0]);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> cells = split_line(lines[i]);
    if (cells.size() != t.header.size()) throw ParseError(static_cast<int>(i + 1), "wrong number of columns");
    std::vector<double> row;
    for (const std::string& c : cells) {
      try {
        row.push_back(parse_double(c));
      } catch (const std::invalid_argument& e) {
        throw ParseError(static_cast<int>(i + 1), e.what());
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

TrajectoryReport parse_trajectory_csv(const std::string& text) {
  const NumericTable t = parse_numeric_csv(text);
  const std::vector<std::string> expected = {"t", "linf_u", "linf_v", "l1_u", "l1_v", "blow_up_flag"};
  if (t.header != expected) throw ParseError(1, "not a trajectory table");
  TrajectoryReport r;
  for (const auto& row : t.rows) {
    const Sample s{row[0], row[1], row[2], row[3], row[4]};
    if (row[5] != 0.0) {
      r.blew_up = true;
      r.blow_up_time = s.t;
      r.blow_up_sample = s;
    } else {
      r.samples.push_back(s);
    }
  }
  return r;
}

std::vector<Verdict> parse_verdicts_csv(const std::string& text) {
  const std::vector<std::string> lines = lines_of(text);
  if (lines.empty() || lines[0] != "name,result,statistic") throw ParseError(1, "not a verdicts table");
  std::vector<Verdict> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> cells = split_line(lines[i]);
    if (cells.size() != 3 || (cells[1] != "pass" && cells[1] != "fail")) {
      throw ParseError(static_cast<int>(i + 1), "malformed verdict row");
    }
    out.push_back({cells[0], cells[1] == "pass", parse_double(cells[2])});
  }
  return out;
}

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string loglog_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Series>& series) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  const double W = 640, H = 420, left = 70, right = 150, top = 40, bottom = 50;
  const double pw = W - left - right, ph = H - top - bottom;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, std::log10(s.x[i]));
      xmax = std::max(xmax, std::log10(s.x[i]));
      ymin = std::min(ymin, std::log10(s.y[i]));
      ymax = std::max(ymax, std::log10(s.y[i]));
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  xmin = std::floor(xmin), xmax = std::max(std::ceil(xmax), xmin + 1);
  ymin = std::floor(ymin), ymax = std::max(std::ceil(ymax), ymin + 1);
  auto px = [&](double lx) { return left + (lx - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double ly) { return top + (ymax - ly) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
     << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(title) << "</text>\n";
  os << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw) << "\" height=\""
     << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int xstep = std::max(1, static_cast<int>((xmax - xmin) / 8));
  for (int e = static_cast<int>(xmin); e <= static_cast<int>(xmax); e += xstep) {
    os << "<line x1=\"" << fixed(px(e)) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(px(e)) << "\" y2=\""
       << fixed(top + ph) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << fixed(px(e)) << "\" y=\"" << fixed(top + ph + 16) << "\" text-anchor=\"middle\">1e" << e
       << "</text>\n";
  }
  const int ystep = std::max(1, static_cast<int>((ymax - ymin) / 8));
  for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); e += ystep) {
    os << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(py(e)) << "\" x2=\"" << fixed(left + pw) << "\" y2=\""
       << fixed(py(e)) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(py(e) + 4) << "\" text-anchor=\"end\">1e" << e
       << "</text>\n";
  }
  os << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(H - 12) << "\" text-anchor=\"middle\">"
     << escape(xlabel) << "</text>\n";
  os << "<text x=\"16\" y=\"" << fixed(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << fixed(top + ph / 2) << ")\">" << escape(ylabel) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const char* color = colors[k % 6];
    std::string points;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0) || !std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!points.empty()) points += ' ';
      points += fixed(px(std::log10(s.x[i]))) + ',' + fixed(py(std::log10(s.y[i])));
    }
    if (!points.empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << points
         << "\"/>\n";
    }
    const double ly = top + 14 + 18.0 * k;
    os << "<line x1=\"" << fixed(left + pw + 10) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(left + pw + 30)
       << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << fixed(left + pw + 36) << "\" y=\"" << fixed(ly + 4) << "\">" << escape(s.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string trajectory_svg(const TrajectoryReport& report, const std::string& title) {
  const std::vector<double> t = column(report.samples, &Sample::t);
  return loglog_svg(title, "t", "norm",
                    {{"sup |u|", t, column(report.samples, &Sample::linf_u)},
                     {"sup |v|", t, column(report.samples, &Sample::linf_v)},
                     {"|u|_1", t, column(report.samples, &Sample::l1_u)},
                     {"|v|_1", t, column(report.samples, &Sample::l1_v)}});
}

}  // namespace rda
