#include "rda/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace rda {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

std::string first_violation(const ValidationReport& r) {
  if (r.violations.empty()) return "validation failed";
  const Violation& v = r.violations.front();
  return "invariant '" + v.invariant + "' violated: " + v.message;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::string profile_kind_name(Profile::Kind k) {
  switch (k) {
    case Profile::Kind::GaussianBump: return "gaussian";
    case Profile::Kind::AlgebraicBump: return "algebraic";
    case Profile::Kind::ExactRemark51: return "exact_remark51";
    case Profile::Kind::Custom: return "custom";
  }
  return "gaussian";
}

Profile::Kind profile_kind_from(std::string_view s) {
  if (s == "gaussian") return Profile::Kind::GaussianBump;
  if (s == "algebraic") return Profile::Kind::AlgebraicBump;
  if (s == "exact_remark51") return Profile::Kind::ExactRemark51;
  if (s == "custom") return Profile::Kind::Custom;
  throw std::invalid_argument("unknown profile kind '" + std::string(s) + "'");
}

std::vector<PolyTerm> parse_terms(std::string_view s) {
  std::vector<PolyTerm> out;
  if (trim(s).empty()) return out;
  for (std::string_view item : split(s, ',')) out.push_back(parse_term(item));
  return out;
}

std::string format_terms(const std::vector<PolyTerm>& terms) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ", ";
    out += format_term(terms[i]);
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : PreconditionError(first_violation(report)), report_(std::move(report)) {}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text == "nan") return std::nan("");
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

PolyTerm parse_term(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  if (!(in >> token)) throw std::invalid_argument("empty term");
  PolyTerm t;
  t.coeff = parse_double(token);
  bool seen_u = false, seen_v = false, seen_d = false;
  while (in >> token) {
    if (token == "ddx") {
      if (seen_d) throw std::invalid_argument("repeated ddx in term '" + std::string(text) + "'");
      seen_d = true;
      t.gamma = 1;
      continue;
    }
    const char var = token[0];
    if ((var != 'u' && var != 'v') || (token.size() > 1 && token[1] != '^') || token.size() == 2) {
      throw std::invalid_argument("bad factor '" + token + "' in term '" + std::string(text) + "'");
    }
    const int power = token.size() == 1 ? 1 : parse_int(std::string_view(token).substr(2));
    if (power < 0) throw std::invalid_argument("negative power in term '" + std::string(text) + "'");
    bool& seen = var == 'u' ? seen_u : seen_v;
    if (seen) throw std::invalid_argument("repeated factor in term '" + std::string(text) + "'");
    seen = true;
    (var == 'u' ? t.alpha : t.beta) = power;
  }
  return t;
}

std::string format_term(const PolyTerm& t) {
  std::string s = format_double(t.coeff) + " u^" + std::to_string(t.alpha) + " v^" + std::to_string(t.beta);
  if (t.gamma == 1) s += " ddx";
  else if (t.gamma != 0) s += " ddx^" + std::to_string(t.gamma);
  return s;
}

Scenario parse_scenario_text(const std::string& text) {
  Scenario sc;
  double L = sc.grid.half_width();
  int n = sc.grid.size();
  EnvelopeSpec env;
  bool has_env = false;

  using Setter = std::function<void(std::string_view)>;
  auto real = [](double& field) { return Setter([&field](std::string_view v) { field = parse_double(v); }); };
  auto opt_real = [](std::optional<double>& field) {
    return Setter([&field](std::string_view v) { field = parse_double(v); });
  };
  auto terms = [](std::vector<PolyTerm>& field) {
    return Setter([&field](std::string_view v) { field = parse_terms(v); });
  };
  auto profile = [&](const std::string& prefix, Profile& p, std::map<std::string, Setter>& m) {
    m[prefix + "kind"] = [&p](std::string_view v) { p.kind = profile_kind_from(v); };
    m[prefix + "amplitude"] = real(p.amplitude);
    m[prefix + "width"] = real(p.width);
    m[prefix + "power"] = real(p.power);
    m[prefix + "center"] = real(p.center);
    m[prefix + "expression"] = [&p](std::string_view v) { p.expression = std::string(v); };
  };

  std::map<std::string, Setter> keys;
  keys["name"] = [&](std::string_view v) { sc.name = std::string(v); };
  keys["system.d1"] = real(sc.system.d1);
  keys["system.d2"] = real(sc.system.d2);
  keys["system.c1"] = real(sc.system.c1);
  keys["system.c2"] = real(sc.system.c2);
  keys["system.f1"] = terms(sc.system.f1);
  keys["system.f2"] = terms(sc.system.f2);
  keys["system.g1"] = terms(sc.system.g1);
  keys["system.g2"] = terms(sc.system.g2);
  keys["grid.L"] = real(L);
  keys["grid.n"] = [&](std::string_view v) { n = parse_int(v); };
  keys["time.dt"] = real(sc.dt);
  keys["time.t_end"] = real(sc.t_end);
  keys["time.sample_dt"] = real(sc.sample_dt);
  profile("initial.u.", sc.initial.u, keys);
  profile("initial.v.", sc.initial.v, keys);
  keys["envelope.kind"] = [&](std::string_view v) {
    has_env = true;
    env.kind = envelope_kind_from_string(std::string(v));
  };
  keys["envelope.M"] = [&](std::string_view v) {
    has_env = true;
    env.M = parse_double(v);
  };
  keys["envelope.r"] = [&](std::string_view v) {
    has_env = true;
    env.r = parse_double(v);
  };
  keys["analysis.blow_up_threshold"] = real(sc.analysis.blow_up_threshold);
  keys["analysis.fit_t_min"] = real(sc.analysis.fit_t_min);
  keys["analysis.decay_target"] = real(sc.analysis.decay_target);
  keys["analysis.decay_tolerance"] = real(sc.analysis.decay_tolerance);
  keys["analysis.t_burn"] = real(sc.analysis.t_burn);
  keys["analysis.nu0"] = opt_real(sc.analysis.nu0);
  keys["analysis.alpha"] = opt_real(sc.analysis.alpha);
  keys["analysis.delta"] = opt_real(sc.analysis.delta);
  keys["outputs"] = [&](std::string_view v) {
    sc.outputs.clear();
    if (trim(v).empty()) return;
    for (std::string_view item : split(v, ',')) {
      if (item.empty()) throw std::invalid_argument("empty output selector");
      sc.outputs.emplace_back(item);
    }
  };

  std::set<std::string> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string_view bare = trim(line.substr(0, eq));
    if (bare.empty()) throw ParseError(line_no, "empty key");
    const std::string key = section.empty() ? std::string(bare) : section + "." + std::string(bare);
    const auto it = keys.find(key);
    if (it == keys.end()) throw ParseError(line_no, "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ParseError(line_no, "duplicate key '" + key + "'");
    try {
      it->second(trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, key + ": " + e.what());
    }
  }

  try {
    sc.grid = Grid(L, n);
  } catch (const PreconditionError& e) {
    ValidationReport r;
    r.violations.push_back({"grid", e.what()});
    throw ValidationError(r);
  }
  if (has_env) sc.envelope = env;
  ValidationReport report = validate_scenario(sc);
  if (!report.ok()) throw ValidationError(report);
  return sc;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream os;
  auto put = [&](const std::string& key, const std::string& value) {
    os << key << " =";
    if (!value.empty()) os << ' ' << value;
    os << '\n';
  };
  auto profile = [&](const std::string& prefix, const Profile& p) {
    put(prefix + "kind", profile_kind_name(p.kind));
    put(prefix + "amplitude", format_double(p.amplitude));
    put(prefix + "width", format_double(p.width));
    put(prefix + "power", format_double(p.power));
    put(prefix + "center", format_double(p.center));
    if (!p.expression.empty()) put(prefix + "expression", p.expression);
  };
  std::string outs;
  for (std::size_t i = 0; i < sc.outputs.size(); ++i) outs += (i ? ", " : "") + sc.outputs[i];
  put("name", sc.name);
  put("outputs", outs);
  os << "\n[system]\n";
  put("d1", format_double(sc.system.d1));
  put("d2", format_double(sc.system.d2));
  put("c1", format_double(sc.system.c1));
  put("c2", format_double(sc.system.c2));
  put("f1", format_terms(sc.system.f1));
  put("f2", format_terms(sc.system.f2));
  put("g1", format_terms(sc.system.g1));
  put("g2", format_terms(sc.system.g2));
  os << "\n[grid]\n";
  put("L", format_double(sc.grid.half_width()));
  put("n", std::to_string(sc.grid.size()));
  os << "\n[time]\n";
  put("dt", format_double(sc.dt));
  put("t_end", format_double(sc.t_end));
  put("sample_dt", format_double(sc.sample_dt));
  os << "\n[initial]\n";
  profile("u.", sc.initial.u);
  profile("v.", sc.initial.v);
  if (sc.envelope) {
    os << "\n[envelope]\n";
    put("kind", to_string(sc.envelope->kind));
    put("M", format_double(sc.envelope->M));
    put("r", format_double(sc.envelope->r));
  }
  os << "\n[analysis]\n";
  const AnalysisParams& a = sc.analysis;
  put("blow_up_threshold", format_double(a.blow_up_threshold));
  put("fit_t_min", format_double(a.fit_t_min));
  put("decay_target", format_double(a.decay_target));
  put("decay_tolerance", format_double(a.decay_tolerance));
  put("t_burn", format_double(a.t_burn));
  if (a.nu0) put("nu0", format_double(*a.nu0));
  if (a.alpha) put("alpha", format_double(*a.alpha));
  if (a.delta) put("delta", format_double(*a.delta));
  return os.str();
}

}  // namespace rda
