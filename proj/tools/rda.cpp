// Command-line front end of the reaction-diffusion-advection laboratory.
#include "rda/analysis.hpp"
#include "rda/config.hpp"
#include "rda/kernels.hpp"
#include "rda/output.hpp"
#include "rda/registry.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace {

// A path to a config file, or the name of a built-in scenario.
rda::Scenario load(const std::string& what) {
  if (fs::exists(what)) return rda::parse_scenario(what);
  if (auto s = rda::builtin_scenario(what)) return *s;
  throw rda::ParseError(0, "no such config file or built-in scenario: " + what);
}

int cmd_run(const std::vector<std::string>& configs, const std::string& out, int jobs) {
  std::vector<rda::Scenario> scenarios;
  for (const std::string& c : configs) {
    if (c == "all") {
      for (const auto& e : rda::registry()) scenarios.push_back(e.scenario);
    } else {
      scenarios.push_back(load(c));
    }
  }
  const bool nested = scenarios.size() > 1;
  std::vector<int> codes(scenarios.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex print;
  auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      std::ostringstream log;
      const fs::path dir = nested ? fs::path(out) / scenarios[i].name : fs::path(out);
      codes[i] = rda::run_experiment(scenarios[i], dir, log);
      std::lock_guard<std::mutex> lock(print);
      std::cout << log.str() << std::flush;
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(scenarios.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  int code = 0;
  for (int c : codes) code = std::max(code, c);
  return code;
}

int cmd_verify(double tol) {
  const rda::IdentityReport report = rda::verify_identity_suite();
  for (const auto& id : report.identities) {
    std::cout << std::left << std::setw(22) << id.name << " cases=" << std::setw(4) << id.cases
              << " max_abs_error=" << rda::format_double(id.max_abs_error) << ' '
              << (id.max_abs_error <= tol ? "pass" : "fail") << '\n';
  }
  const bool ok = report.within(tol);
  std::cout << (ok ? "all identities within " : "identity suite exceeds ") << rda::format_double(tol) << '\n';
  return ok ? 0 : 1;
}

int cmd_classify(const std::string& config) {
  const rda::Scenario sc = load(config);
  std::cout << std::left << std::setw(6) << "list" << std::setw(24) << "term" << std::setw(4) << "p"
            << std::setw(12) << "category" << std::setw(6) << "mix" << "coupling\n";
  struct List {
    const char* name;
    const std::vector<rda::PolyTerm>* terms;
    rda::CouplingFor equation;
  };
  const List lists[] = {{"f1", &sc.system.f1, rda::CouplingFor::UEquation},
                        {"g1", &sc.system.g1, rda::CouplingFor::UEquation},
                        {"f2", &sc.system.f2, rda::CouplingFor::VEquation},
                        {"g2", &sc.system.g2, rda::CouplingFor::VEquation}};
  for (const List& l : lists) {
    for (const rda::PolyTerm& t : *l.terms) {
      const rda::TermClass c = rda::classify_term(t);
      std::cout << std::setw(6) << l.name << std::setw(24) << rda::format_term(t) << std::setw(4) << c.p
                << std::setw(12) << rda::to_string(c.category) << std::setw(6) << (c.is_mix ? "yes" : "no")
                << (c.is_coupling_for == l.equation ? "yes" : "no") << '\n';
    }
  }
  const rda::AdmissibilityReport a = rda::check_admissibility(sc.system);
  std::cout << "\ngaussian-envelope decay admissible: " << (a.gaussian_decay ? "yes" : "no") << '\n';
  std::cout << "drag-envelope decay admissible: " << (a.drag_decay ? "yes" : "no") << '\n';
  if (a.cubic_shape) {
    std::cout << "cubic shape: alpha=" << rda::format_double(a.cubic_shape->alpha)
              << " beta=" << rda::format_double(a.cubic_shape->beta)
              << " gamma=" << rda::format_double(a.cubic_shape->gamma) << '\n';
    if (a.sign_value) {
      std::cout << "sign value beta - gamma alpha/(c2-c1) = " << rda::format_double(*a.sign_value)
                << (a.sign_condition ? " (< 0, condition holds)" : " (>= 0, condition fails)") << '\n';
    }
  } else {
    std::cout << "cubic shape: no\n";
  }
  for (const std::string& n : a.notes) std::cout << "note: " << n << '\n';
  return 0;
}

int cmd_list() {
  for (const auto& e : rda::registry()) {
    std::cout << std::left << std::setw(20) << e.name << e.description << '\n';
  }
  return 0;
}

int cmd_plot(const std::string& csv, const std::string& out) {
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw rda::ParseError(0, "cannot open " + csv);
  std::ostringstream buf;
  buf << in.rdbuf();
  const rda::TrajectoryReport report = rda::parse_trajectory_csv(buf.str());
  std::ofstream o(out, std::ios::binary | std::ios::trunc);
  o << rda::trajectory_svg(report, fs::path(csv).parent_path().filename().string());
  if (!o) {
    std::cerr << "cannot write " << out << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // RDA_SEED is reserved; every computation is deterministic.
  CLI::App app{"rda: reaction-diffusion-advection stability laboratory"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  std::string out;
  int jobs = 1;
  auto* run = app.add_subcommand("run", "run scenarios and write CSV/SVG outputs");
  run->add_option("config", configs, "config file, built-in name, or 'all'")->required();
  run->add_option("--out", out, "output directory")->required();
  run->add_option("--jobs", jobs, "concurrent scenarios")->check(CLI::PositiveNumber);

  double tol = 1e-8;
  auto* verify = app.add_subcommand("verify-identities", "check closed-form identities against quadrature");
  verify->add_option("--tol", tol, "absolute tolerance");

  std::string classify_config;
  auto* classify = app.add_subcommand("classify", "classify nonlinear terms and report admissibility");
  classify->add_option("config", classify_config)->required();

  auto* list = app.add_subcommand("list", "list built-in scenarios");

  std::string csv, svg;
  auto* plot = app.add_subcommand("plot", "render a trajectory CSV as a log-log SVG chart");
  plot->add_option("trajectory", csv)->required();
  plot->add_option("--out", svg)->required();

  std::string dump_name;
  auto* dump = app.add_subcommand("dump", "print the config of a built-in scenario");
  dump->add_option("name", dump_name)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(configs, out, jobs);
    if (*verify) return cmd_verify(tol);
    if (*classify) return cmd_classify(classify_config);
    if (*list) return cmd_list();
    if (*plot) return cmd_plot(csv, svg);
    if (*dump) {
      const auto s = rda::builtin_scenario(dump_name);
      if (!s) {
        std::cerr << "unknown scenario " << dump_name << '\n';
        return 1;
      }
      std::cout << rda::serialize_scenario(*s);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
