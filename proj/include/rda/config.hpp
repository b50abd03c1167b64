// Flat key-value scenario format. Keys are dotted (system.d1, grid.n, ...);
// a line "[section]" prefixes the following keys with "section.". Lines
// starting with '#' are comments.
#pragma once

#include "rda/core.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rda {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Scenario that parsed but broke a core invariant.
class ValidationError : public PreconditionError {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Shortest round-trip decimal form of x.
std::string format_double(double x);
double parse_double(std::string_view text);

/// "coeff u^a v^b [ddx]"; absent powers are zero.
PolyTerm parse_term(std::string_view text);
std::string format_term(const PolyTerm& term);

Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& scenario);

}  // namespace rda
