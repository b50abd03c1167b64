// Hand-rolled property harness: seeded generators, a case runner that keeps
// the first counterexample, and the invariant suites built on top of it.
#pragma once

#include "rda/core.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace rda::props {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi);
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(integer(0, static_cast<int>(items.size()) - 1))];
  }

  PolyTerm term(bool divergence);
  SystemSpec system(int max_terms);
  Profile profile();
  Scenario scenario();

 private:
  std::mt19937_64 rng_;
};

/// Outcome of one generated case. `detail` describes a failure.
struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome expect(bool ok, const std::string& detail);

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string counterexample;
  double seconds = 0.0;

  bool passed() const { return failures == 0 && cases > 0; }
};

PropertyResult check(const std::string& name, int cases, std::uint64_t seed,
                     const std::function<Outcome(Gen&)>& body);

struct Suite {
  std::string name;
  std::function<PropertyResult(int cases)> run;
  bool acceptance;  // part of the property criterion
};

const std::vector<Suite>& suites();

}  // namespace rda::props
