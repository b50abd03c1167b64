// Built-in scenarios reproducing the systems studied by the laboratory.
#pragma once

#include "rda/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rda {

struct RegistryEntry {
  std::string name;
  std::string description;
  Scenario scenario;
};

const std::vector<RegistryEntry>& registry();
std::optional<Scenario> builtin_scenario(const std::string& name);

}  // namespace rda
