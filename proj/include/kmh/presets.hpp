#pragma once

// Bundled root data and characters used by the worked examples and the acceptance suite.

#include "kmh/laurent.hpp"
#include "kmh/rootdatum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kmh {

struct Preset {
  std::string name;
  std::string description;
  RootDatum datum;
  std::optional<Character> tau;
  int L = 3;
};

/// Names accepted by preset(): sl3, sl3-minus, affine-sl2, rank2-even, rank2-even-ext,
/// right-angled, case1…case7.
std::vector<std::string> preset_names();

/// Resolves a bundled preset; throws ParseError for unknown names.
Preset preset(const std::string& name);

/// Parses a preset document {"datum": {...}, "tau": [...], "L": n} or a bare datum document.
Preset preset_from_json(const nlohmann::json& doc, const std::string& name);

}  // namespace kmh
