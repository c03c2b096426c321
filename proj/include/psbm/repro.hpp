#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "psbm/serialize.hpp"
#include "psbm/space.hpp"

namespace psbm {

struct ReproItem {
  std::string id;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
};

struct ReproOptions {
  std::uint64_t seed = 0;
  /// Replaces a builtin space by name (e.g. a table loaded from disk).
  std::map<std::string, PartialSbSpace> overrides;
};

/// Re-runs the reference checks and reports one pass/fail item per check.
std::vector<ReproItem> run_repro(const ReproOptions& options = {});

Json to_json(const std::vector<ReproItem>& items);
std::string render_repro(const std::vector<ReproItem>& items);

}  // namespace psbm
