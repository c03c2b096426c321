#include "psbm/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "psbm/errors.hpp"
#include "psbm/numeric.hpp"

namespace psbm {

std::string to_string(ComparisonFn::Kind kind) {
  return kind == ComparisonFn::Kind::BoydWong ? "boyd-wong" : "matkowski";
}

ComparisonFn::Kind parse_comparison_kind(std::string_view text) {
  if (text == "boyd-wong" || text == "boydwong" || text == "bw") return ComparisonFn::Kind::BoydWong;
  if (text == "matkowski" || text == "mk") return ComparisonFn::Kind::Matkowski;
  throw Error(ErrorCode::InvalidArgument, "unknown comparison kind '" + std::string(text) + "'");
}

ComparisonFn ComparisonFn::builtin(Builtin which, Kind kind) {
  ComparisonFn fn;
  fn.kind_ = kind;
  fn.builtin_ = which;
  switch (which) {
    case Builtin::PaperTau: fn.name_ = "paper_tau"; break;
    case Builtin::Half: fn.name_ = "half"; break;
    case Builtin::Identity: fn.name_ = "identity"; break;
  }
  return fn;
}

ComparisonFn ComparisonFn::builtin(std::string_view name, Kind kind) {
  if (name == "paper_tau") return builtin(Builtin::PaperTau, kind);
  if (name == "half") return builtin(Builtin::Half, kind);
  if (name == "identity") return builtin(Builtin::Identity, kind);
  throw Error(ErrorCode::UnknownBuiltin, "no builtin comparison function '" + std::string(name) + "'");
}

ComparisonFn ComparisonFn::piecewise_linear(std::vector<std::pair<double, double>> breakpoints,
                                            Kind kind, std::string name) {
  if (breakpoints.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "piecewise-linear function needs two breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const auto [x, y] = breakpoints[i];
    if (!std::isfinite(x) || !std::isfinite(y) || y < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "breakpoint values must be finite and y >= 0");
    }
    if (i > 0 && !(x > breakpoints[i - 1].first)) {
      throw Error(ErrorCode::InvalidArgument, "breakpoint x values must be strictly increasing");
    }
  }
  ComparisonFn fn;
  fn.kind_ = kind;
  fn.name_ = std::move(name);
  fn.breakpoints_ = std::move(breakpoints);
  return fn;
}

ComparisonFn ComparisonFn::from_json(std::string_view text, Kind default_kind) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  Kind kind = default_kind;
  std::string name = "piecewise";
  nlohmann::json points = doc;
  if (doc.is_object()) {
    if (doc.contains("kind")) kind = parse_comparison_kind(doc["kind"].get<std::string>());
    if (doc.contains("name")) name = doc["name"].get<std::string>();
    if (!doc.contains("breakpoints")) throw Error(ErrorCode::ParseError, "missing 'breakpoints'");
    points = doc["breakpoints"];
  }
  if (!points.is_array()) throw Error(ErrorCode::ParseError, "breakpoints must be an array");
  std::vector<std::pair<double, double>> breakpoints;
  for (const auto& item : points) {
    if (item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number()) {
      breakpoints.emplace_back(item[0].get<double>(), item[1].get<double>());
    } else if (item.is_object() && item.contains("x") && item.contains("y")) {
      breakpoints.emplace_back(item["x"].get<double>(), item["y"].get<double>());
    } else {
      throw Error(ErrorCode::ParseError, "breakpoint must be [x, y] or {\"x\":..,\"y\":..}");
    }
  }
  return piecewise_linear(std::move(breakpoints), kind, std::move(name));
}

double ComparisonFn::operator()(double v) const {
  if (builtin_) {
    switch (*builtin_) {
      case Builtin::PaperTau: return v <= 1.0 ? 0.9 * v : 0.5 * v;
      case Builtin::Half: return 0.5 * v;
      case Builtin::Identity: return v;
    }
  }
  const auto& bp = breakpoints_;
  std::size_t seg = 0;
  if (v >= bp.back().first) {
    seg = bp.size() - 2;
  } else if (v > bp.front().first) {
    auto it = std::upper_bound(bp.begin(), bp.end(), v,
                               [](double x, const auto& b) { return x < b.first; });
    seg = static_cast<std::size_t>(it - bp.begin()) - 1;
  }
  const auto [x0, y0] = bp[seg];
  const auto [x1, y1] = bp[seg + 1];
  const double y = y0 + (y1 - y0) * (v - x0) / (x1 - x0);
  return std::max(0.0, y);
}

double iterate_comparison(const ComparisonFn& fn, double v, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) v = fn(v);
  return v;
}

const PropertyResult* ComparisonReport::find(std::string_view property) const {
  for (const auto& p : properties) {
    if (p.name == property) return &p;
  }
  return nullptr;
}

std::vector<double> default_comparison_grid() {
  return {1e-6, 0.1, 0.5, 1.0, 2.0, 10.0, 243.0, 486.0, 34100.0};
}

namespace {

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "grid must be positive and strictly increasing");
    }
  }
}

PropertyResult zero_at_zero(const ComparisonFn& fn) {
  const double at0 = fn(0.0);
  PropertyResult r{"zero-at-zero", at0 == 0.0, std::nullopt, ""};
  if (!r.passed) {
    r.witness = 0.0;
    r.detail = "fn(0) = " + format_real(at0);
  }
  return r;
}

PropertyResult below_identity(const ComparisonFn& fn, const std::vector<double>& grid) {
  for (double g : grid) {
    const double value = fn(g);
    if (!strictly_less(value, g)) {
      return {"below-identity", false, g, "fn(" + format_real(g) + ") = " + format_real(value)};
    }
  }
  return {"below-identity", true, std::nullopt, ""};
}

PropertyResult monotone(const ComparisonFn& fn, const std::vector<double>& grid) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double lo = fn(grid[i]), hi = fn(grid[i + 1]);
    if (!less_or_equal(lo, hi)) {
      return {"monotone", false, grid[i + 1],
              "fn(" + format_real(grid[i]) + ") = " + format_real(lo) + " > fn(" +
                  format_real(grid[i + 1]) + ") = " + format_real(hi)};
    }
  }
  return {"monotone", true, std::nullopt, ""};
}

PropertyResult usc_probe(const ComparisonFn& fn, const std::vector<double>& grid) {
  for (double g : grid) {
    const double at = fn(g);
    double tail = 0.0;
    for (std::size_t k = 0; k < kUscProbeLength; ++k) {
      const double h = g * std::ldexp(1.0, -static_cast<int>(k + 1));
      const double sample = std::max(fn(g - h), fn(g + h));
      if (k + 1 == kUscProbeLength) tail = sample;
    }
    if (tail > at + kUscProbeTolerance * std::max(1.0, std::abs(at))) {
      return {"usc-probe", false, g,
              "samples near " + format_real(g) + " reach " + format_real(tail) + " > fn = " +
                  format_real(at)};
    }
  }
  return {"usc-probe", true, std::nullopt, ""};
}

PropertyResult iterate_decay(const ComparisonFn& fn, const std::vector<double>& grid,
                             std::size_t budget) {
  for (double g : grid) {
    double v = g;
    bool decayed = false;
    for (std::size_t k = 0; k <= budget; ++k) {
      if (v < kDecayTolerance) {
        decayed = true;
        break;
      }
      if (k < budget) v = fn(v);
    }
    if (!decayed) {
      return {"iterate-decay", false, g,
              "fn^" + std::to_string(budget) + "(" + format_real(g) + ") = " + format_real(v)};
    }
  }
  return {"iterate-decay", true, std::nullopt, ""};
}

ComparisonReport finish(const ComparisonFn& fn, std::vector<PropertyResult> props) {
  ComparisonReport report{fn.name(), fn.kind(), std::move(props), true};
  report.passed = std::all_of(report.properties.begin(), report.properties.end(),
                              [](const PropertyResult& p) { return p.passed; });
  return report;
}

}  // namespace

ComparisonReport check_boyd_wong_properties(const ComparisonFn& fn, const std::vector<double>& grid) {
  validate_grid(grid);
  return finish(fn, {zero_at_zero(fn), below_identity(fn, grid), monotone(fn, grid),
                     usc_probe(fn, grid)});
}

ComparisonReport check_matkowski_properties(const ComparisonFn& fn, const std::vector<double>& grid,
                                            std::size_t iter_budget) {
  validate_grid(grid);
  if (iter_budget == 0) throw Error(ErrorCode::InvalidArgument, "iteration budget must be >= 1");
  return finish(fn, {monotone(fn, grid), iterate_decay(fn, grid, iter_budget),
                     below_identity(fn, grid), zero_at_zero(fn)});
}

}  // namespace psbm
