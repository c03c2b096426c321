#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace psbm {

/// A map [0,inf) -> [0,inf) dominating a contraction inequality, tagged with
/// the class it is meant to belong to.
class ComparisonFn {
 public:
  enum class Kind { BoydWong, Matkowski };
  enum class Builtin { PaperTau, Half, Identity };

  /// paper_tau: 9a/10 on [0,1], a/2 above.  half: a/2.  identity: a.
  static ComparisonFn builtin(Builtin which, Kind kind);
  static ComparisonFn builtin(std::string_view name, Kind kind);

  /// Linear interpolation through (x, y) breakpoints (x strictly increasing,
  /// y >= 0), extended by the last segment's slope beyond the final breakpoint
  /// and by the first segment's slope before the first, clamped at zero.
  static ComparisonFn piecewise_linear(std::vector<std::pair<double, double>> breakpoints,
                                       Kind kind, std::string name = "piecewise");

  /// JSON: [[x,y],...] or {"kind": "boyd-wong"|"matkowski", "breakpoints": [[x,y],...]}.
  static ComparisonFn from_json(std::string_view text, Kind default_kind);

  double operator()(double v) const;

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<std::pair<double, double>>& breakpoints() const { return breakpoints_; }

  ComparisonFn with_kind(Kind kind) const {
    ComparisonFn copy = *this;
    copy.kind_ = kind;
    return copy;
  }

 private:
  Kind kind_ = Kind::BoydWong;
  std::string name_;
  std::optional<Builtin> builtin_;
  std::vector<std::pair<double, double>> breakpoints_;
};

std::string to_string(ComparisonFn::Kind kind);
ComparisonFn::Kind parse_comparison_kind(std::string_view text);

/// k-fold composition; k = 0 returns v.
double iterate_comparison(const ComparisonFn& fn, double v, std::size_t k);

struct PropertyResult {
  std::string name;  // zero-at-zero, below-identity, monotone, iterate-decay, usc-probe
  bool passed = true;
  std::optional<double> witness;
  std::string detail;
};

struct ComparisonReport {
  std::string function;
  ComparisonFn::Kind kind = ComparisonFn::Kind::BoydWong;
  std::vector<PropertyResult> properties;
  bool passed = true;

  const PropertyResult* find(std::string_view property) const;
};

inline constexpr double kDecayTolerance = 1e-9;
inline constexpr std::size_t kUscProbeLength = 16;
inline constexpr double kUscProbeTolerance = 1e-3;

/// {1e-6, 0.1, 0.5, 1, 2, 10, 243, 486, 34100}
std::vector<double> default_comparison_grid();

/// zero-at-zero, below-identity, monotone on consecutive grid pairs, and an
/// upper-semicontinuity probe (16 two-sided samples at steps g*2^-(k+1); the
/// last pair must not exceed fn(g) by more than 1e-3 relative). The probe is
/// numerical evidence only.
ComparisonReport check_boyd_wong_properties(const ComparisonFn& fn, const std::vector<double>& grid);

/// monotone on grid pairs, iterate-decay (fn^k(v) < 1e-9 within the budget),
/// and the consequences fn(v) < v and fn(0) = 0.
ComparisonReport check_matkowski_properties(const ComparisonFn& fn, const std::vector<double>& grid,
                                            std::size_t iter_budget);

}  // namespace psbm
