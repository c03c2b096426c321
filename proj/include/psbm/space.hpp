#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psbm/point.hpp"

namespace psbm {

/// Explicit list of points. Label carriers also keep the label text.
struct FiniteList {
  std::vector<Point> points;
  std::vector<std::string> labels;  // labels[i] names Point::label(i); empty for scalar lists
};

/// Closed interval [lo, hi]; hi may be +infinity.
struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Union of isolated scalars and closed intervals. Sampling truncates every
/// interval at `bound`.
struct SampledRegion {
  std::vector<double> isolated;
  std::vector<Interval> parts;
  double bound = 64.0;
};

using Carrier = std::variant<FiniteList, SampledRegion>;

/// The three-argument distance. Tabulated metrics store one value per ordered
/// triple of labels; analytic ones evaluate a rule on scalar points.
class TripleMetric {
 public:
  using Rule = std::function<double(double, double, double)>;

  /// values[(i*n + j)*n + k] = distance(i, j, k). Values are not validated
  /// here so that deliberately invalid tables can be represented.
  static TripleMetric tabulated(std::size_t n, std::vector<double> values);

  /// p^5 / 2(p^5+r^5) / p^5+q^5+r^5; evaluated by the SIMD kernels in batches.
  static TripleMetric quintic();

  static TripleMetric analytic(std::string name, Rule rule);

  bool is_tabulated() const { return kind_ == Kind::Tabulated; }
  std::string_view name() const { return name_; }
  std::size_t table_size() const { return n_; }
  std::span<const double> table() const { return values_; }

  /// No carrier check; callers go through PartialSbSpace::distance.
  double operator()(const Point& p, const Point& q, const Point& r) const;

  /// Batched evaluation over scalar coordinates (analytic metrics only).
  void evaluate_batch(std::span<const double> p, std::span<const double> q,
                      std::span<const double> r, std::span<double> out) const;

  /// Returns a copy with one table entry replaced.
  TripleMetric with_entry(std::size_t i, std::size_t j, std::size_t k, double value) const;

 private:
  enum class Kind : std::uint8_t { Tabulated, Quintic, Analytic };

  Kind kind_ = Kind::Tabulated;
  std::string name_;
  std::size_t n_ = 0;
  std::vector<double> values_;
  Rule rule_;
};

/// A carrier, a triple distance on it and the coefficient t >= 1. Whether the
/// axioms actually hold is established by check_axioms, not by construction.
class PartialSbSpace {
 public:
  PartialSbSpace(std::string name, Carrier carrier, TripleMetric metric, double coefficient);

  const std::string& name() const { return name_; }
  const Carrier& carrier() const { return carrier_; }
  const TripleMetric& metric() const { return metric_; }
  double coefficient() const { return coefficient_; }

  bool is_finite() const { return std::holds_alternative<FiniteList>(carrier_); }
  /// Points of a FiniteList carrier; throws InfeasibleExhaustive otherwise.
  const std::vector<Point>& points() const;
  const SampledRegion* region() const { return std::get_if<SampledRegion>(&carrier_); }

  bool contains(const Point& p) const;
  /// Isolated points: every label, every FiniteList point, isolated region scalars.
  bool is_isolated(const Point& p) const;

  /// Distance with carrier membership checks (UnknownPoint).
  double distance(const Point& p, const Point& q, const Point& r) const;

  /// Exact equality on isolated points, |a-b| <= tol on continuous ones.
  bool same_point(const Point& a, const Point& b, double tol) const;

  std::string display(const Point& p) const;
  /// Inverse of display: a label name, or a real number for scalar carriers.
  Point parse_point(std::string_view text) const;

  PartialSbSpace with_coefficient(double t) const;
  PartialSbSpace with_bound(double bound) const;
  PartialSbSpace with_metric(TripleMetric metric) const;

 private:
  std::string name_;
  Carrier carrier_;
  TripleMetric metric_;
  double coefficient_;
};

/// Evaluates the triple distance; see PartialSbSpace::distance.
double evaluate_metric(const PartialSbSpace& space, const Point& p, const Point& q,
                       const Point& r);

/// Builtins: quintic_ray, two_point_a, two_point_b, quintic_gap.
PartialSbSpace builtin_space(std::string_view name);
std::vector<std::string> builtin_space_names();

/// Parses the line-based space-file format.
PartialSbSpace load_tabulated_space(std::string_view text, std::string name = "file");
/// Writes a FiniteList label space back into the space-file format.
std::string write_tabulated_space(const PartialSbSpace& space);

/// FiniteList carriers return every point. Regions return their isolated
/// points plus `count` jittered grid points of the continuous parts, truncated
/// at the bound. Deterministic in (count, seed).
std::vector<Point> sample_carrier(const PartialSbSpace& space, std::size_t count,
                                  std::uint64_t seed);

/// As sample_carrier, without jitter: isolated points plus an even grid.
std::vector<Point> grid_carrier(const PartialSbSpace& space, std::size_t count);

/// The same metric and coefficient over an explicit finite point list.
PartialSbSpace restrict_to(const PartialSbSpace& space, std::vector<Point> points);

}  // namespace psbm
