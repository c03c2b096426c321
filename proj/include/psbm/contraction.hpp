#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psbm/comparison.hpp"
#include "psbm/point.hpp"
#include "psbm/space.hpp"

namespace psbm {

/// The operator S : W -> W.
class SelfMap {
 public:
  using Rule = std::function<Point(const Point&)>;

  SelfMap(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}

  /// 0 on {0, 3}, 3 everywhere else.
  static SelfMap paper_S();
  static SelfMap identity();
  static SelfMap constant(Point value);
  /// Label i -> Label images[i].
  static SelfMap tabulated(std::vector<std::size_t> images);
  static SelfMap builtin(std::string_view name);

  Point operator()(const Point& x) const { return rule_(x); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Rule rule_;
};

/// Exponents, comparison function and map of an interpolative contraction
///   d(Sa,Sb,Sc) <= fn( d(a,b,c)^p d(a,a,Sa)^q d(b,b,Sb)^r d(c,c,Sc)^s
///                      [ (d(Sa,Sa,b) + d(Sb,Sb,c)) / 2t ]^(1-p-q-r-s) ).
/// The Boyd-Wong and Matkowski forms differ only in the class of fn.
struct InterpolativeSpec {
  double p = 0.2, q = 0.2, r = 0.2, s = 0.2;
  ComparisonFn comparison;
  SelfMap map;

  /// Throws InvalidExponents unless 0 < p,q,r,s < 1 and p+q+r+s < 1.
  void validate() const;
  double remainder() const { return 1.0 - p - q - r - s; }

  /// p=q=r=s=1/5 with paper_S and paper_tau (Boyd-Wong) or half (Matkowski).
  static InterpolativeSpec paper(ComparisonFn::Kind kind);
};

/// The bracketed product before the comparison function is applied; 0^e = 0.
double interpolative_product(const PartialSbSpace& space, const InterpolativeSpec& spec,
                             const Point& a, const Point& b, const Point& c);

/// fn(interpolative_product(...)).
double rhs_value(const PartialSbSpace& space, const InterpolativeSpec& spec, const Point& a,
                 const Point& b, const Point& c);

struct TripleSource {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  static TripleSource exhaustive() { return {}; }
  static TripleSource sampled(std::size_t count, std::uint64_t seed) {
    return {Mode::Sampled, count, seed};
  }
};

struct CertificateFailure {
  std::array<Point, 3> triple;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct CertificateReport {
  std::string inequality;  // "boyd-wong" or "matkowski"
  std::size_t triples_checked = 0;
  std::size_t triples_skipped = 0;  // triples touching Fix(S)
  std::vector<Point> excluded_fixed_points;
  std::vector<CertificateFailure> failures;  // sorted by triple
  double min_margin = 0.0;                   // smallest rhs - lhs observed
  std::optional<std::array<Point, 3>> min_margin_triple;
  bool passed = true;
};

/// Exhaustive: every triple of the FiniteList carrier. Sampled: `count`
/// triples drawn with replacement from sample_carrier's pool. Triples with a
/// coordinate in Fix(S) are skipped; fixed points are taken over the same points.
CertificateReport certify(const PartialSbSpace& space, const InterpolativeSpec& spec,
                          TripleSource source);

/// Sampled points x with S(x) = x.
std::vector<Point> fixed_points_bruteforce(const PartialSbSpace& space, const SelfMap& map,
                                           const std::vector<Point>& sample);

struct CaseRow {
  std::string label;                      // "1(i)" ... "5(iv)"
  std::string description;
  double lhs = 0.0;                       // d(Sa,Sb,Sc), constant per subcase
  bool lhs_constant = true;
  double rhs_min = 0.0;                   // minimum of rhs over the grid
  std::array<Point, 3> argmin;
  std::size_t evaluations = 0;
  std::optional<double> reference_rhs;    // reference bound for the row, if any
  bool discrepancy = false;               // |rhs_min - reference| > 1% of reference
  bool holds = true;                      // lhs <= rhs_min
};

struct CaseTable {
  std::string inequality;
  double fixed_isolated = 0.0;   // the isolated fixed point ("0")
  double moving_isolated = 0.0;  // the other isolated point ("3")
  std::size_t grid_points = 0;
  std::vector<CaseRow> rows;
  bool all_hold = true;
  std::vector<std::string> discrepancies;
};

inline constexpr double kCaseTableReferenceTolerance = 0.01;

/// Reference rhs bounds, in row order.
const std::array<double, 15>& reference_case_bounds();

/// The 15 subcases of the quintic_gap contraction over a carrier made of two isolated
/// points (one fixed by S) and one ray, minimising the rhs over `grid` points
/// of the ray (truncated at the sampling bound).
CaseTable reproduce_case_table(const PartialSbSpace& space, const InterpolativeSpec& spec,
                               std::size_t grid);

std::string render_case_table(const CaseTable& table);

}  // namespace psbm
