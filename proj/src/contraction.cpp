#include "psbm/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "psbm/axioms.hpp"
#include "psbm/errors.hpp"
#include "psbm/numeric.hpp"

namespace psbm {

// --- SelfMap ------------------------------------------------------------------

SelfMap SelfMap::paper_S() {
  return SelfMap("paper_S", [](const Point& x) {
    if (!x.is_scalar()) throw Error(ErrorCode::UnknownPoint, "paper_S acts on scalar points");
    return (x.value() == 0.0 || x.value() == 3.0) ? Point::scalar(0.0) : Point::scalar(3.0);
  });
}

SelfMap SelfMap::identity() {
  return SelfMap("identity", [](const Point& x) { return x; });
}

SelfMap SelfMap::constant(Point value) {
  return SelfMap("constant", [value](const Point&) { return value; });
}

SelfMap SelfMap::tabulated(std::vector<std::size_t> images) {
  return SelfMap("table", [images = std::move(images)](const Point& x) {
    if (!x.is_label() || x.index() >= images.size()) {
      throw Error(ErrorCode::UnknownPoint, "point outside the tabulated map");
    }
    return Point::label(images[x.index()]);
  });
}

SelfMap SelfMap::builtin(std::string_view name) {
  if (name == "paper_S") return paper_S();
  if (name == "identity") return identity();
  throw Error(ErrorCode::UnknownBuiltin, "no builtin map '" + std::string(name) + "'");
}

// --- spec -------------------------------------------------------------------

void InterpolativeSpec::validate() const {
  for (double e : {p, q, r, s}) {
    if (!(e > 0.0 && e < 1.0)) {
      throw Error(ErrorCode::InvalidExponents, "exponents must lie in (0,1), got " + format_real(e));
    }
  }
  if (!(p + q + r + s < 1.0)) {
    throw Error(ErrorCode::InvalidExponents,
                "p+q+r+s must be < 1, got " + format_real(p + q + r + s));
  }
}

InterpolativeSpec InterpolativeSpec::paper(ComparisonFn::Kind kind) {
  const auto fn = kind == ComparisonFn::Kind::BoydWong
                      ? ComparisonFn::builtin(ComparisonFn::Builtin::PaperTau, kind)
                      : ComparisonFn::builtin(ComparisonFn::Builtin::Half, kind);
  return {0.2, 0.2, 0.2, 0.2, fn, SelfMap::paper_S()};
}

namespace {

double power(double base, double exponent) {
  if (base == 0.0) return 0.0;
  return std::pow(base, exponent);
}

}  // namespace

double interpolative_product(const PartialSbSpace& space, const InterpolativeSpec& spec,
                             const Point& a, const Point& b, const Point& c) {
  const Point sa = spec.map(a), sb = spec.map(b), sc = spec.map(c);
  const double t = space.coefficient();
  const double mixed = (space.distance(sa, sa, b) + space.distance(sb, sb, c)) / (2.0 * t);
  return power(space.distance(a, b, c), spec.p) * power(space.distance(a, a, sa), spec.q) *
         power(space.distance(b, b, sb), spec.r) * power(space.distance(c, c, sc), spec.s) *
         power(mixed, spec.remainder());
}

double rhs_value(const PartialSbSpace& space, const InterpolativeSpec& spec, const Point& a,
                 const Point& b, const Point& c) {
  return spec.comparison(interpolative_product(space, spec, a, b, c));
}

std::vector<Point> fixed_points_bruteforce(const PartialSbSpace& space, const SelfMap& map,
                                           const std::vector<Point>& sample) {
  if (sample.empty()) throw Error(ErrorCode::InvalidArgument, "sample is empty");
  std::vector<Point> fixed;
  for (const auto& x : sample) {
    if (!space.contains(x)) {
      throw Error(ErrorCode::UnknownPoint, "'" + space.display(x) + "' is not in the carrier");
    }
    if (map(x) == x) fixed.push_back(x);
  }
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  return fixed;
}

// --- certification ------------------------------------------------------------

CertificateReport certify(const PartialSbSpace& space, const InterpolativeSpec& spec,
                          TripleSource source) {
  spec.validate();
  const auto points = source.mode == TripleSource::Mode::Exhaustive
                          ? space.points()
                          : sample_carrier(space, sampling_pool_size(source.count), source.seed);

  CertificateReport report;
  report.inequality = to_string(spec.comparison.kind());
  report.excluded_fixed_points = fixed_points_bruteforce(space, spec.map, points);
  report.min_margin = std::numeric_limits<double>::infinity();

  std::vector<char> is_fixed(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    is_fixed[i] = std::binary_search(report.excluded_fixed_points.begin(),
                                     report.excluded_fixed_points.end(), points[i]);
  }

  auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
    if (is_fixed[i] || is_fixed[j] || is_fixed[k]) {
      ++report.triples_skipped;
      return;
    }
    const Point &a = points[i], &b = points[j], &c = points[k];
    const double lhs = space.distance(spec.map(a), spec.map(b), spec.map(c));
    const double rhs = rhs_value(space, spec, a, b, c);
    ++report.triples_checked;
    if (rhs - lhs < report.min_margin) {
      report.min_margin = rhs - lhs;
      report.min_margin_triple = std::array<Point, 3>{a, b, c};
    }
    if (!less_or_equal(lhs, rhs)) report.failures.push_back({{a, b, c}, lhs, rhs});
  };

  const std::size_t n = points.size();
  if (source.mode == TripleSource::Mode::Exhaustive) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) check(i, j, k);
  } else {
    std::mt19937_64 rng(source.seed ^ 0x5851f42d4c957f2dULL);
    for (std::size_t t = 0; t < source.count; ++t) {
      const auto i = static_cast<std::size_t>(rng() % n);
      const auto j = static_cast<std::size_t>(rng() % n);
      const auto k = static_cast<std::size_t>(rng() % n);
      check(i, j, k);
    }
  }

  std::sort(report.failures.begin(), report.failures.end(),
            [](const CertificateFailure& x, const CertificateFailure& y) { return x.triple < y.triple; });
  report.failures.erase(std::unique(report.failures.begin(), report.failures.end(),
                                    [](const CertificateFailure& x, const CertificateFailure& y) {
                                      return x.triple == y.triple;
                                    }),
                        report.failures.end());
  if (report.triples_checked == 0) report.min_margin = 0.0;
  report.passed = report.failures.empty();
  return report;
}

// --- case table ------------------------------------------------------------

const std::array<double, 15>& reference_case_bounds() {
  static const std::array<double, 15> bounds = {0.0,     607.08, 569.773, 807.40,  1214.17,
                                                499.97,  741.19, 1294.82, 399.13,  787.84,
                                                1315.96, 872.72, 758.18,  1051.22, 1315.96};
  return bounds;
}

namespace {

// Slot of a triple: the moving isolated point or one of up to three distinct
// free ray variables x, y, z.
enum Slot { M = -1, X = 0, Y = 1, Z = 2 };

struct Subcase {
  const char* label;
  const char* description;
  std::array<int, 3> slots;
};

constexpr std::array<Subcase, 15> kSubcases = {{
    {"1(i)", "a=b=c=3", {M, M, M}},
    {"1(ii)", "a=b=c!=3", {X, X, X}},
    {"2(i)", "a=b=3, c!=3", {M, M, X}},
    {"2(ii)", "a=b!=3, c=3", {X, X, M}},
    {"2(iii)", "a=b!=3, c!=3", {X, X, Y}},
    {"3(i)", "b!=3, a=c=3", {M, X, M}},
    {"3(ii)", "b=3, a=c!=3", {X, M, X}},
    {"3(iii)", "b!=3, a=c!=3", {X, Y, X}},
    {"4(i)", "b=c=3, a!=3", {X, M, M}},
    {"4(ii)", "b=c!=3, a=3", {M, X, X}},
    {"4(iii)", "b=c!=3, a!=3", {X, Y, Y}},
    {"5(i)", "a=3", {M, X, Y}},
    {"5(ii)", "b=3", {X, M, Y}},
    {"5(iii)", "c=3", {X, Y, M}},
    {"5(iv)", "a,b,c distinct, none 3", {X, Y, Z}},
}};

}  // namespace

CaseTable reproduce_case_table(const PartialSbSpace& space, const InterpolativeSpec& spec,
                               std::size_t grid) {
  spec.validate();
  const auto* region = space.region();
  if (!region || region->isolated.size() != 2 || region->parts.size() != 1) {
    throw Error(ErrorCode::WrongSpaceShape,
                "case table needs two isolated points and a single ray");
  }
  const Point first = Point::scalar(region->isolated[0]);
  const Point second = Point::scalar(region->isolated[1]);
  const bool first_fixed = spec.map(first) == first;
  const bool second_fixed = spec.map(second) == second;
  if (first_fixed == second_fixed) {
    throw Error(ErrorCode::WrongSpaceShape, "exactly one isolated point must be fixed by the map");
  }
  const Point fixed = first_fixed ? first : second;
  const Point moving = first_fixed ? second : first;

  std::vector<Point> ray;
  for (const auto& p : grid_carrier(space, grid)) {
    if (!space.is_isolated(p)) ray.push_back(p);
  }
  for (const auto& p : ray) {
    if (spec.map(p) == p) throw Error(ErrorCode::WrongSpaceShape, "the map fixes a ray point");
  }

  CaseTable table;
  table.inequality = to_string(spec.comparison.kind());
  table.fixed_isolated = fixed.value();
  table.moving_isolated = moving.value();
  table.grid_points = ray.size();

  const auto& reference = reference_case_bounds();
  for (std::size_t row_index = 0; row_index < kSubcases.size(); ++row_index) {
    const auto& sub = kSubcases[row_index];
    int free_vars = 0;
    for (int slot : sub.slots) free_vars = std::max(free_vars, slot + 1);

    CaseRow row;
    row.label = sub.label;
    row.description = sub.description;
    row.rhs_min = std::numeric_limits<double>::infinity();
    row.reference_rhs = reference[row_index];
    bool first_eval = true;

    auto visit = [&](const std::array<Point, 3>& vars) {
      std::array<Point, 3> triple;
      for (int i = 0; i < 3; ++i) {
        triple[i] = sub.slots[i] == M ? moving : vars[sub.slots[i]];
      }
      const double lhs =
          space.distance(spec.map(triple[0]), spec.map(triple[1]), spec.map(triple[2]));
      const double rhs = rhs_value(space, spec, triple[0], triple[1], triple[2]);
      if (first_eval) {
        row.lhs = lhs;
        first_eval = false;
      } else if (!nearly_equal(lhs, row.lhs)) {
        row.lhs_constant = false;
        row.lhs = std::max(row.lhs, lhs);
      }
      if (rhs < row.rhs_min) {
        row.rhs_min = rhs;
        row.argmin = triple;
      }
      if (!less_or_equal(lhs, rhs)) row.holds = false;
      ++row.evaluations;
    };

    const std::size_t n = ray.size();
    if (free_vars == 0) {
      visit({});
    } else if (free_vars == 1) {
      for (std::size_t i = 0; i < n; ++i) visit({ray[i], Point{}, Point{}});
    } else if (free_vars == 2) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) visit({ray[i], ray[j], Point{}});
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            if (i != j && j != k && i != k) visit({ray[i], ray[j], ray[k]});
    }

    if (row.evaluations == 0) {
      throw Error(ErrorCode::InvalidArgument, "grid too small for subcase " + row.label);
    }
    row.holds = row.holds && less_or_equal(row.lhs, row.rhs_min);
    const double ref = *row.reference_rhs;
    row.discrepancy = std::abs(row.rhs_min - ref) > kCaseTableReferenceTolerance * std::abs(ref);
    if (row.discrepancy) {
      table.discrepancies.push_back("subcase " + row.label + ": computed rhs minimum " +
                                    format_real(row.rhs_min) + " vs listed bound " +
                                    format_real(ref));
    }
    table.all_hold = table.all_hold && row.holds;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string render_case_table(const CaseTable& table) {
  std::ostringstream out;
  out << "Interpolative " << table.inequality << " case table (fixed isolated point "
      << format_real(table.fixed_isolated) << ", moving isolated point "
      << format_real(table.moving_isolated) << ", " << table.grid_points << " ray grid points)\n";
  out << std::left << std::setw(8) << "subcase" << std::setw(26) << "condition" << std::right
      << std::setw(8) << "lhs" << std::setw(16) << "rhs min" << std::setw(24) << "argmin (a,b,c)"
      << std::setw(12) << "listed" << "  verdict\n";
  auto fmt = [](double x) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << x;
    return s.str();
  };
  for (const auto& row : table.rows) {
    std::string argmin = "(" + format_real(row.argmin[0].value()) + "," +
                         format_real(row.argmin[1].value()) + "," +
                         format_real(row.argmin[2].value()) + ")";
    out << std::left << std::setw(8) << row.label << std::setw(26) << row.description
        << std::right << std::setw(8) << format_real(row.lhs) << std::setw(16) << fmt(row.rhs_min)
        << std::setw(24) << argmin << std::setw(12)
        << (row.reference_rhs ? fmt(*row.reference_rhs) : std::string("-")) << "  "
        << (row.holds ? "holds" : "FAILS") << (row.discrepancy ? " (differs from listed)" : "")
        << '\n';
  }
  return out.str();
}

}  // namespace psbm
