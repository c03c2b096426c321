#include "psbm/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "psbm/errors.hpp"
#include "psbm/kernels/kernels.hpp"
#include "psbm/numeric.hpp"

namespace psbm {

std::string to_string(AxiomSet set) {
  switch (set) {
    case AxiomSet::SMetric: return "s-metric";
    case AxiomSet::PartialSMetric: return "partial-s-metric";
    case AxiomSet::SbMetric: return "sb-metric";
    case AxiomSet::PartialSb: return "partial-sb-metric";
  }
  return "?";
}

AxiomSet parse_axiom_set(std::string_view text) {
  if (text == "s" || text == "s-metric") return AxiomSet::SMetric;
  if (text == "partial-s" || text == "partial-s-metric") return AxiomSet::PartialSMetric;
  if (text == "sb" || text == "sb-metric") return AxiomSet::SbMetric;
  if (text == "partial-sb" || text == "partial-sb-metric") return AxiomSet::PartialSb;
  throw Error(ErrorCode::InvalidArgument, "unknown axiom set '" + std::string(text) + "'");
}

std::size_t sampling_pool_size(std::size_t count) {
  const auto cube_root = static_cast<std::size_t>(std::ceil(std::cbrt(static_cast<double>(count))));
  return std::max<std::size_t>(8, cube_root);
}

namespace {

/// Distances over a finite point list, indexed by position in the list.
class DenseTable {
 public:
  DenseTable(const PartialSbSpace& space, const std::vector<Point>& points)
      : n_(points.size()), values_(n_ * n_ * n_) {
    const auto& metric = space.metric();
    for (const auto& p : points) {
      if (!space.contains(p)) {
        throw Error(ErrorCode::UnknownPoint, "'" + space.display(p) + "' is not in the carrier");
      }
    }
    if (metric.is_tabulated()) {
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          for (std::size_t k = 0; k < n_; ++k)
            values_[index(i, j, k)] = metric(points[i], points[j], points[k]);
      return;
    }
    std::vector<double> p(values_.size()), q(values_.size()), r(values_.size());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) {
          const auto at = index(i, j, k);
          p[at] = points[i].value();
          q[at] = points[j].value();
          r[at] = points[k].value();
        }
    metric.evaluate_batch(p, q, r, values_);
  }

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[index(i, j, k)];
  }
  std::size_t size() const { return n_; }

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * n_ + j) * n_ + k;
  }

  std::size_t n_;
  std::vector<double> values_;
};

struct Shape {
  bool zero_identity;   // axiom 1 compares with 0 instead of self-distances
  bool self_minimum;    // "S(u,u,u) <= S(u,v,w)" present
  bool symmetry;
  bool subtract_self;   // "- S(r,r,r)" in the triangle bound
  bool scaled;          // triangle bound multiplied by t
  const char* symmetry_id;
  const char* triangle_id;
};

Shape shape_of(AxiomSet set) {
  switch (set) {
    case AxiomSet::SMetric: return {true, false, false, false, false, "", "2"};
    case AxiomSet::PartialSMetric: return {false, true, true, true, false, "3", "4"};
    case AxiomSet::SbMetric: return {true, false, true, false, true, "2", "3"};
    case AxiomSet::PartialSb: return {false, true, true, true, true, "3", "4"};
  }
  return {};
}

using Key = std::tuple<std::string, std::vector<std::size_t>>;

class Checker {
 public:
  Checker(const PartialSbSpace& space, AxiomSet set, const std::vector<Point>& points)
      : points_(points), table_(space, points), shape_(shape_of(set)),
        t_(shape_.scaled ? space.coefficient() : 1.0) {}

  void pair(std::size_t u, std::size_t v) {
    if (!shape_.symmetry) return;
    ++checked_;
    const double lhs = table_(u, u, v), rhs = table_(v, v, u);
    if (!nearly_equal(lhs, rhs)) record(shape_.symmetry_id, {u, v}, lhs, rhs);
  }

  void triple(std::size_t u, std::size_t v, std::size_t w) {
    const double value = table_(u, v, w);
    const bool same = u == v && v == w;
    ++checked_;
    if (shape_.zero_identity) {
      const bool zero = nearly_equal(value, 0.0);
      if (same && !zero) record("1-forward", {u, v, w}, value, 0.0);
      if (!same && zero) record("1-reverse", {u, v, w}, value, 0.0);
    } else {
      const double su = table_(u, u, u);
      const bool agree = nearly_equal(value, su) && nearly_equal(value, table_(v, v, v)) &&
                         nearly_equal(value, table_(w, w, w));
      if (same && !agree) record("1-forward", {u, v, w}, value, su);
      if (!same && agree) record("1-reverse", {u, v, w}, value, su);
    }
    if (shape_.self_minimum) {
      ++checked_;
      const double self = table_(u, u, u);
      if (!less_or_equal(self, value)) record("2", {u, v, w}, self, value);
    }
  }

  /// Triangle axiom for the fixed triple (u,v,w) against every s in `anchors`.
  void triangle(std::size_t u, std::size_t v, std::size_t w, std::span<const std::size_t> anchors) {
    const std::size_t m = anchors.size();
    a_.resize(m); b_.resize(m); c_.resize(m); d_.resize(m); rhs_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto s = anchors[i];
      a_[i] = table_(u, u, s);
      b_[i] = table_(v, v, s);
      c_[i] = table_(w, w, s);
      d_[i] = shape_.subtract_self ? table_(s, s, s) : 0.0;
    }
    kernels::triangle_rhs(a_, b_, c_, d_, t_, rhs_);
    const double lhs = table_(u, v, w);
    checked_ += m;
    for (std::size_t i = 0; i < m; ++i) {
      if (!less_or_equal(lhs, rhs_[i])) record(shape_.triangle_id, {u, v, w, anchors[i]}, lhs, rhs_[i]);
    }
  }

  /// Triangle axiom on arbitrary quadruples (u,v,w,s), evaluated as one batch.
  void triangles(std::span<const std::array<std::size_t, 4>> quads) {
    const std::size_t m = quads.size();
    a_.resize(m); b_.resize(m); c_.resize(m); d_.resize(m); rhs_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto [u, v, w, s] = quads[i];
      a_[i] = table_(u, u, s);
      b_[i] = table_(v, v, s);
      c_[i] = table_(w, w, s);
      d_[i] = shape_.subtract_self ? table_(s, s, s) : 0.0;
    }
    kernels::triangle_rhs(a_, b_, c_, d_, t_, rhs_);
    checked_ += m;
    for (std::size_t i = 0; i < m; ++i) {
      const auto [u, v, w, s] = quads[i];
      const double lhs = table_(u, v, w);
      if (!less_or_equal(lhs, rhs_[i])) record(shape_.triangle_id, {u, v, w, s}, lhs, rhs_[i]);
    }
  }

  AxiomReport finish(AxiomSet set) {
    AxiomReport report;
    report.axiom_set = set;
    report.checked_count = checked_;
    for (auto& [key, values] : found_) {
      AxiomViolation v;
      v.axiom = std::get<0>(key);
      for (auto idx : std::get<1>(key)) v.witness.push_back(points_[idx]);
      v.lhs = values.first;
      v.rhs = values.second;
      report.violations.push_back(std::move(v));
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const AxiomViolation& x, const AxiomViolation& y) {
                if (x.axiom != y.axiom) return x.axiom < y.axiom;
                return std::lexicographical_compare(x.witness.begin(), x.witness.end(),
                                                    y.witness.begin(), y.witness.end());
              });
    report.passed = report.violations.empty();
    return report;
  }

 private:
  void record(const char* axiom, std::vector<std::size_t> witness, double lhs, double rhs) {
    found_.emplace(Key{axiom, std::move(witness)}, std::make_pair(lhs, rhs));
  }

  const std::vector<Point>& points_;
  DenseTable table_;
  Shape shape_;
  double t_;
  std::size_t checked_ = 0;
  std::map<Key, std::pair<double, double>> found_;
  std::vector<double> a_, b_, c_, d_, rhs_;
};

}  // namespace

AxiomReport check_axioms(const PartialSbSpace& space, AxiomSet set, QuadrupleSource source) {
  if (source.mode == QuadrupleSource::Mode::Exhaustive) {
    const auto& points = space.points();  // throws InfeasibleExhaustive on regions
    Checker checker(space, set, points);
    const std::size_t n = points.size();
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) checker.pair(u, v);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w) {
          checker.triple(u, v, w);
          checker.triangle(u, v, w, all);
        }
    return checker.finish(set);
  }

  const auto pool = sample_carrier(space, sampling_pool_size(source.count), source.seed);
  Checker checker(space, set, pool);
  std::mt19937_64 rng(source.seed ^ 0x9e3779b97f4a7c15ULL);
  const auto n = static_cast<std::uint64_t>(pool.size());
  std::vector<std::array<std::size_t, 4>> quads(source.count);
  for (auto& quad : quads) {
    for (auto& x : quad) x = static_cast<std::size_t>(rng() % n);
    checker.pair(quad[0], quad[1]);
    checker.triple(quad[0], quad[1], quad[2]);
  }
  checker.triangles(quads);
  return checker.finish(set);
}

}  // namespace psbm
