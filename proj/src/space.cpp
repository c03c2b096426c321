#include "psbm/space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "psbm/errors.hpp"
#include "psbm/kernels/kernels.hpp"
#include "psbm/numeric.hpp"

namespace psbm {

// --- TripleMetric -----------------------------------------------------------

TripleMetric TripleMetric::tabulated(std::size_t n, std::vector<double> values) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "tabulated metric needs at least one point");
  if (values.size() != n * n * n) {
    throw Error(ErrorCode::IncompleteTable, "expected " + std::to_string(n * n * n) +
                                                " values, got " + std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite table value");
  }
  TripleMetric m;
  m.kind_ = Kind::Tabulated;
  m.name_ = "table";
  m.n_ = n;
  m.values_ = std::move(values);
  return m;
}

TripleMetric TripleMetric::quintic() {
  TripleMetric m;
  m.kind_ = Kind::Quintic;
  m.name_ = "quintic";
  return m;
}

TripleMetric TripleMetric::analytic(std::string name, Rule rule) {
  TripleMetric m;
  m.kind_ = Kind::Analytic;
  m.name_ = std::move(name);
  m.rule_ = std::move(rule);
  return m;
}

double TripleMetric::operator()(const Point& p, const Point& q, const Point& r) const {
  switch (kind_) {
    case Kind::Tabulated:
      if (!p.is_label() || !q.is_label() || !r.is_label() || p.index() >= n_ || q.index() >= n_ ||
          r.index() >= n_) {
        throw Error(ErrorCode::UnknownPoint, "point outside the tabulated carrier");
      }
      return values_[(p.index() * n_ + q.index()) * n_ + r.index()];
    case Kind::Quintic: {
      if (!p.is_scalar() || !q.is_scalar() || !r.is_scalar()) {
        throw Error(ErrorCode::UnknownPoint, "quintic rule needs scalar points");
      }
      const double a[1] = {p.value()}, b[1] = {q.value()}, c[1] = {r.value()};
      double out[1];
      kernels::scalar::quintic_triple(a, b, c, out, 1);
      return out[0];
    }
    case Kind::Analytic:
      if (!p.is_scalar() || !q.is_scalar() || !r.is_scalar()) {
        throw Error(ErrorCode::UnknownPoint, "analytic rule needs scalar points");
      }
      return rule_(p.value(), q.value(), r.value());
  }
  return 0.0;
}

void TripleMetric::evaluate_batch(std::span<const double> p, std::span<const double> q,
                                  std::span<const double> r, std::span<double> out) const {
  switch (kind_) {
    case Kind::Quintic:
      kernels::quintic_triple(p, q, r, out);
      return;
    case Kind::Analytic:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = rule_(p[i], q[i], r[i]);
      return;
    case Kind::Tabulated:
      throw Error(ErrorCode::InvalidArgument, "batched evaluation needs an analytic metric");
  }
}

TripleMetric TripleMetric::with_entry(std::size_t i, std::size_t j, std::size_t k,
                                      double value) const {
  if (kind_ != Kind::Tabulated) throw Error(ErrorCode::InvalidArgument, "not a table");
  if (i >= n_ || j >= n_ || k >= n_) throw Error(ErrorCode::UnknownPoint, "entry out of range");
  TripleMetric copy = *this;
  copy.values_[(i * n_ + j) * n_ + k] = value;
  return copy;
}

// --- PartialSbSpace ---------------------------------------------------------

PartialSbSpace::PartialSbSpace(std::string name, Carrier carrier, TripleMetric metric,
                               double coefficient)
    : name_(std::move(name)),
      carrier_(std::move(carrier)),
      metric_(std::move(metric)),
      coefficient_(coefficient) {
  if (!(coefficient_ >= 1.0) || !std::isfinite(coefficient_)) {
    throw Error(ErrorCode::InvalidArgument, "coefficient must satisfy t >= 1");
  }
  if (auto* list = std::get_if<FiniteList>(&carrier_)) {
    if (list->points.empty()) throw Error(ErrorCode::InvalidArgument, "empty carrier");
    auto sorted = list->points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::InvalidArgument, "duplicate carrier point");
    }
  }
}

const std::vector<Point>& PartialSbSpace::points() const {
  if (auto* list = std::get_if<FiniteList>(&carrier_)) return list->points;
  throw Error(ErrorCode::InfeasibleExhaustive, "carrier of '" + name_ + "' is not a finite list");
}

bool PartialSbSpace::contains(const Point& p) const {
  if (auto* list = std::get_if<FiniteList>(&carrier_)) {
    return std::find(list->points.begin(), list->points.end(), p) != list->points.end();
  }
  const auto& region = std::get<SampledRegion>(carrier_);
  if (!p.is_scalar()) return false;
  const double x = p.value();
  if (std::find(region.isolated.begin(), region.isolated.end(), x) != region.isolated.end()) {
    return true;
  }
  return std::any_of(region.parts.begin(), region.parts.end(),
                     [x](const Interval& iv) { return iv.lo <= x && x <= iv.hi; });
}

bool PartialSbSpace::is_isolated(const Point& p) const {
  if (p.is_label() || is_finite()) return true;
  const auto& iso = std::get<SampledRegion>(carrier_).isolated;
  return std::find(iso.begin(), iso.end(), p.value()) != iso.end();
}

double PartialSbSpace::distance(const Point& p, const Point& q, const Point& r) const {
  for (const Point* x : {&p, &q, &r}) {
    if (!contains(*x)) {
      throw Error(ErrorCode::UnknownPoint, "'" + display(*x) + "' is not in the carrier of '" +
                                               name_ + "'");
    }
  }
  return metric_(p, q, r);
}

bool PartialSbSpace::same_point(const Point& a, const Point& b, double tol) const {
  if (a == b) return true;
  if (a.kind() != b.kind() || a.is_label()) return false;
  if (is_isolated(a) && is_isolated(b)) return false;
  return std::abs(a.value() - b.value()) <= tol;
}

std::string PartialSbSpace::display(const Point& p) const {
  if (p.is_label()) {
    if (auto* list = std::get_if<FiniteList>(&carrier_); list && p.index() < list->labels.size()) {
      return list->labels[p.index()];
    }
    return "#" + std::to_string(p.index());
  }
  return format_real(p.value());
}

Point PartialSbSpace::parse_point(std::string_view text) const {
  if (auto* list = std::get_if<FiniteList>(&carrier_); list && !list->labels.empty()) {
    for (std::size_t i = 0; i < list->labels.size(); ++i) {
      if (list->labels[i] == text) return Point::label(i);
    }
    throw Error(ErrorCode::UnknownPoint, "no label '" + std::string(text) + "'");
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
  }
  return Point::scalar(value);
}

PartialSbSpace PartialSbSpace::with_coefficient(double t) const {
  return PartialSbSpace(name_, carrier_, metric_, t);
}

PartialSbSpace PartialSbSpace::with_bound(double bound) const {
  Carrier carrier = carrier_;
  if (auto* region = std::get_if<SampledRegion>(&carrier)) region->bound = bound;
  return PartialSbSpace(name_, std::move(carrier), metric_, coefficient_);
}

PartialSbSpace PartialSbSpace::with_metric(TripleMetric metric) const {
  return PartialSbSpace(name_, carrier_, std::move(metric), coefficient_);
}

double evaluate_metric(const PartialSbSpace& space, const Point& p, const Point& q,
                       const Point& r) {
  return space.distance(p, q, r);
}

// --- builtins ---------------------------------------------------------------

namespace {

PartialSbSpace two_point(std::string name, const std::map<std::string, double>& entries) {
  std::vector<double> values(8, 0.0);
  for (const auto& [key, value] : entries) {
    const auto i = static_cast<std::size_t>(key[0] - '1');
    const auto j = static_cast<std::size_t>(key[1] - '1');
    const auto k = static_cast<std::size_t>(key[2] - '1');
    values[(i * 2 + j) * 2 + k] = value;
  }
  FiniteList list{{Point::label(0), Point::label(1)}, {"1", "2"}};
  return PartialSbSpace(std::move(name), std::move(list), TripleMetric::tabulated(2, values), 1.0);
}

}  // namespace

std::vector<std::string> builtin_space_names() {
  return {"quintic_ray", "two_point_a", "two_point_b", "quintic_gap"};
}

PartialSbSpace builtin_space(std::string_view name) {
  if (name == "quintic_ray") {
    return PartialSbSpace("quintic_ray", SampledRegion{{}, {Interval{1.0}}, 64.0},
                          TripleMetric::quintic(), 1.0);
  }
  if (name == "quintic_gap") {
    return PartialSbSpace("quintic_gap", SampledRegion{{0.0, 3.0}, {Interval{4.0}}, 64.0},
                          TripleMetric::quintic(), 1.0);
  }
  if (name == "two_point_a") {
    return two_point("two_point_a", {{"111", 8}, {"112", 8}, {"221", 8}, {"121", 8},
                                     {"211", 8}, {"122", 8}, {"222", 4}, {"212", 4}});
  }
  if (name == "two_point_b") {
    return two_point("two_point_b", {{"111", 4}, {"222", 4}, {"112", 8}, {"221", 8},
                                     {"121", 8}, {"211", 8}, {"122", 8}, {"212", 8}});
  }
  throw Error(ErrorCode::UnknownBuiltin, "no builtin space '" + std::string(name) + "'");
}

// --- space files ------------------------------------------------------------

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double parse_real(const std::string& tok, std::size_t line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  }
  return v;
}

}  // namespace

PartialSbSpace load_tabulated_space(std::string_view text, std::string name) {
  std::vector<std::string> labels;
  std::optional<double> coefficient;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> entries;
  bool have_points = false;

  auto index_of = [&](const std::string& label, std::size_t line_no) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": unknown label '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels.begin());
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (!have_points) {
      if (tokens[0] != "points:") {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                               ": expected 'points:' header");
      }
      labels.assign(tokens.begin() + 1, tokens.end());
      if (labels.empty()) throw Error(ErrorCode::ParseError, "empty point list");
      auto sorted = labels;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::ParseError, "duplicate label in point list");
      }
      have_points = true;
      continue;
    }
    if (!coefficient) {
      if (tokens[0] != "coefficient:" || tokens.size() != 2) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                               ": expected 'coefficient: <real>'");
      }
      coefficient = parse_real(tokens[1], line_no);
      continue;
    }
    if (tokens.size() != 4) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected '<i> <j> <k> <value>'");
    }
    const auto key = std::make_tuple(index_of(tokens[0], line_no), index_of(tokens[1], line_no),
                                     index_of(tokens[2], line_no));
    const double value = parse_real(tokens[3], line_no);
    if (value < 0.0) {
      throw Error(ErrorCode::NegativeValue, "line " + std::to_string(line_no) + ": value " +
                                                tokens[3] + " is negative");
    }
    if (!entries.emplace(key, value).second) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": triple listed twice");
    }
  }
  if (!have_points) throw Error(ErrorCode::ParseError, "missing 'points:' header");
  if (!coefficient) throw Error(ErrorCode::ParseError, "missing 'coefficient:' line");

  const std::size_t n = labels.size();
  std::vector<double> values(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        auto it = entries.find({i, j, k});
        if (it == entries.end()) {
          throw Error(ErrorCode::IncompleteTable, "triple (" + labels[i] + "," + labels[j] + "," +
                                                      labels[k] + ") is undefined");
        }
        values[(i * n + j) * n + k] = it->second;
      }
    }
  }
  FiniteList list;
  for (std::size_t i = 0; i < n; ++i) list.points.push_back(Point::label(i));
  list.labels = std::move(labels);
  return PartialSbSpace(std::move(name), std::move(list), TripleMetric::tabulated(n, values),
                        *coefficient);
}

std::string write_tabulated_space(const PartialSbSpace& space) {
  const auto* list = std::get_if<FiniteList>(&space.carrier());
  if (!list || !space.metric().is_tabulated() || list->labels.empty()) {
    throw Error(ErrorCode::InvalidArgument, "only tabulated label spaces can be written");
  }
  std::ostringstream out;
  out << "points:";
  for (const auto& label : list->labels) out << ' ' << label;
  out << "\ncoefficient: " << format_real(space.coefficient()) << '\n';
  const std::size_t n = space.metric().table_size();
  const auto table = space.metric().table();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        out << list->labels[i] << ' ' << list->labels[j] << ' ' << list->labels[k] << ' '
            << format_real(table[(i * n + j) * n + k]) << '\n';
      }
    }
  }
  return out.str();
}

// --- sampling ---------------------------------------------------------------

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Point> region_points(const SampledRegion& region, std::size_t count,
                                 std::mt19937_64* rng) {
  std::vector<double> values = region.isolated;

  struct Span {
    double lo, hi;
  };
  std::vector<Span> spans;
  double total = 0.0;
  for (const auto& part : region.parts) {
    const double hi = std::min(part.hi, region.bound);
    if (hi < part.lo) continue;
    spans.push_back({part.lo, hi});
    total += hi - part.lo;
  }

  // Share the samples across parts in proportion to their truncated length;
  // every part gets at least one point.
  std::size_t assigned = 0;
  for (std::size_t s = 0; s < spans.size(); ++s) {
    const double length = spans[s].hi - spans[s].lo;
    std::size_t m = 0;
    if (s + 1 == spans.size()) {
      m = count > assigned ? count - assigned : 1;
    } else {
      const double share = total > 0.0 ? length / total : 1.0 / static_cast<double>(spans.size());
      m = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(share * count)));
    }
    assigned += m;
    const double lo = spans[s].lo;
    if (m == 1 || length == 0.0) {
      values.push_back(lo);
      continue;
    }
    const double step = length / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      double x = (i + 1 == m) ? spans[s].hi : lo + step * static_cast<double>(i);
      if (rng && i > 0 && i + 1 < m) x += (unit_uniform(*rng) - 0.5) * 0.5 * step;
      values.push_back(x);
    }
  }

  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Point> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(Point::scalar(v));
  return out;
}

}  // namespace

std::vector<Point> sample_carrier(const PartialSbSpace& space, std::size_t count,
                                  std::uint64_t seed) {
  if (space.is_finite()) return space.points();
  std::mt19937_64 rng(seed);
  return region_points(*space.region(), std::max<std::size_t>(count, 1), &rng);
}

std::vector<Point> grid_carrier(const PartialSbSpace& space, std::size_t count) {
  if (space.is_finite()) return space.points();
  return region_points(*space.region(), std::max<std::size_t>(count, 1), nullptr);
}

PartialSbSpace restrict_to(const PartialSbSpace& space, std::vector<Point> points) {
  for (const auto& p : points) {
    if (!space.contains(p)) {
      throw Error(ErrorCode::UnknownPoint, "'" + space.display(p) + "' is not in the carrier");
    }
  }
  FiniteList list;
  if (const auto* original = std::get_if<FiniteList>(&space.carrier())) list.labels = original->labels;
  list.points = std::move(points);
  return PartialSbSpace(space.name(), std::move(list), space.metric(), space.coefficient());
}

}  // namespace psbm
