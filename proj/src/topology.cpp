#include "psbm/topology.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "psbm/errors.hpp"
#include "psbm/kernels/kernels.hpp"
#include "psbm/numeric.hpp"

namespace psbm {

namespace {

constexpr std::size_t kMaxTopologyPoints = 20;

// d(center, center, z) for every candidate z.
std::vector<double> center_distances(const PartialSbSpace& space, const Point& center,
                                     const std::vector<Point>& candidates) {
  for (const auto& z : candidates) {
    if (!space.contains(z)) {
      throw Error(ErrorCode::UnknownPoint, "'" + space.display(z) + "' is not in the carrier");
    }
  }
  std::vector<double> out(candidates.size());
  if (space.metric().is_tabulated()) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      out[i] = space.metric()(center, center, candidates[i]);
    }
    return out;
  }
  std::vector<double> c(candidates.size(), center.value()), z(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) z[i] = candidates[i].value();
  space.metric().evaluate_batch(c, c, z, out);
  return out;
}

std::vector<std::uint8_t> ball_mask(const PartialSbSpace& space, const Point& center,
                                    double radius, const std::vector<Point>& candidates) {
  const double self = space.distance(center, center, center);
  const auto dist = center_distances(space, center, candidates);
  std::vector<std::uint8_t> mask(candidates.size());
  kernels::strict_below(dist, radius + self, mask);
  return mask;
}

PointSet to_set(const std::vector<std::uint8_t>& mask) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) bits |= std::uint64_t{1} << i;
  }
  return PointSet(bits);
}

const std::vector<Point>& topology_carrier(const PartialSbSpace& space) {
  const auto& points = space.points();
  if (points.size() > kMaxTopologyPoints) {
    throw Error(ErrorCode::InfeasibleExhaustive,
                "topology generation is limited to " + std::to_string(kMaxTopologyPoints) +
                    " points");
  }
  return points;
}

}  // namespace

std::vector<std::size_t> PointSet::indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t bits = bits_; bits != 0; bits &= bits - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(bits)));
  }
  return out;
}

OpenBall open_ball(const PartialSbSpace& space, const Point& center, double radius,
                   const std::vector<Point>& candidates) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  if (!space.contains(center)) {
    throw Error(ErrorCode::UnknownPoint, "centre '" + space.display(center) + "' is not in the carrier");
  }
  std::vector<Point> pool = candidates;
  if (std::find(pool.begin(), pool.end(), center) == pool.end()) pool.insert(pool.begin(), center);

  const auto mask = ball_mask(space, center, radius, pool);
  OpenBall ball{center, radius, {}};
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (mask[i]) ball.members.push_back(pool[i]);
  }
  return ball;
}

InnerBall inner_ball_radius(const PartialSbSpace& space, const Point& x, double s,
                            const Point& v, const std::vector<Point>& candidates) {
  InnerBall result;
  result.outer = open_ball(space, x, s, candidates);
  const auto& outer = result.outer.members;
  if (std::find(outer.begin(), outer.end(), v) == outer.end()) {
    throw Error(ErrorCode::NotInBall, "'" + space.display(v) + "' is not in D(" +
                                          space.display(x) + ";" + format_real(s) + ")");
  }
  result.radius = (v == x) ? s : s / (4.0 * space.coefficient());
  result.inner = open_ball(space, v, result.radius, candidates);
  result.contained = std::all_of(result.inner.members.begin(), result.inner.members.end(),
                                 [&](const Point& z) {
                                   return std::find(outer.begin(), outer.end(), z) != outer.end();
                                 });
  return result;
}

std::vector<double> canonical_radii(const PartialSbSpace& space, const Point& center,
                                    const std::vector<Point>& candidates) {
  if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "no candidates");
  const double self = space.distance(center, center, center);
  const auto dist = center_distances(space, center, candidates);

  std::vector<double> thresholds{0.0};
  for (double d : dist) {
    const double gap = d - self;
    if (gap > 0.0) thresholds.push_back(gap);
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end(),
                               [](double a, double b) { return nearly_equal(a, b); }),
                   thresholds.end());

  std::vector<double> radii;
  for (std::size_t i = 0; i + 1 < thresholds.size(); ++i) {
    radii.push_back(0.5 * (thresholds[i] + thresholds[i + 1]));
  }
  radii.push_back(thresholds.back() + 1.0);
  return radii;
}

std::vector<PointSet> basis_balls(const PartialSbSpace& space) {
  const auto& carrier = topology_carrier(space);
  std::set<PointSet> balls;
  for (const auto& center : carrier) {
    for (double r : canonical_radii(space, center, carrier)) {
      balls.insert(to_set(ball_mask(space, center, r, carrier)));
    }
  }
  return {balls.begin(), balls.end()};
}

bool FiniteTopology::is_open(PointSet set) const {
  return std::binary_search(opens.begin(), opens.end(), set);
}

std::vector<Point> FiniteTopology::members(PointSet set) const {
  std::vector<Point> out;
  for (auto i : set.indices()) out.push_back(carrier[i]);
  return out;
}

FiniteTopology generate_topology(const PartialSbSpace& space) {
  FiniteTopology topology;
  topology.carrier = topology_carrier(space);
  for (const auto& p : topology.carrier) topology.labels.push_back(space.display(p));

  const auto balls = basis_balls(space);
  auto union_closure = [](const std::vector<PointSet>& generators) {
    std::set<PointSet> opens{PointSet{}};
    for (PointSet g : generators) {
      std::vector<PointSet> added;
      for (PointSet open : opens) added.push_back(open | g);
      opens.insert(added.begin(), added.end());
    }
    return opens;
  };

  // Finite intersections of balls; a basis needs none beyond the balls' unions.
  std::set<PointSet> meets(balls.begin(), balls.end());
  meets.insert(topology.full());
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<PointSet> current(meets.begin(), meets.end());
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        grew |= meets.insert(current[i] & current[j]).second;
      }
    }
  }

  const auto from_balls = union_closure(balls);
  const auto opens = union_closure({meets.begin(), meets.end()});
  topology.balls_form_basis = from_balls.size() == opens.size();
  topology.opens.assign(opens.begin(), opens.end());
  return topology;
}

bool verify_topology_axioms(const FiniteTopology& topology) {
  if (topology.carrier.size() > PointSet::kMaxPoints) return false;
  std::vector<PointSet> opens = topology.opens;
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  const PointSet full = topology.full();
  auto present = [&](PointSet s) { return std::binary_search(opens.begin(), opens.end(), s); };

  if (!present(PointSet{}) || !present(full)) return false;
  for (PointSet s : opens) {
    if (!s.subset_of(full)) return false;
  }
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!present(opens[i] | opens[j]) || !present(opens[i] & opens[j])) return false;
    }
  }
  return true;
}

namespace {

// Open set containing `in` but not `out`, if any.
std::optional<PointSet> separating_open(const FiniteTopology& t, std::size_t in, std::size_t out) {
  for (PointSet s : t.opens) {
    if (s.contains(in) && !s.contains(out)) return s;
  }
  return std::nullopt;
}

bool disjoint_neighbourhoods(const FiniteTopology& t, std::size_t a, std::size_t b) {
  for (PointSet u : t.opens) {
    if (!u.contains(a) || u.contains(b)) continue;
    for (PointSet v : t.opens) {
      if (v.contains(b) && (u & v).empty()) return true;
    }
  }
  return false;
}

}  // namespace

SeparationReport separation_report(const FiniteTopology& topology) {
  SeparationReport report;
  const auto n = topology.carrier.size();
  const auto& pts = topology.carrier;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool i_not_j = separating_open(topology, i, j).has_value();
      const bool j_not_i = separating_open(topology, j, i).has_value();
      if (!i_not_j && !j_not_i) {
        report.t0 = false;
        report.witnesses.push_back({"T0", pts[i], pts[j], "every open set contains both or neither"});
      }
      if (!i_not_j || !j_not_i) {
        report.t1 = false;
        const auto [a, b] = i_not_j ? std::pair{j, i} : std::pair{i, j};
        report.witnesses.push_back(
            {"T1", pts[a], pts[b], "every open set containing the first point contains the second"});
      }
      if (!disjoint_neighbourhoods(topology, i, j)) {
        report.t2 = false;
        report.witnesses.push_back({"T2", pts[i], pts[j], "no pair of disjoint open neighbourhoods"});
      }
    }
  }
  return report;
}

bool is_T0(const FiniteTopology& topology) {
  const auto n = topology.carrier.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!separating_open(topology, i, j) && !separating_open(topology, j, i)) return false;
  return true;
}

bool is_T1(const FiniteTopology& topology) {
  const auto n = topology.carrier.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !separating_open(topology, i, j)) return false;
  return true;
}

bool is_T2(const FiniteTopology& topology) {
  const auto n = topology.carrier.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!disjoint_neighbourhoods(topology, i, j)) return false;
  return true;
}

ConnectednessResult is_connected(const FiniteTopology& topology) {
  const PointSet full = topology.full();
  for (PointSet s : topology.opens) {
    if (s.empty() || s == full) continue;
    const PointSet complement(full.bits() & ~s.bits());
    if (topology.is_open(complement)) return {false, std::pair{s, complement}};
  }
  return {true, std::nullopt};
}

bool is_compact(const FiniteTopology&) { return true; }

std::string CoverFamily::radius_expression() const {
  std::string expr = scale == 1.0 ? "n" : format_real(scale) + "*n";
  if (offset != 0.0) expr += (offset > 0 ? "+" : "") + format_real(offset);
  return expr;
}

std::vector<Point> witness_candidates(const PartialSbSpace& space, double search_bound) {
  if (space.is_finite()) return space.points();
  const auto& region = *space.region();
  std::vector<double> values;
  for (double x : region.isolated) {
    if (x <= search_bound) values.push_back(x);
  }
  for (const auto& part : region.parts) {
    const double hi = std::min(part.hi, search_bound);
    for (double x = std::ceil(part.lo); x <= hi; x += 1.0) values.push_back(x);
    if (part.lo <= search_bound && search_bound <= part.hi) values.push_back(search_bound);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Point> out;
  for (double v : values) out.push_back(Point::scalar(v));
  return out;
}

std::optional<Point> uncovered_witness(const PartialSbSpace& space, const CoverFamily& family,
                                       const std::vector<long>& subfamily, double search_bound) {
  if (subfamily.empty()) throw Error(ErrorCode::EmptySubfamily, "subfamily is empty");
  for (long n : subfamily) {
    if (std::find(family.indices.begin(), family.indices.end(), n) == family.indices.end()) {
      throw Error(ErrorCode::InvalidArgument, "index " + std::to_string(n) + " is not in the family");
    }
  }
  const auto candidates = witness_candidates(space, search_bound);
  std::vector<std::uint8_t> covered(candidates.size(), 0);
  for (long n : subfamily) {
    const auto mask = ball_mask(space, family.center, family.radius(n), candidates);
    for (std::size_t i = 0; i < mask.size(); ++i) covered[i] |= mask[i];
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!covered[i]) return candidates[i];
  }
  return std::nullopt;
}

}  // namespace psbm
