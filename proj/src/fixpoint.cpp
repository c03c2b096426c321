#include "psbm/fixpoint.hpp"

#include <algorithm>
#include <cmath>

#include "psbm/errors.hpp"
#include "psbm/numeric.hpp"

namespace psbm {

IterationTrace picard_iterate(const PartialSbSpace& space, const SelfMap& map, const Point& a0,
                              double tol, std::size_t max_iter) {
  if (max_iter == 0) throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1");
  if (!space.contains(a0)) {
    throw Error(ErrorCode::UnknownPoint, "'" + space.display(a0) + "' is not in the carrier");
  }
  IterationTrace trace;
  trace.orbit.push_back(a0);
  trace.self_distances.push_back(space.distance(a0, a0, a0));

  for (std::size_t k = 0; k < max_iter; ++k) {
    const Point current = trace.orbit.back();
    const Point next = map(current);
    trace.gaps.push_back(space.distance(current, current, next));
    trace.orbit.push_back(next);
    trace.self_distances.push_back(space.distance(next, next, next));
    if (space.same_point(next, current, tol)) {
      trace.converged = true;
      trace.limit = next;
      trace.limit_gap = trace.gaps.back();
      break;
    }
  }
  return trace;
}

FixedPointCheck verify_fixed_point(const PartialSbSpace& space, const SelfMap& map,
                                   const Point& a, double tol) {
  FixedPointCheck check;
  check.is_fixed = map(a) == a;
  check.self_distance = space.distance(a, a, a);
  check.self_distance_zero = check.self_distance <= tol;
  return check;
}

ConvergenceReport cauchy_diagnostic(const PartialSbSpace& space, const IterationTrace& trace,
                                    std::size_t tail) {
  if (tail == 0 || trace.orbit.size() < tail + 2) {
    throw Error(ErrorCode::TraceTooShort, "trace has " + std::to_string(trace.orbit.size()) +
                                              " points, need tail + 2 = " +
                                              std::to_string(tail + 2));
  }
  ConvergenceReport report;
  for (std::size_t k = 0; k + 1 < trace.gaps.size(); ++k) {
    if (!less_or_equal(trace.gaps[k + 1], trace.gaps[k])) {
      report.gap_monotone_nonincreasing = false;
      report.first_increase = k;
      break;
    }
  }
  report.gap_limit = trace.gaps.empty() ? 0.0 : trace.gaps.back();

  const std::size_t begin = trace.orbit.size() - tail;
  std::vector<double> values;
  for (std::size_t k = begin; k < trace.orbit.size(); ++k) {
    for (std::size_t l = begin; l < trace.orbit.size(); ++l) {
      values.push_back(space.distance(trace.orbit[k], trace.orbit[k], trace.orbit[l]));
    }
  }
  report.cauchy_pairs_checked = values.size();

  if (trace.converged && trace.limit) {
    const double at_limit = space.distance(*trace.limit, *trace.limit, *trace.limit);
    report.self_distance_at_limit = at_limit;
    for (double v : values) report.max_pair_deviation = std::max(report.max_pair_deviation, std::abs(v - at_limit));
  } else {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    report.max_pair_deviation = *hi - *lo;
  }
  return report;
}

EnvelopeCheck matkowski_envelope_check(const IterationTrace& trace, const ComparisonFn& fn) {
  if (fn.kind() != ComparisonFn::Kind::Matkowski) {
    throw Error(ErrorCode::KindMismatch, "the envelope check needs a Matkowski function");
  }
  EnvelopeCheck check;
  if (trace.gaps.empty()) return check;
  double envelope = trace.gaps.front();
  for (std::size_t k = 1; k < trace.gaps.size(); ++k) {
    envelope = fn(envelope);
    if (!less_or_equal(trace.gaps[k], envelope)) {
      check.holds = false;
      check.first_violation = k;
      break;
    }
  }
  return check;
}

UniquenessCheck uniqueness_check(const PartialSbSpace& space, const SelfMap& map,
                                 const std::vector<Point>& sample, const Point& claimed) {
  if (!verify_fixed_point(space, map, claimed).is_fixed) {
    throw Error(ErrorCode::NotAFixedPoint, "'" + space.display(claimed) + "' is not fixed by " + map.name());
  }
  for (const auto& x : fixed_points_bruteforce(space, map, sample)) {
    if (!(x == claimed)) return {false, x};
  }
  return {true, std::nullopt};
}

}  // namespace psbm
