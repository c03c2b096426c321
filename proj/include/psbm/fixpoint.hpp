#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "psbm/comparison.hpp"
#include "psbm/contraction.hpp"
#include "psbm/point.hpp"
#include "psbm/space.hpp"

namespace psbm {

inline constexpr double kDefaultIterationTol = 1e-9;
inline constexpr std::size_t kDefaultMaxIter = 1000;
inline constexpr std::size_t kDefaultCauchyTail = 8;

/// Picard orbit a_0, a_1 = S(a_0), ... with its gap sequence d(a_k,a_k,a_{k+1}).
struct IterationTrace {
  std::vector<Point> orbit;
  std::vector<double> gaps;            // size orbit.size() - 1
  std::vector<double> self_distances;  // d(a_k,a_k,a_k), size orbit.size()
  bool converged = false;
  std::optional<Point> limit;
  std::optional<double> limit_gap;

  std::size_t steps() const { return orbit.empty() ? 0 : orbit.size() - 1; }
};

/// Iterates until a_{k+1} = a_k (exactly on isolated points, within `tol` on
/// continuous ones) or `max_iter` steps. Non-convergence is reported, not thrown.
IterationTrace picard_iterate(const PartialSbSpace& space, const SelfMap& map, const Point& a0,
                              double tol = kDefaultIterationTol,
                              std::size_t max_iter = kDefaultMaxIter);

struct FixedPointCheck {
  bool is_fixed = false;
  bool self_distance_zero = false;
  double self_distance = 0.0;
};

FixedPointCheck verify_fixed_point(const PartialSbSpace& space, const SelfMap& map,
                                   const Point& a, double tol = kDefaultIterationTol);

struct ConvergenceReport {
  bool gap_monotone_nonincreasing = true;
  std::optional<std::size_t> first_increase;  // k with gaps[k+1] > gaps[k]
  double gap_limit = 0.0;                     // last gap of the trace
  std::size_t cauchy_pairs_checked = 0;
  double max_pair_deviation = 0.0;
  std::optional<double> self_distance_at_limit;
};

/// Pairwise d(a_k,a_k,a_l) over the last `tail` orbit points. For converged
/// traces the deviation is measured against d(limit,limit,limit); otherwise it
/// is the spread of the pair values.
ConvergenceReport cauchy_diagnostic(const PartialSbSpace& space, const IterationTrace& trace,
                                    std::size_t tail = kDefaultCauchyTail);

struct EnvelopeCheck {
  bool holds = true;
  std::optional<std::size_t> first_violation;
};

/// gaps[k] <= fn^k(gaps[0]) for every k.
EnvelopeCheck matkowski_envelope_check(const IterationTrace& trace, const ComparisonFn& fn);

struct UniquenessCheck {
  bool unique = true;
  std::optional<Point> counterexample;
};

UniquenessCheck uniqueness_check(const PartialSbSpace& space, const SelfMap& map,
                                 const std::vector<Point>& sample, const Point& claimed);

}  // namespace psbm
