#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "psbm/point.hpp"
#include "psbm/space.hpp"

namespace psbm {

/// Which family of axioms to check. Each variant lists exactly the axioms of
/// its definition:
///   SMetric        1: S(u,v,w)=0 iff u=v=w      2: S(u,v,w) <= S(u,u,p)+S(v,v,p)+S(w,w,p)
///   PartialSMetric 1: u=v=w iff all four values agree   2: S(u,u,u) <= S(u,v,w)
///                  3: S(u,u,v) = S(v,v,u)       4: S(u,v,w) <= sum of S(x,x,r) - S(r,r,r)
///   SbMetric       1: u=v=w iff S(u,v,w)=0      2: symmetry   3: S(u,v,w) <= t * sum
///   PartialSb      as PartialSMetric with the sum in 4 scaled by t.
enum class AxiomSet { SMetric, PartialSMetric, SbMetric, PartialSb };

std::string to_string(AxiomSet set);
AxiomSet parse_axiom_set(std::string_view text);

/// Where the point tuples come from.
struct QuadrupleSource {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Exhaustive;
  std::size_t count = 0;    // sampled: number of quadruples drawn
  std::uint64_t seed = 0;

  static QuadrupleSource exhaustive() { return {}; }
  static QuadrupleSource sampled(std::size_t count, std::uint64_t seed) {
    return {Mode::Sampled, count, seed};
  }
};

struct AxiomViolation {
  std::string axiom;          // e.g. "2", "1-reverse"
  std::vector<Point> witness;
  double lhs = 0.0;
  double rhs = 0.0;

  friend bool operator==(const AxiomViolation&, const AxiomViolation&) = default;
};

struct AxiomReport {
  AxiomSet axiom_set = AxiomSet::PartialSb;
  std::size_t checked_count = 0;
  std::vector<AxiomViolation> violations;  // sorted by (axiom, witness)
  bool passed = true;
};

/// Checks every axiom of `set` on every generated tuple. Exhaustive mode
/// enumerates all pairs/triples/quadruples of a FiniteList carrier; sampled
/// mode draws `count` quadruples with replacement from a point pool
/// (sample_carrier) and checks each axiom on the tuple prefixes it needs.
AxiomReport check_axioms(const PartialSbSpace& space, AxiomSet set, QuadrupleSource source);

/// Size of the point pool used for `count` sampled quadruples: enough points
/// that coincident coordinates (p=q etc.) still occur frequently.
std::size_t sampling_pool_size(std::size_t count);

}  // namespace psbm
