#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psbm/point.hpp"
#include "psbm/space.hpp"

namespace psbm {

/// Subset of a finite carrier, bit i standing for carrier point i.
class PointSet {
 public:
  static constexpr std::size_t kMaxPoints = 64;

  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint64_t bits) : bits_(bits) {}
  static constexpr PointSet full(std::size_t n) {
    return PointSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr PointSet single(std::size_t i) { return PointSet(std::uint64_t{1} << i); }

  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool subset_of(PointSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr PointSet operator|(PointSet o) const { return PointSet(bits_ | o.bits_); }
  constexpr PointSet operator&(PointSet o) const { return PointSet(bits_ & o.bits_); }
  constexpr PointSet& operator|=(PointSet o) { bits_ |= o.bits_; return *this; }

  friend constexpr auto operator<=>(PointSet, PointSet) = default;

  std::vector<std::size_t> indices() const;

 private:
  std::uint64_t bits_ = 0;
};

struct OpenBall {
  Point center;
  double radius = 0.0;
  std::vector<Point> members;  // in candidate order
};

/// D(center; radius) = { z : d(center,center,z) < radius + d(center,center,center) },
/// materialized over `candidates` (which must contain the center).
OpenBall open_ball(const PartialSbSpace& space, const Point& center, double radius,
                   const std::vector<Point>& candidates);

struct InnerBall {
  double radius = 0.0;     // c
  bool contained = false;  // D(v;c) subset of D(x;s) over the candidates
  OpenBall inner;
  OpenBall outer;
};

/// For v in D(x;s): c = s when v = x, otherwise c = s/(4t); the verdict compares
/// both balls member by member.
InnerBall inner_ball_radius(const PartialSbSpace& space, const Point& x, double s,
                            const Point& v, const std::vector<Point>& candidates);

/// One radius per distinct ball centred at `center`: midpoints between
/// consecutive positive thresholds d(c,c,z) - d(c,c,c), plus one above the largest.
std::vector<double> canonical_radii(const PartialSbSpace& space, const Point& center,
                                    const std::vector<Point>& candidates);

struct FiniteTopology {
  std::vector<Point> carrier;
  std::vector<std::string> labels;  // display text per carrier point
  std::vector<PointSet> opens;      // sorted, unique
  bool balls_form_basis = true;     // false when intersections had to be added

  PointSet full() const { return PointSet::full(carrier.size()); }
  bool is_open(PointSet set) const;
  std::vector<Point> members(PointSet set) const;
};

/// Topology generated by the canonical balls over every centre of a FiniteList
/// carrier: unions of finite intersections of balls. When the balls already
/// form a basis this is just their union closure (balls_form_basis = true).
FiniteTopology generate_topology(const PartialSbSpace& space);

/// The distinct balls used as generators by generate_topology.
std::vector<PointSet> basis_balls(const PartialSbSpace& space);

/// Contains the empty set and the carrier, closed under union and pairwise intersection.
bool verify_topology_axioms(const FiniteTopology& topology);

struct SeparationFailure {
  std::string property;  // "T0", "T1" or "T2"
  Point first;
  Point second;
  std::string reason;
};

struct SeparationReport {
  bool t0 = true;
  bool t1 = true;
  bool t2 = true;
  std::vector<SeparationFailure> witnesses;
};

bool is_T0(const FiniteTopology& topology);
bool is_T1(const FiniteTopology& topology);
bool is_T2(const FiniteTopology& topology);
SeparationReport separation_report(const FiniteTopology& topology);

struct ConnectednessResult {
  bool connected = true;
  std::optional<std::pair<PointSet, PointSet>> separation;
};

ConnectednessResult is_connected(const FiniteTopology& topology);

/// Finite topologies are trivially compact; non-compactness of infinite
/// carriers is exhibited with uncovered_witness instead.
bool is_compact(const FiniteTopology& topology);

/// Indexed family of balls D(center; scale*n + offset) for n in `indices`.
struct CoverFamily {
  Point center;
  double scale = 1.0;
  double offset = 0.0;
  std::vector<long> indices;

  double radius(long n) const { return scale * static_cast<double>(n) + offset; }
  std::string radius_expression() const;
};

/// First candidate in no ball of the subfamily, searching the isolated points,
/// the integer points of every part up to `search_bound`, then the bound itself.
std::optional<Point> uncovered_witness(const PartialSbSpace& space, const CoverFamily& family,
                                       const std::vector<long>& subfamily, double search_bound);

/// Candidate list searched by uncovered_witness.
std::vector<Point> witness_candidates(const PartialSbSpace& space, double search_bound);

}  // namespace psbm
