#include <doctest.h>

#include <cmath>
#include <random>

#include "psbm/axioms.hpp"
#include "psbm/search.hpp"
#include "psbm/topology.hpp"
#include "support.hpp"

using namespace psbm;

namespace {

constexpr std::size_t kCases = 60;

double draw(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

TEST_CASE("property: search only returns valid tables") {
  for (std::size_t n : {2u, 3u, 4u}) {
    TableSearchStats stats;
    const auto spaces = find_valid_tables(n, 20, 11 + n, 100000, &stats);
    CHECK(spaces.size() == 20);
    CHECK(stats.accepted == 20);
    for (const auto& s : spaces) {
      CHECK(check_axioms(s, AxiomSet::PartialSb, QuadrupleSource::exhaustive()).passed);
    }
  }
}

TEST_CASE("property: generated topologies are T0 topologies") {
  for (std::size_t n : {2u, 3u, 4u, 5u}) {
    for (const auto& s : find_valid_tables(n, kCases / 4, 100 + n, 400000)) {
      const auto t = generate_topology(s);
      CHECK(verify_topology_axioms(t));
      CHECK(is_T0(t));
    }
  }
}

TEST_CASE("property: every ball contains its center and grows with the radius") {
  std::mt19937_64 rng(5);
  for (const auto& s : find_valid_tables(4, kCases, 21, 400000)) {
    const auto pts = s.points();
    const auto& c = pts[rng() % pts.size()];
    const double r1 = draw(rng, 0.01, 10);
    const double r2 = r1 + draw(rng, 0, 10);
    const auto small = open_ball(s, c, r1, pts);
    const auto large = open_ball(s, c, r2, pts);
    CHECK(std::find(small.members.begin(), small.members.end(), c) != small.members.end());
    for (const auto& m : small.members) {
      CHECK(std::find(large.members.begin(), large.members.end(), m) != large.members.end());
    }
  }
}

TEST_CASE("property: the centre's own inner ball is always contained") {
  std::mt19937_64 rng(9);
  for (const auto& s : find_valid_tables(4, kCases, 31, 400000)) {
    const auto pts = s.points();
    const auto& x = pts[rng() % pts.size()];
    CHECK(inner_ball_radius(s, x, draw(rng, 0.1, 12), x, pts).contained);
  }
}

TEST_CASE("property: small enough inner balls exist on the ray") {
  std::mt19937_64 rng(13);
  const auto ray = builtin_space("quintic_ray").with_bound(4);
  const auto cands = grid_carrier(ray, 300);
  for (std::size_t i = 0; i < kCases; ++i) {
    const auto x = Point::scalar(draw(rng, 1, 3));
    const double s = draw(rng, 1, 400);
    const double sx = ray.distance(x, x, x);
    const auto outer = open_ball(ray, x, s, cands);
    for (const auto& v : outer.members) {
      if (v == x) continue;
      // z in D(v;c) means 2z^5 < c - v^5, which keeps x^5 + 2z^5 below s
      const double slack = s + sx - 2 * std::pow(x.value(), 5) - std::pow(v.value(), 5);
      const auto inner = open_ball(ray, v, std::max(slack, 1e-9), cands);
      for (const auto& z : inner.members) {
        CHECK(std::find(outer.members.begin(), outer.members.end(), z) != outer.members.end());
      }
    }
  }
}

TEST_CASE("property: quintic symmetry and self-distance bound") {
  std::mt19937_64 rng(17);
  const auto ray = builtin_space("quintic_ray");
  for (std::size_t i = 0; i < 500; ++i) {
    const auto p = Point::scalar(draw(rng, 1, 20));
    const auto q = Point::scalar(draw(rng, 1, 20));
    const auto r = Point::scalar(draw(rng, 1, 20));
    CHECK(ray.distance(p, p, q) == ray.distance(q, q, p));
    CHECK(ray.distance(p, p, p) <= ray.distance(p, q, r));
  }
}

TEST_CASE("property: topology generation is order independent") {
  for (const auto& s : find_valid_tables(3, 20, 41, 100000)) {
    auto pts = s.points();
    std::reverse(pts.begin(), pts.end());
    const auto t1 = generate_topology(s);
    const auto t2 = generate_topology(restrict_to(s, pts));
    CHECK(testing::opens(t1).size() == testing::opens(t2).size());
  }
}
