#include <doctest.h>

#include "psbm/axioms.hpp"
#include "psbm/errors.hpp"
#include "support.hpp"

using namespace psbm;

namespace {

// 3-point table built from a pair distance; all-distinct triples get `spread`.
PartialSbSpace pair_table(double d12, double d13, double d23, double spread, double t) {
  const double d[3][3] = {{0, d12, d13}, {d12, 0, d23}, {d13, d23, 0}};
  std::vector<double> v(27);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double value = spread;
        if (i == j && j == k) value = 0;
        else if (i == j) value = d[i][k];
        else if (i == k) value = d[i][j];
        else if (j == k) value = d[j][i];
        v[(i * 3 + j) * 3 + k] = value;
      }
  return testing::table_space({"1", "2", "3"}, v, t);
}

bool has_violation(const AxiomReport& r, const std::string& axiom) {
  for (const auto& v : r.violations) {
    if (v.axiom == axiom) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("builtin tables pass exhaustively") {
  for (const char* name : {"two_point_a", "two_point_b"}) {
    CAPTURE(name);
    const auto r = check_axioms(builtin_space(name), AxiomSet::PartialSb, QuadrupleSource::exhaustive());
    CHECK(r.passed);
    CHECK(r.violations.empty());
    CHECK(r.checked_count > 0);
  }
}

TEST_CASE("one-point space passes every variant") {
  for (auto set : {AxiomSet::SMetric, AxiomSet::PartialSMetric, AxiomSet::SbMetric, AxiomSet::PartialSb}) {
    CHECK(check_axioms(testing::one_point(), set, QuadrupleSource::exhaustive()).passed);
  }
}

TEST_CASE("lowered mixed entry violates the self-distance bound") {
  const auto b = builtin_space("two_point_b");
  const auto mutated = b.with_metric(b.metric().with_entry(0, 0, 1, 3.0));
  const auto r = check_axioms(mutated, AxiomSet::PartialSb, QuadrupleSource::exhaustive());
  CHECK_FALSE(r.passed);
  bool found = false;
  for (const auto& v : r.violations) {
    if (v.axiom == "2" && v.witness == std::vector<Point>{Point::label(0), Point::label(0), Point::label(1)}) {
      found = true;
      CHECK(v.lhs == 4);
      CHECK(v.rhs == 3);
    }
  }
  CHECK(found);
}

TEST_CASE("every single-entry decrement of two_point_b is detected") {
  const auto b = builtin_space("two_point_b");
  for (std::size_t idx = 0; idx < 8; ++idx) {
    const std::size_t i = idx / 4, j = (idx / 2) % 2, k = idx % 2;
    CAPTURE(idx);
    const double old = b.metric().table()[idx];
    const auto r = check_axioms(b.with_metric(b.metric().with_entry(i, j, k, old - 5)),
                                AxiomSet::PartialSb, QuadrupleSource::exhaustive());
    CHECK_FALSE(r.passed);
  }
}

TEST_CASE("nonzero self-distance fails the S-metric identity") {
  const auto r = check_axioms(builtin_space("two_point_b"), AxiomSet::SMetric, QuadrupleSource::exhaustive());
  CHECK_FALSE(r.passed);
  CHECK(has_violation(r, "1-forward"));
}

TEST_CASE("coefficient relaxes the triangle inequality") {
  const auto space = pair_table(5, 1, 1, 4, 1.0);
  const auto strict = check_axioms(space, AxiomSet::PartialSb, QuadrupleSource::exhaustive());
  CHECK_FALSE(strict.passed);
  CHECK(has_violation(strict, "4"));
  CHECK(check_axioms(space.with_coefficient(2.0), AxiomSet::PartialSb, QuadrupleSource::exhaustive()).passed);
  CHECK(check_axioms(space.with_coefficient(2.0), AxiomSet::SbMetric, QuadrupleSource::exhaustive()).passed);
}

TEST_CASE("discrete metric satisfies the S-metric axioms") {
  const auto space = pair_table(1, 1, 1, 1, 1.0);
  CHECK(check_axioms(space, AxiomSet::SMetric, QuadrupleSource::exhaustive()).passed);
  CHECK(check_axioms(space, AxiomSet::PartialSMetric, QuadrupleSource::exhaustive()).passed);
}

TEST_CASE("sampled checks on continuous carriers") {
  for (const char* name : {"quintic_ray", "quintic_gap"}) {
    CAPTURE(name);
    const auto space = builtin_space(name);
    const auto r1 = check_axioms(space, AxiomSet::PartialSb, QuadrupleSource::sampled(2000, 3));
    const auto r2 = check_axioms(space, AxiomSet::PartialSb, QuadrupleSource::sampled(2000, 3));
    CHECK(r1.passed);
    CHECK(r1.checked_count == r2.checked_count);
    CHECK(r1.checked_count >= 2000);
  }
  CHECK_THROWS_AS(check_axioms(builtin_space("quintic_ray"), AxiomSet::PartialSb, QuadrupleSource::exhaustive()),
                  Error);
}

TEST_CASE("axiom set names") {
  CHECK(parse_axiom_set("partial-sb") == AxiomSet::PartialSb);
  CHECK(parse_axiom_set(to_string(AxiomSet::SbMetric)) == AxiomSet::SbMetric);
  CHECK_THROWS_AS(parse_axiom_set("metric"), Error);
  CHECK(sampling_pool_size(10000) == 22);
  CHECK(sampling_pool_size(1) == 8);
}
