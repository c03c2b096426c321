#include <doctest.h>

#include "psbm/errors.hpp"
#include "psbm/numeric.hpp"
#include "psbm/space.hpp"
#include "support.hpp"

using namespace psbm;

namespace {

double at(const PartialSbSpace& s, const char* a, const char* b, const char* c) {
  return s.distance(s.parse_point(a), s.parse_point(b), s.parse_point(c));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("builtin table values") {
  const auto a = builtin_space("two_point_a");
  const auto b = builtin_space("two_point_b");
  CHECK(at(a, "1", "1", "2") == 8);
  CHECK(at(a, "2", "2", "1") == 8);
  CHECK(at(a, "2", "2", "2") == 4);
  CHECK(at(a, "2", "1", "2") == 4);
  CHECK(at(b, "1", "1", "1") == 4);
  CHECK(at(b, "2", "2", "2") == 4);
  for (const char* p : {"1", "2"})
    for (const char* q : {"1", "2"})
      for (const char* r : {"1", "2"}) {
        if (std::string(p) == q && std::string(q) == r) continue;
        CHECK(at(b, p, q, r) == 8);
      }
}

TEST_CASE("quintic rule") {
  const auto ray = builtin_space("quintic_ray");
  const auto gap = builtin_space("quintic_gap");
  CHECK(at(ray, "1", "1", "1") == 1);
  CHECK(at(ray, "4", "4", "3") == 2534);
  CHECK(at(ray, "1", "1", "2") == 66);
  CHECK(at(gap, "7", "7", "3") == 34100);
  CHECK(at(gap, "0", "0", "0") == 0);
  CHECK(at(ray, "2", "3", "4") == 32 + 243 + 1024);
}

TEST_CASE("carrier membership") {
  const auto gap = builtin_space("quintic_gap");
  CHECK(gap.contains(Point::scalar(0)));
  CHECK(gap.contains(Point::scalar(3)));
  CHECK(gap.contains(Point::scalar(4)));
  CHECK(gap.contains(Point::scalar(1e6)));
  CHECK_FALSE(gap.contains(Point::scalar(1)));
  CHECK_FALSE(gap.contains(Point::scalar(3.5)));
  CHECK(gap.is_isolated(Point::scalar(3)));
  CHECK_FALSE(gap.is_isolated(Point::scalar(4)));
  CHECK(code_of([&] { gap.distance(Point::scalar(2), Point::scalar(0), Point::scalar(0)); }) ==
        ErrorCode::UnknownPoint);
  CHECK(code_of([&] { builtin_space("two_point_a").parse_point("3"); }) == ErrorCode::UnknownPoint);
  CHECK(code_of([] { builtin_space("nope"); }) == ErrorCode::UnknownBuiltin);
  CHECK(code_of([&] { gap.points(); }) == ErrorCode::InfeasibleExhaustive);
}

TEST_CASE("table file round trip") {
  const auto b = builtin_space("two_point_b");
  const auto text = write_tabulated_space(b);
  const auto loaded = load_tabulated_space(text, "two_point_b");
  REQUIRE(loaded.metric().table_size() == 2);
  CHECK(std::equal(loaded.metric().table().begin(), loaded.metric().table().end(),
                   b.metric().table().begin()));
  CHECK(loaded.coefficient() == b.coefficient());
  CHECK(testing::names(loaded, loaded.points()) == testing::names(b, b.points()));
}

TEST_CASE("table file errors") {
  CHECK(code_of([] { load_tabulated_space("points:\ncoefficient: 1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_tabulated_space("points: a a\n"); }) == ErrorCode::ParseError);
  const std::string missing =
      "points: 1 2\ncoefficient: 1\n1 1 1 4\n1 1 2 8\n1 2 1 8\n1 2 2 8\n2 1 1 8\n2 2 1 8\n2 2 2 4\n";
  CHECK(code_of([&] { load_tabulated_space(missing); }) == ErrorCode::IncompleteTable);
  const std::string negative =
      "points: x\ncoefficient: 1\nx x x -1\n";
  CHECK(code_of([&] { load_tabulated_space(negative); }) == ErrorCode::NegativeValue);
  CHECK(code_of([] { load_tabulated_space("points: x\ncoefficient: 1\nx x x 0\nx x x 0\n"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { load_tabulated_space("points: x\ncoefficient: 1\nx x x zero\n"); }) ==
        ErrorCode::ParseError);
  const auto ok = load_tabulated_space("# comment\npoints: x\ncoefficient: 2\nx x x 0 # self\n");
  CHECK(ok.coefficient() == 2);
}

TEST_CASE("sampling") {
  const auto a = builtin_space("two_point_a");
  CHECK(testing::names(a, sample_carrier(a, 5, 0)) == std::vector<std::string>{"1", "2"});

  const auto gap = builtin_space("quintic_gap");
  const auto g = sample_carrier(gap, 5, 0);
  CHECK(std::find(g.begin(), g.end(), Point::scalar(0)) != g.end());
  CHECK(std::find(g.begin(), g.end(), Point::scalar(3)) != g.end());

  const auto ray = builtin_space("quintic_ray");
  const auto s1 = sample_carrier(ray, 10, 1);
  const auto s2 = sample_carrier(ray, 10, 1);
  CHECK(s1.size() == 10);
  CHECK(s1 == s2);
  for (const auto& p : s1) {
    CHECK(p.value() >= 1.0);
    CHECK(p.value() <= 64.0);
  }
  CHECK(sample_carrier(ray, 10, 2) != s1);
  CHECK(sample_carrier(ray.with_bound(8), 10, 1).back().value() == 8.0);
}

TEST_CASE("grid and restriction") {
  const auto gap = builtin_space("quintic_gap");
  const auto grid = grid_carrier(gap, 50);
  CHECK(grid.size() == 52);
  CHECK(grid.front() == Point::scalar(0));
  CHECK(grid[1] == Point::scalar(3));
  CHECK(grid[2] == Point::scalar(4));
  CHECK(grid.back() == Point::scalar(64));
  const auto finite = restrict_to(gap, grid);
  CHECK(finite.is_finite());
  CHECK(finite.points().size() == 52);
  CHECK(finite.distance(Point::scalar(4), Point::scalar(4), Point::scalar(3)) == 2534);
}

TEST_CASE("constructor validation") {
  CHECK(code_of([] { testing::table_space({"x"}, {0.0}, 0.5); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] {
          PartialSbSpace("dup", FiniteList{{Point::label(0), Point::label(0)}, {"x", "y"}},
                         TripleMetric::tabulated(2, std::vector<double>(8, 0.0)), 1.0);
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("numeric policy") {
  CHECK(is_exact_integer(243.0));
  CHECK_FALSE(is_exact_integer(0.5));
  CHECK(nearly_equal(1.0, 1.0 + 1e-12));
  CHECK_FALSE(nearly_equal(1e12, 1e12 + 1));
  CHECK(nearly_equal(243.0, 243.0 + 1e-10));
  CHECK(strictly_less(3.0, 4.0));
  CHECK_FALSE(strictly_less(4.0, 4.0));
  CHECK(less_or_equal(1.0 + 1e-12, 1.0));
  CHECK_FALSE(less_or_equal(244.0, 243.0));
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(60.75) == "60.75");
}
