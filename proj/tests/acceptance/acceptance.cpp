#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "psbm/axioms.hpp"
#include "psbm/comparison.hpp"
#include "psbm/contraction.hpp"
#include "psbm/fixpoint.hpp"
#include "psbm/search.hpp"
#include "psbm/topology.hpp"

using namespace psbm;
using K = ComparisonFn::Kind;

namespace {

struct Outcome {
  bool passed = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

std::vector<std::string> members(const PartialSbSpace& s, const OpenBall& ball) {
  std::vector<std::string> out;
  for (const auto& p : ball.members) out.push_back(s.display(p));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::string>> opens(const FiniteTopology& t) {
  std::vector<std::vector<std::string>> out;
  for (auto set : t.opens) {
    std::vector<std::string> names;
    for (auto i : set.indices()) names.push_back(t.labels[i]);
    out.push_back(names);
  }
  return out;
}

// Independent quintic evaluation for the cover check.
double quintic_1_1_z(double z) { return 2.0 * (1.0 + std::pow(z, 5)); }

Outcome axioms_suite() {
  Outcome o;
  for (const char* name : {"two_point_a", "two_point_b"}) {
    o.require(check_axioms(builtin_space(name), AxiomSet::PartialSb, QuadrupleSource::exhaustive()).passed,
              std::string(name) + " exhaustive");
  }
  for (const char* name : {"quintic_ray", "quintic_gap"}) {
    const auto r = check_axioms(builtin_space(name).with_bound(64), AxiomSet::PartialSb,
                                QuadrupleSource::sampled(10000, 0));
    o.require(r.passed && r.violations.empty() && r.checked_count >= 10000, std::string(name) + " sampled");
  }
  const auto b = builtin_space("two_point_b");
  for (std::size_t idx = 0; idx < 8; ++idx) {
    const auto mutated =
        b.with_metric(b.metric().with_entry(idx / 4, (idx / 2) % 2, idx % 2, b.metric().table()[idx] - 5));
    const auto r = check_axioms(mutated, AxiomSet::PartialSb, QuadrupleSource::exhaustive());
    bool exact = !r.violations.empty();
    for (const auto& v : r.violations) {
      const auto& w = v.witness;
      if (v.axiom == "2") {
        exact = exact && mutated.distance(w[0], w[0], w[0]) == v.lhs &&
                mutated.distance(w[0], w[1], w[2]) == v.rhs && v.lhs > v.rhs;
      }
    }
    o.require(exact, "mutation " + std::to_string(idx));
  }
  return o;
}

Outcome ball_suite() {
  Outcome o;
  using V = std::vector<std::string>;
  const auto ray = builtin_space("quintic_ray");
  const std::vector<Point> cands{Point::scalar(1), Point::scalar(2), Point::scalar(3), Point::scalar(4)};
  o.require(members(ray, open_ball(ray, Point::scalar(1), 3, cands)) == V{"1"}, "D(1;3) on ray");
  o.require(members(ray, open_ball(ray, Point::scalar(1), 3, sample_carrier(ray, 500, 0))) == V{"1"},
            "D(1;3) on sampled ray");
  const auto a = builtin_space("two_point_a");
  for (double r : {0.1, 1.0, 100.0}) {
    o.require(members(a, open_ball(a, a.parse_point("1"), r, a.points())) == V{"1", "2"}, "D(1;r) on a");
  }
  o.require(members(a, open_ball(a, a.parse_point("2"), 1, a.points())) == V{"2"}, "D(2;1) on a");
  const auto b = builtin_space("two_point_b");
  o.require(members(b, open_ball(b, b.parse_point("1"), 0.5, b.points())) == V{"1"}, "D(1;1/2) on b");
  o.require(members(b, open_ball(b, b.parse_point("2"), 3, b.points())) == V{"2"}, "D(2;3) on b");
  return o;
}

Outcome topology_suite() {
  Outcome o;
  using Sets = std::vector<std::vector<std::string>>;
  const auto a = generate_topology(builtin_space("two_point_a"));
  const auto b = generate_topology(builtin_space("two_point_b"));
  o.require(opens(a) == Sets{{}, {"2"}, {"1", "2"}}, "opens of a");
  o.require(opens(b) == Sets{{}, {"1"}, {"2"}, {"1", "2"}}, "opens of b");
  o.require(verify_topology_axioms(a) && verify_topology_axioms(b), "topology axioms");
  const auto sa = separation_report(a);
  const auto sb = separation_report(b);
  o.require(sa.t0 && !sa.t1 && !sa.t2, "separation of a");
  o.require(sb.t0 && sb.t1 && sb.t2, "separation of b");
  const auto cb = is_connected(b);
  o.require(!cb.connected && cb.separation && cb.separation->first == PointSet::single(0) &&
                cb.separation->second == PointSet::single(1),
            "b disconnected by ({1},{2})");
  o.require(is_connected(a).connected, "a connected");
  return o;
}

Outcome t0_suite() {
  Outcome o;
  TableSearchStats stats;
  const auto spaces = find_valid_tables(3, 200, 0, 200000, &stats);
  o.require(spaces.size() == 200, "found " + std::to_string(spaces.size()) + " tables");
  for (const auto& s : spaces) {
    const bool valid = check_axioms(s, AxiomSet::PartialSb, QuadrupleSource::exhaustive()).passed;
    o.require(valid && is_T0(generate_topology(s)), "counterexample table");
    if (!o.passed) break;
  }
  return o;
}

Outcome cover_suite() {
  Outcome o;
  const auto ray = builtin_space("quintic_ray");
  CoverFamily family{Point::scalar(1), 1, 0, {}};
  for (long n = 3; n <= 20; ++n) family.indices.push_back(n);
  std::size_t confirmed = 0, total = 0;
  std::vector<long> sub;
  for (std::uint32_t mask = 1; mask < (1U << 18); ++mask) {
    sub.clear();
    for (std::size_t i = 0; i < 18; ++i) {
      if (mask & (1U << i)) sub.push_back(family.indices[i]);
    }
    ++total;
    const auto w = uncovered_witness(ray, family, sub, 64);
    if (!w || !ray.contains(*w) || w->value() > 64) continue;
    bool outside = true;
    for (long n : sub) outside = outside && !(quintic_1_1_z(w->value()) < static_cast<double>(n) + 1.0);
    if (outside) ++confirmed;
  }
  o.require(confirmed == total, std::to_string(confirmed) + "/" + std::to_string(total));
  return o;
}

Outcome comparison_suite() {
  Outcome o;
  const auto grid = default_comparison_grid();
  o.require(check_boyd_wong_properties(ComparisonFn::builtin("paper_tau", K::BoydWong), grid).passed, "paper_tau");
  o.require(check_matkowski_properties(ComparisonFn::builtin("half", K::Matkowski), grid, 64).passed, "half");
  const auto bw = check_boyd_wong_properties(ComparisonFn::builtin("identity", K::BoydWong), grid);
  const auto mk = check_matkowski_properties(ComparisonFn::builtin("identity", K::Matkowski), grid, 64);
  const auto* below = bw.find("below-identity");
  const auto* decay = mk.find("iterate-decay");
  o.require(!bw.passed && below && !below->passed && below->witness, "identity below-identity");
  o.require(!mk.passed && decay && !decay->passed && decay->witness, "identity iterate-decay");
  return o;
}

Outcome contraction_suite() {
  Outcome o;
  const auto gap = builtin_space("quintic_gap").with_bound(64);
  const auto finite = restrict_to(gap, grid_carrier(gap, 50));
  o.require(finite.points().size() == 52, "carrier {0,3} plus 50 grid points");
  for (auto kind : {K::BoydWong, K::Matkowski}) {
    const auto r = certify(finite, InterpolativeSpec::paper(kind), TripleSource::exhaustive());
    o.require(r.passed && r.failures.empty(), to_string(kind) + " certificate");
    o.require(r.excluded_fixed_points == std::vector<Point>{Point::scalar(0)}, "Fix(S) = {0}");
  }
  const auto table = reproduce_case_table(gap, InterpolativeSpec::paper(K::BoydWong), 50);
  const std::array<double, 15> lhs{0, 243, 486, 486, 243, 243, 486, 243, 243, 486, 243, 486, 486, 486, 243};
  o.require(table.rows.size() == 15, "15 subcases");
  for (std::size_t i = 0; i < table.rows.size() && i < 15; ++i) {
    const auto& row = table.rows[i];
    o.require(row.lhs == lhs[i] && row.lhs_constant, "lhs of " + row.label);
    o.require(row.holds && row.lhs <= row.rhs_min, "inequality in " + row.label);
  }
  for (const auto& d : table.discrepancies) std::cout << "    logged: " << d << '\n';
  return o;
}

Outcome fixpoint_suite() {
  Outcome o;
  const auto gap = builtin_space("quintic_gap").with_bound(64);
  const auto S = SelfMap::paper_S();
  const auto half = ComparisonFn::builtin("half", K::Matkowski);
  for (double a0 : {7.0, 4.0, 64.0, 3.0}) {
    const auto t = picard_iterate(gap, S, Point::scalar(a0));
    o.require(t.converged && t.limit && *t.limit == Point::scalar(0) && t.steps() <= 3,
              "orbit from " + std::to_string(a0));
    bool nonincreasing = true;
    for (std::size_t k = 1; k < t.gaps.size(); ++k) nonincreasing = nonincreasing && t.gaps[k] <= t.gaps[k - 1];
    o.require(nonincreasing, "gaps nonincreasing");
    o.require(matkowski_envelope_check(t, half).holds, "envelope");
  }
  const auto zero = verify_fixed_point(gap, S, Point::scalar(0));
  o.require(zero.is_fixed && zero.self_distance_zero && zero.self_distance == 0.0,
            "0 is a fixed point with zero self-distance");
  o.require(uniqueness_check(gap, S, sample_carrier(gap, 200, 0), Point::scalar(0)).unique, "uniqueness");
  return o;
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

Outcome determinism_suite() {
  Outcome o;
  const std::string cmd = std::string(PSBM_CLI) + " repro --format json";
  int s1 = 0, s2 = 0;
  const auto first = capture(cmd, s1);
  const auto second = capture(cmd, s2);
  o.require(s1 == 0 && s2 == 0, "repro exit status");
  o.require(!first.empty() && first == second, "byte-identical reports");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"axiom suite", axioms_suite},
      {"ball suite", ball_suite},
      {"topology suite", topology_suite},
      {"T0 universality", t0_suite},
      {"cover witness", cover_suite},
      {"comparison suite", comparison_suite},
      {"contraction certification", contraction_suite},
      {"fixed-point suite", fixpoint_suite},
      {"determinism", determinism_suite},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.note = e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s (%.0f ms)%s%s\n", o.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), ms, o.note.empty() ? "" : " - ", o.note.c_str());
    std::fflush(stdout);
    if (!o.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
