#include "psbm/repro.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "psbm/axioms.hpp"
#include "psbm/comparison.hpp"
#include "psbm/contraction.hpp"
#include "psbm/errors.hpp"
#include "psbm/fixpoint.hpp"
#include "psbm/numeric.hpp"
#include "psbm/search.hpp"
#include "psbm/topology.hpp"

namespace psbm {

namespace {

class Item {
 public:
  Item(std::string id, std::string title) { item_.id = std::move(id); item_.title = std::move(title); item_.passed = true; }

  void expect(bool ok, const std::string& what) {
    if (!ok) item_.passed = false;
    item_.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { item_.details.push_back("note " + what); }

  ReproItem done() { return std::move(item_); }

 private:
  ReproItem item_;
};

std::vector<std::string> labels_of(const PartialSbSpace& space, const std::vector<Point>& pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(space.display(p));
  std::sort(out.begin(), out.end());
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out + "}";
}

std::string set_text(const FiniteTopology& t, PointSet s) {
  std::vector<std::string> parts;
  for (auto i : s.indices()) parts.push_back(t.labels[i]);
  return join(parts);
}

std::string family_text(const FiniteTopology& t) {
  std::vector<std::string> parts;
  for (auto s : t.opens) parts.push_back(set_text(t, s));
  return join(parts);
}

class Registry {
 public:
  explicit Registry(const ReproOptions& options) : options_(options) {}
  PartialSbSpace get(const std::string& name) const {
    if (auto it = options_.overrides.find(name); it != options_.overrides.end()) return it->second;
    return builtin_space(name);
  }

 private:
  const ReproOptions& options_;
};

ReproItem axiom_item(const Registry& reg, std::uint64_t seed) {
  Item item("axioms", "builtin spaces satisfy the partial S_b axioms with t=1");
  for (const char* name : {"two_point_a", "two_point_b"}) {
    const auto space = reg.get(name);
    const auto report = check_axioms(space, AxiomSet::PartialSb, QuadrupleSource::exhaustive());
    item.expect(report.passed, std::string(name) + " exhaustive: " +
                                   std::to_string(report.checked_count) + " checks, " +
                                   std::to_string(report.violations.size()) + " violations");
  }
  for (const char* name : {"quintic_ray", "quintic_gap"}) {
    const auto space = reg.get(name).with_bound(64.0);
    const auto report =
        check_axioms(space, AxiomSet::PartialSb, QuadrupleSource::sampled(10000, seed));
    item.expect(report.passed, std::string(name) + " sampled 10^4 quadruples: " +
                                   std::to_string(report.violations.size()) + " violations");
  }
  const auto b = builtin_space("two_point_b");
  std::size_t detected = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        const double original = b.metric()(Point::label(i), Point::label(j), Point::label(k));
        const auto mutated = b.with_metric(b.metric().with_entry(i, j, k, original - 5.0));
        const auto report = check_axioms(mutated, AxiomSet::PartialSb, QuadrupleSource::exhaustive());
        bool exact = !report.violations.empty();
        for (const auto& v : report.violations) {
          // witnesses must reproduce the reported lhs
          const auto& w = v.witness;
          double lhs = 0.0;
          if (v.axiom == "2") lhs = mutated.distance(w[0], w[0], w[0]);
          else if (v.axiom == "3") lhs = mutated.distance(w[0], w[0], w[1]);
          else lhs = mutated.distance(w[0], w[1], w[2]);
          exact = exact && lhs == v.lhs;
        }
        if (exact) ++detected;
      }
  item.expect(detected == 8, "two_point_b: " + std::to_string(detected) +
                                 "/8 single-entry mutations (-5) detected with exact witnesses");
  return item.done();
}

ReproItem ball_item(const Registry& reg) {
  Item item("balls", "open balls of the builtin spaces");
  auto check = [&](const std::string& name, const std::string& center, double radius,
                   const std::vector<std::string>& expected, const std::vector<Point>* candidates) {
    const auto space = reg.get(name);
    const Point c = space.parse_point(center);
    const auto pool = candidates ? *candidates : grid_carrier(space, 200);
    const auto ball = open_ball(space, c, radius, pool);
    const auto got = labels_of(space, ball.members);
    item.expect(got == expected, name + ": D(" + center + ";" + format_real(radius) + ") = " +
                                     join(got) + ", expected " + join(expected));
  };
  const std::vector<Point> ray_candidates = {Point::scalar(1), Point::scalar(2), Point::scalar(3),
                                             Point::scalar(4)};
  check("quintic_ray", "1", 3.0, {"1"}, &ray_candidates);
  check("quintic_ray", "1", 3.0, {"1"}, nullptr);
  for (double r : {0.1, 1.0, 100.0}) check("two_point_a", "1", r, {"1", "2"}, nullptr);
  check("two_point_a", "2", 1.0, {"2"}, nullptr);
  check("two_point_b", "1", 0.5, {"1"}, nullptr);
  check("two_point_b", "2", 3.0, {"2"}, nullptr);
  return item.done();
}

ReproItem topology_item(const Registry& reg) {
  Item item("topology", "generated topologies, separation and connectedness");
  const auto a = generate_topology(reg.get("two_point_a"));
  const auto b = generate_topology(reg.get("two_point_b"));
  item.expect(family_text(a) == "{{},{2},{1,2}}", "two_point_a opens " + family_text(a));
  item.expect(family_text(b) == "{{},{1},{2},{1,2}}", "two_point_b opens " + family_text(b));
  item.expect(verify_topology_axioms(a) && verify_topology_axioms(b), "both families are topologies");
  const auto sa = separation_report(a);
  const auto sb = separation_report(b);
  auto triple = [](const SeparationReport& r) {
    return std::string("(T0=") + (r.t0 ? "true" : "false") + ", T1=" + (r.t1 ? "true" : "false") +
           ", T2=" + (r.t2 ? "true" : "false") + ")";
  };
  item.expect(sa.t0 && !sa.t1 && !sa.t2, "two_point_a separation " + triple(sa));
  item.expect(sb.t0 && sb.t1 && sb.t2, "two_point_b separation " + triple(sb));
  const auto cb = is_connected(b);
  const bool witness_ok = cb.separation && set_text(b, cb.separation->first) == "{1}" &&
                          set_text(b, cb.separation->second) == "{2}";
  item.expect(!cb.connected && witness_ok, "two_point_b disconnected by ({1},{2})");
  item.expect(is_connected(a).connected, "two_point_a connected");
  return item.done();
}

ReproItem t0_item(std::uint64_t seed) {
  Item item("t0-universality", "random valid 3-point tables generate T0 topologies");
  TableSearchStats stats;
  const auto spaces = find_valid_tables(3, 200, seed, 200000, &stats);
  std::size_t t0 = 0, not_basis = 0;
  for (const auto& space : spaces) {
    const auto topology = generate_topology(space);
    if (is_T0(topology)) ++t0;
    if (!topology.balls_form_basis) ++not_basis;
  }
  item.expect(spaces.size() == 200, std::to_string(spaces.size()) + " valid tables found in " +
                                        std::to_string(stats.attempts) + " draws");
  item.expect(t0 == spaces.size(), std::to_string(t0) + "/" + std::to_string(spaces.size()) + " are T0");
  item.note(std::to_string(not_basis) + " of these tables have balls that are not a basis; their topology adds ball intersections");
  return item.done();
}

ReproItem cover_item(const Registry& reg) {
  Item item("cover-witness", "no finite subfamily of {D(1;n): n>=3} covers the ray");
  const auto space = reg.get("quintic_ray");
  CoverFamily family{Point::scalar(1.0), 1.0, 0.0, {}};
  for (long n = 3; n <= 20; ++n) family.indices.push_back(n);
  const double bound = 64.0;
  const std::size_t m = family.indices.size();
  std::size_t checked = 0, confirmed = 0;
  std::vector<long> sub;
  for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
    sub.clear();
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1U << i)) sub.push_back(family.indices[i]);
    }
    ++checked;
    const auto witness = uncovered_witness(space, family, sub, bound);
    if (!witness) continue;
    const double self = space.distance(family.center, family.center, family.center);
    const double d = space.distance(family.center, family.center, *witness);
    const bool outside = std::all_of(sub.begin(), sub.end(), [&](long n) {
      return !strictly_less(d, family.radius(n) + self);
    });
    if (outside) ++confirmed;
  }
  item.expect(confirmed == checked, std::to_string(confirmed) + "/" + std::to_string(checked) +
                                        " subfamilies have a verified uncovered point (bound 64)");
  const auto w = uncovered_witness(space, family, {3, 5}, bound);
  item.expect(w && w->value() == 2.0, "subfamily {3,5}: witness " + (w ? space.display(*w) : "none"));
  return item.done();
}

ReproItem comparison_item() {
  Item item("comparison", "comparison-function classes");
  using K = ComparisonFn::Kind;
  const auto grid = default_comparison_grid();
  const auto tau = check_boyd_wong_properties(ComparisonFn::builtin("paper_tau", K::BoydWong), grid);
  const auto half = check_matkowski_properties(ComparisonFn::builtin("half", K::Matkowski), grid, 64);
  const auto id_bw = check_boyd_wong_properties(ComparisonFn::builtin("identity", K::BoydWong), grid);
  const auto id_mk = check_matkowski_properties(ComparisonFn::builtin("identity", K::Matkowski), grid, 64);
  item.expect(tau.passed, "paper_tau passes the Boyd-Wong checks");
  item.expect(half.passed, "half passes the Matkowski checks");
  const auto* below = id_bw.find("below-identity");
  item.expect(!id_bw.passed && below && !below->passed && below->witness,
              "identity fails below-identity (witness " +
                  (below && below->witness ? format_real(*below->witness) : "-") + ")");
  const auto* decay = id_mk.find("iterate-decay");
  item.expect(!id_mk.passed && decay && !decay->passed && decay->witness,
              "identity fails iterate-decay (witness " +
                  (decay && decay->witness ? format_real(*decay->witness) : "-") + ")");
  return item.done();
}

ReproItem contraction_item(const Registry& reg) {
  Item item("contraction", "interpolative contraction certificates and case table");
  const auto gap = reg.get("quintic_gap").with_bound(64.0);
  const auto finite = restrict_to(gap, grid_carrier(gap, 50));
  for (auto kind : {ComparisonFn::Kind::BoydWong, ComparisonFn::Kind::Matkowski}) {
    const auto spec = InterpolativeSpec::paper(kind);
    const auto report = certify(finite, spec, TripleSource::exhaustive());
    const bool fixed_ok = report.excluded_fixed_points.size() == 1 &&
                          report.excluded_fixed_points[0] == Point::scalar(0.0);
    item.expect(report.passed && fixed_ok,
                to_string(kind) + ": " + std::to_string(report.triples_checked) +
                    " triples, " + std::to_string(report.failures.size()) +
                    " failures, Fix(S) = " + join(labels_of(finite, report.excluded_fixed_points)) +
                    ", min margin " + format_real(report.min_margin));
  }
  const auto table = reproduce_case_table(gap, InterpolativeSpec::paper(ComparisonFn::Kind::BoydWong), 50);
  static const std::array<double, 15> expected_lhs = {0,   243, 486, 486, 243, 243, 486, 243,
                                                      243, 486, 243, 486, 486, 486, 243};
  bool lhs_ok = table.rows.size() == 15;
  for (std::size_t i = 0; lhs_ok && i < 15; ++i) {
    lhs_ok = table.rows[i].lhs == expected_lhs[i] && table.rows[i].lhs_constant;
  }
  item.expect(lhs_ok, "case-table lhs column matches {0,243,486,486,243,243,486,243,243,486,243,486,486,486,243}");
  item.expect(table.all_hold, "lhs <= computed rhs minimum in all 15 subcases");
  for (const auto& d : table.discrepancies) item.note(d);
  return item.done();
}

ReproItem fixpoint_item(const Registry& reg, std::uint64_t seed) {
  Item item("fixed-point", "Picard iteration, fixed point, uniqueness, gap envelope");
  const auto gap = reg.get("quintic_gap").with_bound(64.0);
  const auto map = SelfMap::paper_S();
  const auto half = ComparisonFn::builtin("half", ComparisonFn::Kind::Matkowski);
  const Point zero = Point::scalar(0.0);
  for (double start : {7.0, 4.0, 64.0, 3.0}) {
    const auto trace = picard_iterate(gap, map, Point::scalar(start));
    const bool converged = trace.converged && trace.limit && *trace.limit == zero && trace.steps() <= 3;
    const auto conv = cauchy_diagnostic(gap, trace, 1);
    const auto env = matkowski_envelope_check(trace, half);
    std::ostringstream orbit;
    for (std::size_t k = 0; k < trace.orbit.size(); ++k) orbit << (k ? "," : "") << gap.display(trace.orbit[k]);
    item.expect(converged && conv.gap_monotone_nonincreasing && env.holds,
                "a0=" + format_real(start) + ": orbit [" + orbit.str() + "], " +
                    std::to_string(trace.steps()) + " steps, gaps nonincreasing, envelope holds");
  }
  const auto check = verify_fixed_point(gap, map, zero);
  item.expect(check.is_fixed && check.self_distance_zero && gap.distance(zero, zero, zero) == 0.0,
              "0 is fixed and d(0,0,0) = 0 exactly");
  const auto sample = sample_carrier(gap, 200, seed);
  const auto unique = uniqueness_check(gap, map, sample, zero);
  item.expect(unique.unique, "0 is the only fixed point among " + std::to_string(sample.size()) +
                                 " sampled points");
  return item.done();
}

}  // namespace

std::vector<ReproItem> run_repro(const ReproOptions& options) {
  const Registry reg(options);
  std::vector<ReproItem> items;
  auto guarded = [&](const std::string& id, auto&& fn) {
    try {
      items.push_back(fn());
    } catch (const std::exception& e) {
      items.push_back({id, "error", false, {std::string("FAIL ") + e.what()}});
    }
  };
  guarded("axioms", [&] { return axiom_item(reg, options.seed); });
  guarded("balls", [&] { return ball_item(reg); });
  guarded("topology", [&] { return topology_item(reg); });
  guarded("t0-universality", [&] { return t0_item(options.seed); });
  guarded("cover-witness", [&] { return cover_item(reg); });
  guarded("comparison", [&] { return comparison_item(); });
  guarded("contraction", [&] { return contraction_item(reg); });
  guarded("fixed-point", [&] { return fixpoint_item(reg, options.seed); });
  return items;
}

Json to_json(const std::vector<ReproItem>& items) {
  Json arr = Json::array();
  bool all = true;
  for (const auto& item : items) {
    all = all && item.passed;
    arr.push_back({{"id", item.id}, {"title", item.title}, {"passed", item.passed}, {"details", item.details}});
  }
  return {{"passed", all}, {"items", arr}};
}

std::string render_repro(const std::vector<ReproItem>& items) {
  std::ostringstream out;
  bool all = true;
  for (const auto& item : items) {
    all = all && item.passed;
    out << (item.passed ? "[PASS] " : "[FAIL] ") << item.id << " - " << item.title << '\n';
    for (const auto& d : item.details) out << "         " << d << '\n';
  }
  out << (all ? "all items pass\n" : "some items FAIL\n");
  return out.str();
}

}  // namespace psbm
