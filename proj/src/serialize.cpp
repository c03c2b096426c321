#include "psbm/serialize.hpp"

#include <sstream>

#include "psbm/numeric.hpp"

namespace psbm {

Json point_json(const PartialSbSpace& space, const Point& p) {
  if (p.is_label()) return space.display(p);
  return p.value();
}

Json points_json(const PartialSbSpace& space, const std::vector<Point>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(point_json(space, p));
  return out;
}

namespace {

Json set_json(const FiniteTopology& topology, PointSet set) {
  Json out = Json::array();
  for (auto i : set.indices()) out.push_back(topology.labels[i]);
  return out;
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const PartialSbSpace& space, const AxiomReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"axiom", v.axiom},
                          {"witness", points_json(space, v.witness)},
                          {"lhs", v.lhs},
                          {"rhs", v.rhs}});
  }
  return {{"space", space.name()},
          {"axiom_set", to_string(report.axiom_set)},
          {"coefficient", space.coefficient()},
          {"checked_count", report.checked_count},
          {"passed", report.passed},
          {"violations", violations}};
}

Json to_json(const PartialSbSpace& space, const OpenBall& ball) {
  return {{"space", space.name()},
          {"center", point_json(space, ball.center)},
          {"radius", ball.radius},
          {"members", points_json(space, ball.members)}};
}

Json to_json(const FiniteTopology& topology) {
  Json opens = Json::array();
  for (auto s : topology.opens) opens.push_back(set_json(topology, s));
  return {{"carrier", topology.labels}, {"opens", opens}, {"balls_form_basis", topology.balls_form_basis}};
}

Json to_json(const FiniteTopology& topology, const SeparationReport& report) {
  Json witnesses = Json::array();
  auto label = [&](const Point& p) {
    auto it = std::find(topology.carrier.begin(), topology.carrier.end(), p);
    return topology.labels[static_cast<std::size_t>(it - topology.carrier.begin())];
  };
  for (const auto& w : report.witnesses) {
    witnesses.push_back({{"property", w.property},
                         {"pair", Json::array({label(w.first), label(w.second)})},
                         {"reason", w.reason}});
  }
  Json out = to_json(topology);
  out["t0"] = report.t0;
  out["t1"] = report.t1;
  out["t2"] = report.t2;
  out["witnesses"] = witnesses;
  return out;
}

Json to_json(const FiniteTopology& topology, const ConnectednessResult& result) {
  Json out = to_json(topology);
  out["connected"] = result.connected;
  if (result.separation) {
    out["separation"] = Json::array(
        {set_json(topology, result.separation->first), set_json(topology, result.separation->second)});
  } else {
    out["separation"] = nullptr;
  }
  return out;
}

Json to_json(const PartialSbSpace& space, const CoverFamily& family) {
  return {{"center", point_json(space, family.center)},
          {"radius", family.radius_expression()},
          {"indices", family.indices}};
}

Json to_json(const ComparisonReport& report) {
  Json props = Json::array();
  for (const auto& p : report.properties) {
    props.push_back({{"name", p.name},
                     {"passed", p.passed},
                     {"witness", optional_number(p.witness)},
                     {"detail", p.detail}});
  }
  return {{"function", report.function},
          {"kind", to_string(report.kind)},
          {"passed", report.passed},
          {"properties", props}};
}

Json to_json(const PartialSbSpace& space, const CertificateReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"triple", points_json(space, {f.triple.begin(), f.triple.end()})},
                        {"lhs", f.lhs},
                        {"rhs", f.rhs}});
  }
  Json out = {{"space", space.name()},
              {"inequality", report.inequality},
              {"triples_checked", report.triples_checked},
              {"triples_skipped", report.triples_skipped},
              {"excluded_fixed_points", points_json(space, report.excluded_fixed_points)},
              {"min_margin", report.min_margin},
              {"passed", report.passed},
              {"failures", failures}};
  if (report.min_margin_triple) {
    const auto& t = *report.min_margin_triple;
    out["min_margin_triple"] = points_json(space, {t.begin(), t.end()});
  }
  return out;
}

Json to_json(const CaseTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"subcase", row.label},
                    {"condition", row.description},
                    {"lhs", row.lhs},
                    {"lhs_constant", row.lhs_constant},
                    {"rhs_min", row.rhs_min},
                    {"argmin", Json::array({row.argmin[0].value(), row.argmin[1].value(),
                                            row.argmin[2].value()})},
                    {"evaluations", row.evaluations},
                    {"listed_rhs", optional_number(row.reference_rhs)},
                    {"discrepancy", row.discrepancy},
                    {"holds", row.holds}});
  }
  return {{"inequality", table.inequality},
          {"fixed_isolated", table.fixed_isolated},
          {"moving_isolated", table.moving_isolated},
          {"grid_points", table.grid_points},
          {"all_hold", table.all_hold},
          {"rows", rows},
          {"discrepancies", table.discrepancies}};
}

Json to_json(const PartialSbSpace& space, const IterationTrace& trace) {
  return {{"orbit", points_json(space, trace.orbit)},
          {"gaps", trace.gaps},
          {"self_distances", trace.self_distances},
          {"converged", trace.converged},
          {"steps", trace.steps()},
          {"limit", trace.limit ? point_json(space, *trace.limit) : Json(nullptr)},
          {"limit_gap", optional_number(trace.limit_gap)}};
}

Json to_json(const ConvergenceReport& report) {
  return {{"gap_monotone_nonincreasing", report.gap_monotone_nonincreasing},
          {"first_increase", report.first_increase ? Json(*report.first_increase) : Json(nullptr)},
          {"gap_limit", report.gap_limit},
          {"cauchy_pairs_checked", report.cauchy_pairs_checked},
          {"max_pair_deviation", report.max_pair_deviation},
          {"self_distance_at_limit", optional_number(report.self_distance_at_limit)}};
}

std::string trace_csv(const PartialSbSpace& space, const IterationTrace& trace) {
  std::ostringstream out;
  out << "k,a_k,gap_k\n";
  for (std::size_t k = 0; k < trace.orbit.size(); ++k) {
    out << k << ',' << space.display(trace.orbit[k]) << ',';
    if (k < trace.gaps.size()) out << format_real(trace.gaps[k]);
    out << '\n';
  }
  return out.str();
}

}  // namespace psbm
