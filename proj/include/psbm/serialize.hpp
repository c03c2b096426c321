#pragma once

#include <json.hpp>
#include <string>

#include "psbm/axioms.hpp"
#include "psbm/comparison.hpp"
#include "psbm/contraction.hpp"
#include "psbm/fixpoint.hpp"
#include "psbm/space.hpp"
#include "psbm/topology.hpp"

namespace psbm {

using Json = nlohmann::ordered_json;

/// Label points serialize as their label string, scalar points as numbers.
Json point_json(const PartialSbSpace& space, const Point& p);
Json points_json(const PartialSbSpace& space, const std::vector<Point>& points);

Json to_json(const PartialSbSpace& space, const AxiomReport& report);
Json to_json(const PartialSbSpace& space, const OpenBall& ball);
Json to_json(const FiniteTopology& topology);
Json to_json(const FiniteTopology& topology, const SeparationReport& report);
Json to_json(const FiniteTopology& topology, const ConnectednessResult& result);
Json to_json(const PartialSbSpace& space, const CoverFamily& family);
Json to_json(const ComparisonReport& report);
Json to_json(const PartialSbSpace& space, const CertificateReport& report);
Json to_json(const CaseTable& table);
Json to_json(const PartialSbSpace& space, const IterationTrace& trace);
Json to_json(const ConvergenceReport& report);

/// "k,a_k,gap_k" rows; the last orbit point has an empty gap.
std::string trace_csv(const PartialSbSpace& space, const IterationTrace& trace);

}  // namespace psbm
