#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "psbm/space.hpp"
#include "psbm/topology.hpp"

namespace testing {

inline psbm::PartialSbSpace table_space(std::vector<std::string> labels, std::vector<double> values,
                                        double t = 1.0) {
  std::vector<psbm::Point> pts;
  for (std::size_t i = 0; i < labels.size(); ++i) pts.push_back(psbm::Point::label(i));
  const auto n = labels.size();
  return psbm::PartialSbSpace("table", psbm::FiniteList{pts, std::move(labels)},
                              psbm::TripleMetric::tabulated(n, std::move(values)), t);
}

inline psbm::PartialSbSpace one_point() { return table_space({"x"}, {0.0}); }

inline std::vector<std::string> names(const psbm::PartialSbSpace& space,
                                      const std::vector<psbm::Point>& pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(space.display(p));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<std::string>> opens(const psbm::FiniteTopology& t) {
  std::vector<std::vector<std::string>> out;
  for (auto s : t.opens) {
    std::vector<std::string> set;
    for (auto i : s.indices()) set.push_back(t.labels[i]);
    out.push_back(set);
  }
  return out;
}

inline std::vector<psbm::Point> scalars(std::initializer_list<double> xs) {
  std::vector<psbm::Point> out;
  for (double x : xs) out.push_back(psbm::Point::scalar(x));
  return out;
}

}  // namespace testing
