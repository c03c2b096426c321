#include "psbm/search.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "psbm/axioms.hpp"

namespace psbm {

std::vector<PartialSbSpace> find_valid_tables(std::size_t points, std::size_t wanted,
                                              std::uint64_t seed, std::size_t max_attempts,
                                              TableSearchStats* stats) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng](int lo, int hi) {
    return static_cast<double>(lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)));
  };
  const std::size_t n = points;
  FiniteList list;
  for (std::size_t i = 0; i < n; ++i) {
    list.points.push_back(Point::label(i));
    list.labels.push_back(std::to_string(i + 1));
  }

  std::vector<PartialSbSpace> found;
  TableSearchStats local;
  while (found.size() < wanted && local.attempts < max_attempts) {
    ++local.attempts;
    std::vector<double> self(n);
    for (auto& s : self) s = draw(0, 6);
    std::vector<double> values(n * n * n);
    auto at = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (i == j && j == k) {
            values[at(i, j, k)] = self[i];
          } else if (i == j && k < i) {
            values[at(i, j, k)] = values[at(k, k, i)];  // paired entries are symmetric
          } else {
            values[at(i, j, k)] = std::max({self[i], self[j], self[k]}) + draw(0, 4);
          }
        }
      }
    }
    PartialSbSpace space("random-" + std::to_string(local.attempts), list,
                         TripleMetric::tabulated(n, std::move(values)), 1.0);
    if (check_axioms(space, AxiomSet::PartialSb, QuadrupleSource::exhaustive()).passed) {
      ++local.accepted;
      found.push_back(std::move(space));
    }
  }
  if (stats) *stats = local;
  return found;
}

}  // namespace psbm
