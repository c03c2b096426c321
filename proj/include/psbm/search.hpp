#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "psbm/space.hpp"

namespace psbm {

struct TableSearchStats {
  std::size_t attempts = 0;
  std::size_t accepted = 0;
};

/// Draws random integer tables on `points` labels (self-distances in [0,6],
/// mixed entries at least the largest self-distance involved plus [0,4],
/// symmetric in the paired entries) and keeps those passing
/// check_axioms(PartialSb, exhaustive) with t = 1. Stops after `wanted`
/// acceptances or `max_attempts` draws. Deterministic in `seed`.
std::vector<PartialSbSpace> find_valid_tables(std::size_t points, std::size_t wanted,
                                              std::uint64_t seed, std::size_t max_attempts,
                                              TableSearchStats* stats = nullptr);

}  // namespace psbm
