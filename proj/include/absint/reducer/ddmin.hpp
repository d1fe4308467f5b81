#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace absint::reducer {

// Sorted indices into the unit list.
using Subset = std::vector<std::size_t>;
// Must be deterministic. Called concurrently when parallel probing is on.
using SubsetOracle = std::function<bool(const Subset&)>;

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DdminOptions {
  // Probe the candidates of one round concurrently. The first interesting
  // candidate in index order wins, so the result equals the serial run.
  bool parallel = false;
};

struct DdminResult {
  Subset units;
  bool reducible = true;        // false when only the full set is interesting
  std::size_t oracle_calls = 0; // distinct subsets evaluated
};

// Classic ddmin over units 0..n-1. Throws ReductionError("initial input not
// interesting") when oracle(full) is false. The result satisfies the oracle
// and is 1-minimal.
DdminResult ddmin(std::size_t n, const SubsetOracle& oracle, const DdminOptions& opts = {});

}  // namespace absint::reducer
