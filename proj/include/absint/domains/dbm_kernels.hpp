#pragma once

// Shortest-path closure kernels for difference-bound matrices.
//
// m is row-major n x n; m[i*n + j] bounds v_i - v_j. Both kernels perform
// the same Floyd-Warshall relaxation (row k is snapshotted and m[i][k] is
// read once per row), so their results are bitwise identical; the serial
// one is the reference the parallel one is tested against.

#include <cstddef>
#include <span>

#include "absint/domains/bound.hpp"

namespace absint::domains::dbm_kernels {

// Returns false when the constraints have a negative cycle.
bool close_serial(std::span<Bound> m, std::size_t n);
bool close_parallel(std::span<Bound> m, std::size_t n);

// Below this dimension the parallel kernel loses to thread start-up.
inline constexpr std::size_t parallel_threshold = 96;

inline bool close(std::span<Bound> m, std::size_t n) {
  return n >= parallel_threshold ? close_parallel(m, n) : close_serial(m, n);
}

}  // namespace absint::domains::dbm_kernels
