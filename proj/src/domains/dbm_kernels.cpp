#include "absint/domains/dbm_kernels.hpp"

#include <vector>

namespace absint::domains::dbm_kernels {

namespace {

inline void relax_row(Bound* row, const Bound* row_k, std::size_t n, std::size_t k) {
  const Bound ik = row[k];
  if (ik.is_plus_infinity()) return;
  for (std::size_t j = 0; j < n; ++j) {
    if (row_k[j].is_plus_infinity()) continue;
    Bound via = ik + row_k[j];
    if (via < row[j]) row[j] = via;
  }
}

bool finish(std::span<Bound> m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    Bound& d = m[i * n + i];
    if (d < 0) return false;
    d = 0;
  }
  return true;
}

}  // namespace

bool close_serial(std::span<Bound> m, std::size_t n) {
  std::vector<Bound> row_k(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::copy(m.begin() + k * n, m.begin() + (k + 1) * n, row_k.begin());
    for (std::size_t i = 0; i < n; ++i) relax_row(&m[i * n], row_k.data(), n, k);
  }
  return finish(m, n);
}

bool close_parallel(std::span<Bound> m, std::size_t n) {
  std::vector<Bound> row_k(n);
  const auto rows = static_cast<long>(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::copy(m.begin() + k * n, m.begin() + (k + 1) * n, row_k.begin());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < rows; ++i) relax_row(&m[static_cast<std::size_t>(i) * n], row_k.data(), n, k);
  }
  return finish(m, n);
}

}  // namespace absint::domains::dbm_kernels
