#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace wptv::detail {

// Deterministic grid reductions: each row is accumulated serially left to
// right by whichever thread owns it, and the row partials are folded in row
// order on one thread. Results do not depend on the thread count.

template <class RowPartial>
double sum_rows(int rows, RowPartial&& partial) {
  std::vector<double> part(static_cast<std::size_t>(rows), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < rows; ++i) part[static_cast<std::size_t>(i)] = partial(i);
  double total = 0.0;
  for (int i = 0; i < rows; ++i) total += part[static_cast<std::size_t>(i)];
  return total;
}

template <std::size_t K, class RowPartial>
std::array<double, K> sum_rows_multi(int rows, RowPartial&& partial) {
  std::vector<std::array<double, K>> part(static_cast<std::size_t>(rows));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < rows; ++i) part[static_cast<std::size_t>(i)] = partial(i);
  std::array<double, K> total{};
  for (int i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < K; ++k)
      total[k] += part[static_cast<std::size_t>(i)][k];
  }
  return total;
}

}  // namespace wptv::detail
