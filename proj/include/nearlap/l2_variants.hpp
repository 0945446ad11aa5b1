#ifndef NEARLAP_L2_VARIANTS_HPP
#define NEARLAP_L2_VARIANTS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nearlap/errors.hpp"

// Closed forms for the squared 2-norm objective.
//
// Without sign constraints, the nearest zero-sum vector to a is a minus its
// mean. For one row of a complete graph with a already sign-feasible, that
// closed form keeps the sign pattern only when the row sum is nonnegative;
// for a negative row sum it can push off-diagonals positive, and no simple
// per-row formula exists. Callers see that case as applicable == false.

namespace nearlap {

struct RowSolution {
  std::vector<double> values;  // empty when !applicable
  bool applicable = false;
};

// argmin_x sum (x_j - a_j)^2 subject to sum x_j = 0.
inline std::vector<double> zero_sum_projection(std::span<const double> a) {
  if (a.empty()) throw ValidationError("zero_sum_projection: empty input");
  double sum = 0;
  for (double v : a) sum += v;
  const double mean = sum / static_cast<double>(a.size());
  std::vector<double> x(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) x[j] = a[j] - mean;
  return x;
}

// 2-norm nearest Laplacian row for a complete graph. Requires
// a_row[i] >= 0 and a_row[j] <= 0 for j != i.
inline RowSolution complete_graph_l2_row(std::span<const double> a_row, std::size_t i) {
  if (a_row.empty()) throw ValidationError("complete_graph_l2_row: empty row");
  if (i >= a_row.size()) {
    throw ValidationError("complete_graph_l2_row: row index " + std::to_string(i) + " out of range");
  }
  for (std::size_t j = 0; j < a_row.size(); ++j) {
    const bool bad = (j == i) ? !(a_row[j] >= 0) : !(a_row[j] <= 0);
    if (bad) {
      throw ValidationError("complete_graph_l2_row: entry " + std::to_string(j) +
                            " violates the Laplacian sign pattern");
    }
  }
  double sum = 0;
  for (double v : a_row) sum += v;
  if (sum < 0) return {};
  return {zero_sum_projection(a_row), true};
}

}  // namespace nearlap

#endif  // NEARLAP_L2_VARIANTS_HPP
