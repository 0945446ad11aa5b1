#ifndef NEARLAP_PROJECTION_HPP
#define NEARLAP_PROJECTION_HPP

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "nearlap/errors.hpp"
#include "nearlap/matrix.hpp"

// Nearest graph Laplacian in the entrywise 1-norm under a fixed edge
// structure E:
//
//   minimize ||A - L||_1  s.t.  L 1 = 0,  L_ii >= 0,  L_ij <= 0 (i != j),
//                               L_ij = 0 for (i,j) not in E, i != j.
//
// Clip A onto the sign/structure set, then reset each diagonal to minus the
// sum of its row's off-diagonals. With alpha_i the row sums of the clipped
// matrix, ||clip(A) - L||_1 = sum_i |alpha_i|, and every feasible point is at
// least that far from clip(A), which makes the result a global optimum. The
// optimum is not unique; this returns the diagonal-adjusted representative.

namespace nearlap {

template <std::floating_point T>
struct BasicProjectionResult {
  BasicDenseMatrix<T> L;
  std::vector<T> alpha;     // row sums of the clipped matrix, before the diagonal reset
  T objective{0};           // ||A - L||_1
  T relaxed_objective{0};   // ||A - clip(A)||_1
};

using ProjectionResult = BasicProjectionResult<double>;

namespace detail {

template <std::floating_point T>
void require_same_order(const BasicDenseMatrix<T>& A, const EdgeSet& E) {
  if (A.n() != E.n()) {
    throw DimensionError("matrix order " + std::to_string(A.n()) + " does not match edge set n = " +
                         std::to_string(E.n()));
  }
}

template <std::floating_point T>
inline T clip_entry(T a, std::size_t i, std::size_t j, const EdgeSet& E) {
  if (i == j) return a < 0 ? T{0} : a;
  if (!E.contains(i, j)) return T{0};
  return a > 0 ? T{0} : a;
}

}  // namespace detail

// Entrywise projection onto {L_ii >= 0, L_ij <= 0 on E, L_ij = 0 off E}.
template <std::floating_point T>
BasicDenseMatrix<T> project_s1_s2(const BasicDenseMatrix<T>& A, const EdgeSet& E) {
  detail::require_same_order(A, E);
  const std::size_t n = A.n();
  BasicDenseMatrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = A.row(i);
    auto dst = out.row(i);
    for (std::size_t j = 0; j < n; ++j) dst[j] = detail::clip_entry(src[j], i, j, E);
  }
  return out;
}

// sum_ij |A_ij - B_ij|, accumulated in row-major order.
template <std::floating_point T>
T l1_distance(const BasicDenseMatrix<T>& A, const BasicDenseMatrix<T>& B) {
  if (A.n() != B.n()) throw DimensionError("l1_distance: matrices differ in order");
  const auto a = A.entries();
  const auto b = B.entries();
  T sum{0};
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::abs(a[k] - b[k]);
  return sum;
}

template <std::floating_point T>
BasicProjectionResult<T> nearest_laplacian(const BasicDenseMatrix<T>& A, const EdgeSet& E) {
  detail::require_same_order(A, E);
  A.require_finite();
  const std::size_t n = A.n();

  BasicProjectionResult<T> r{BasicDenseMatrix<T>(n), std::vector<T>(n), T{0}, T{0}};
  // Rows are independent; one pass per row keeps only A and L resident.
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = A.row(i);
    auto dst = r.L.row(i);
    T off_sum{0};
    for (std::size_t j = 0; j < n; ++j) {
      const T v = detail::clip_entry(src[j], i, j, E);
      dst[j] = v;
      if (j != i) off_sum += v;
      r.relaxed_objective += std::abs(src[j] - v);
    }
    r.alpha[i] = dst[i] + off_sum;
    dst[i] = T{0} - off_sum;
  }
  r.objective = l1_distance(A, r.L);
  return r;
}

}  // namespace nearlap

#endif  // NEARLAP_PROJECTION_HPP
