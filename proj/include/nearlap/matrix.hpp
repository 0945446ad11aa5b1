#ifndef NEARLAP_MATRIX_HPP
#define NEARLAP_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nearlap/errors.hpp"

namespace nearlap {

// Dense allocation is refused above this node count (16384^2 doubles = 2 GiB).
inline constexpr std::size_t kMaxDenseNodes = 16384;

// Square n x n matrix, row-major.
template <std::floating_point T>
class BasicDenseMatrix {
 public:
  using value_type = T;

  BasicDenseMatrix() = default;

  // Zero matrix.
  explicit BasicDenseMatrix(std::size_t n) : n_(n) {
    check_size(n);
    entries_.assign(n * n, T{0});
  }

  // Takes ownership of row-major entries; rejects wrong length and non-finite values.
  BasicDenseMatrix(std::size_t n, std::vector<T> entries) : n_(n), entries_(std::move(entries)) {
    check_size(n);
    if (entries_.size() != n * n) {
      throw DimensionError("matrix of order " + std::to_string(n) + " needs " +
                           std::to_string(n * n) + " entries, got " +
                           std::to_string(entries_.size()));
    }
    require_finite();
  }

  BasicDenseMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    check_size(n_);
    entries_.reserve(n_ * n_);
    for (const auto& r : rows) {
      if (r.size() != n_) throw DimensionError("matrix literal is not square");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
    require_finite();
  }

  std::size_t n() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }

  std::span<T> row(std::size_t i) noexcept { return {entries_.data() + i * n_, n_}; }
  std::span<const T> row(std::size_t i) const noexcept { return {entries_.data() + i * n_, n_}; }

  std::span<const T> entries() const noexcept { return entries_; }
  std::span<T> entries() noexcept { return entries_; }

  T max_abs() const noexcept {
    T m{0};
    for (T v : entries_) m = std::max(m, std::abs(v));
    return m;
  }

  // Entrywise 2-norm.
  T frobenius_norm() const noexcept {
    T s{0};
    for (T v : entries_) s += v * v;
    return std::sqrt(s);
  }

  bool all_finite() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](T v) { return std::isfinite(v); });
  }

  void require_finite() const {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (!std::isfinite(entries_[k])) {
        throw ValidationError("non-finite entry at (" + std::to_string(k / n_) + ", " +
                              std::to_string(k % n_) + ")");
      }
    }
  }

  friend bool operator==(const BasicDenseMatrix&, const BasicDenseMatrix&) = default;

 private:
  static void check_size(std::size_t n) {
    if (n > kMaxDenseNodes) {
      throw ValidationError("matrix order " + std::to_string(n) + " exceeds dense cap " +
                            std::to_string(kMaxDenseNodes));
    }
  }

  std::size_t n_ = 0;
  std::vector<T> entries_;
};

using DenseMatrix = BasicDenseMatrix<double>;

using Edge = std::pair<std::size_t, std::size_t>;

// Directed edge structure over n >= 2 nodes. Edges are unique, sorted, loop-free.
class EdgeSet {
 public:
  EdgeSet() = default;

  EdgeSet(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 2) throw ValidationError("edge set needs at least 2 nodes, got " + std::to_string(n));
    if (n > kMaxDenseNodes) {
      throw ValidationError("node count " + std::to_string(n) + " exceeds cap " +
                            std::to_string(kMaxDenseNodes));
    }
    for (const auto& [i, j] : edges_) {
      if (i >= n || j >= n) {
        throw ValidationError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") out of range for n = " + std::to_string(n));
      }
      if (i == j) throw ValidationError("self-loop (" + std::to_string(i) + ", " + std::to_string(i) + ")");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    member_.assign(n * n, false);
    for (const auto& [i, j] : edges_) member_[i * n + j] = true;
  }

  static EdgeSet complete(std::size_t n) {
    std::vector<Edge> e;
    e.reserve(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) e.emplace_back(i, j);
    return EdgeSet(n, std::move(e));
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool contains(std::size_t i, std::size_t j) const noexcept {
    return i < n_ && j < n_ && member_[i * n_ + j];
  }

  bool is_symmetric() const noexcept {
    return std::all_of(edges_.begin(), edges_.end(),
                       [this](const Edge& e) { return contains(e.second, e.first); });
  }

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<bool> member_;
};

inline constexpr double kDefaultTolRel = 1e-9;
inline constexpr double kDefaultTolAbs = 1e-12;

struct LaplacianCheckReport {
  double row_sum_residual = 0;     // max_i |sum_j L_ij|
  double sign_violation = 0;       // max magnitude of L_ii < 0 or L_ij > 0
  double structure_violation = 0;  // max |L_ij| over off-diagonal (i,j) not in E
  bool is_valid = false;
};

// Residuals of L against the Laplacian conditions (zero row sums, sign
// pattern, support inside E). Row sums accumulate in ascending column order.
template <std::floating_point T>
LaplacianCheckReport validate_laplacian(const BasicDenseMatrix<T>& L, const EdgeSet& E,
                                        double tol_rel = kDefaultTolRel,
                                        double tol_abs = kDefaultTolAbs) {
  if (L.n() != E.n()) {
    throw DimensionError("matrix order " + std::to_string(L.n()) + " does not match edge set n = " +
                         std::to_string(E.n()));
  }
  LaplacianCheckReport r;
  const std::size_t n = L.n();
  double scale = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = L.row(i);
    T sum{0};
    for (std::size_t j = 0; j < n; ++j) {
      const T v = row[j];
      sum += v;
      scale = std::max(scale, static_cast<double>(std::abs(v)));
      if (i == j) {
        if (v < 0) r.sign_violation = std::max(r.sign_violation, static_cast<double>(-v));
      } else {
        if (v > 0) r.sign_violation = std::max(r.sign_violation, static_cast<double>(v));
        if (v != 0 && !E.contains(i, j))
          r.structure_violation = std::max(r.structure_violation, static_cast<double>(std::abs(v)));
      }
    }
    r.row_sum_residual = std::max(r.row_sum_residual, static_cast<double>(std::abs(sum)));
  }
  const double tol = tol_abs + tol_rel * scale;
  r.is_valid = r.row_sum_residual <= tol && r.sign_violation <= tol && r.structure_violation <= tol;
  return r;
}

// L = D - W for nonnegative weights W supported on E (diagonal of W ignored).
// The diagonal is accumulated in ascending column order so that L_ii equals
// -sum_{j != i} L_ij bit-for-bit under the same accumulation.
template <std::floating_point T>
BasicDenseMatrix<T> laplacian_from_weights(const BasicDenseMatrix<T>& W, const EdgeSet& E) {
  if (W.n() != E.n()) throw DimensionError("weight matrix order does not match edge set");
  const std::size_t n = W.n();
  BasicDenseMatrix<T> L(n);
  for (std::size_t i = 0; i < n; ++i) {
    T degree{0};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !E.contains(i, j)) continue;
      const T w = W(i, j);
      if (w < 0) throw ValidationError("negative weight at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      L(i, j) = -w;
      degree += w;
    }
    L(i, i) = degree;
  }
  return L;
}

}  // namespace nearlap

#endif  // NEARLAP_MATRIX_HPP
