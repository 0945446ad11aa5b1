#ifndef NEARLAP_LP_ORACLE_HPP
#define NEARLAP_LP_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "nearlap/errors.hpp"
#include "nearlap/matrix.hpp"

// Linear-programming route to the nearest-Laplacian problem, used as an
// independent optimality check at small n. The LP is solved by a dense
// two-phase tableau simplex with Bland's rule, which cannot cycle.

namespace nearlap {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LpRow {
  std::vector<double> coeffs;
  double rhs = 0;
};

struct VariableBounds {
  double lower = 0;
  double upper = kInf;
};

// minimize objective_coeffs . x + objective_constant
// subject to   equality_rows:   coeffs . x == rhs
//              inequality_rows: coeffs . x <= rhs
//              lower <= x <= upper
struct LpProblem {
  std::size_t num_vars = 0;
  std::vector<double> objective_coeffs;
  double objective_constant = 0;
  std::vector<LpRow> equality_rows;
  std::vector<LpRow> inequality_rows;
  std::vector<VariableBounds> variable_bounds;

  void validate() const {
    if (objective_coeffs.size() != num_vars) throw ValidationError("LP objective has wrong length");
    if (variable_bounds.size() != num_vars) throw ValidationError("LP bounds have wrong length");
    for (const auto* rows : {&equality_rows, &inequality_rows})
      for (const auto& r : *rows)
        if (r.coeffs.size() != num_vars) throw ValidationError("LP row has wrong length");
    for (const auto& b : variable_bounds) {
      if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower > b.upper)
        throw ValidationError("LP variable has inconsistent bounds");
      if (b.lower == kInf || b.upper == -kInf) throw ValidationError("LP variable bound is infinite on the wrong side");
    }
  }
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  double objective_value = 0;
  std::vector<double> variable_values;
  std::size_t iterations = 0;
};

inline constexpr double kPivotTol = 1e-11;
inline constexpr std::size_t kDefaultSimplexIterations = 200000;

namespace detail {

// Dense tableau over nonnegative columns. Row r of `a` holds the constraint
// coefficients followed by the right-hand side; `cost` holds reduced costs
// with the negated objective value in its last slot.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), cols_(cols), a_(rows * (cols + 1), 0.0), cost_(cols + 1, 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  // Reduced costs d = c - c_B B^{-1} A for the current basis.
  void price(const std::vector<double>& c) {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    std::copy(c.begin(), c.end(), cost_.begin());
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = c[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= cb * at(r, j);
    }
  }

  double objective() const { return -cost_[cols_]; }

  enum class Step { optimal, unbounded, pivoted };

  // One Bland iteration over columns with eligible[j] set.
  Step iterate(const std::vector<char>& eligible, double opt_tol) {
    std::size_t enter = cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (eligible[j] && cost_[j] < -opt_tol) {
        enter = j;
        break;
      }
    }
    if (enter == cols_) return Step::optimal;

    std::size_t leave = m_;
    double best = kInf;
    for (std::size_t r = 0; r < m_; ++r) {
      const double coef = at(r, enter);
      if (coef <= kPivotTol) continue;
      const double ratio = std::max(rhs(r), 0.0) / coef;
      if (leave == m_) {
        best = ratio;
        leave = r;
        continue;
      }
      // Ties within rounding go to the smallest basic column index.
      const double slack = 1e-12 * (1.0 + best);
      if (ratio < best - slack) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + slack && basis_[r] < basis_[leave]) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    if (leave == m_) return Step::unbounded;
    pivot(leave, enter);
    return Step::pivoted;
  }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t w = cols_ + 1;
    double* prow = &a_[r * w];
    const double inv = 1.0 / prow[c];
    for (std::size_t j = 0; j < w; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t k = 0; k < m_; ++k) {
      if (k == r) continue;
      double* row = &a_[k * w];
      const double f = row[c];
      if (f == 0) continue;
      for (std::size_t j = 0; j < w; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    const double f = cost_[c];
    if (f != 0) {
      for (std::size_t j = 0; j < w; ++j) cost_[j] -= f * prow[j];
      cost_[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Removes row r (used for redundant equality rows after phase one).
  void drop_row(std::size_t r) {
    const std::size_t w = cols_ + 1;
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r * w), a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * w));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
};

// x_k = offset + sign * y[col] (- y[neg_col] for free variables).
struct ColumnMap {
  double offset = 0;
  double sign = 1;
  std::size_t col = 0;
  std::size_t neg_col = static_cast<std::size_t>(-1);
};

}  // namespace detail

// Solves p to optimality or reports why it could not. Deterministic.
inline LpSolution simplex_solve(const LpProblem& p, std::size_t max_iters = kDefaultSimplexIterations) {
  p.validate();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Shift/reflect/split variables so every column is >= 0; finite upper
  // bounds on doubly-bounded variables become extra <= rows.
  std::vector<detail::ColumnMap> map(p.num_vars);
  std::size_t ny = 0;
  std::vector<std::pair<std::size_t, double>> upper_rows;  // (column, bound)
  for (std::size_t k = 0; k < p.num_vars; ++k) {
    const auto [lo, hi] = p.variable_bounds[k];
    auto& m = map[k];
    if (std::isfinite(lo)) {
      m = {lo, 1.0, ny++, kNone};
      if (std::isfinite(hi)) upper_rows.emplace_back(m.col, hi - lo);
    } else if (std::isfinite(hi)) {
      m = {hi, -1.0, ny++, kNone};
    } else {
      m = {0.0, 1.0, ny, ny + 1};
      ny += 2;
    }
  }

  struct StdRow {
    std::vector<double> coeffs;  // over y columns
    double rhs;
    bool equality;
  };
  std::vector<StdRow> rows;
  auto transform = [&](const LpRow& src, bool equality) {
    StdRow r{std::vector<double>(ny, 0.0), src.rhs, equality};
    for (std::size_t k = 0; k < p.num_vars; ++k) {
      const double c = src.coeffs[k];
      if (c == 0) continue;
      r.rhs -= c * map[k].offset;
      r.coeffs[map[k].col] += c * map[k].sign;
      if (map[k].neg_col != kNone) r.coeffs[map[k].neg_col] -= c;
    }
    rows.push_back(std::move(r));
  };
  for (const auto& r : p.equality_rows) transform(r, true);
  for (const auto& r : p.inequality_rows) transform(r, false);
  for (const auto& [col, bound] : upper_rows) {
    StdRow r{std::vector<double>(ny, 0.0), bound, false};
    r.coeffs[col] = 1.0;
    rows.push_back(std::move(r));
  }

  std::vector<double> cy(ny, 0.0);
  for (std::size_t k = 0; k < p.num_vars; ++k) {
    const double c = p.objective_coeffs[k];
    cy[map[k].col] += c * map[k].sign;
    if (map[k].neg_col != kNone) cy[map[k].neg_col] -= c;
  }

  // Column layout: [structural y | slacks | artificials].
  const std::size_t m = rows.size();
  std::size_t n_slack = 0;
  std::size_t n_art = 0;
  for (const auto& r : rows) {
    if (!r.equality) ++n_slack;
    if (r.equality || r.rhs < 0) ++n_art;
  }
  const std::size_t art0 = ny + n_slack;
  const std::size_t ncols = art0 + n_art;
  detail::Tableau tab(m, ncols);
  {
    std::size_t slack = ny;
    std::size_t art = art0;
    for (std::size_t r = 0; r < m; ++r) {
      const auto& src = rows[r];
      const double s = src.rhs < 0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < ny; ++j) tab.at(r, j) = s * src.coeffs[j];
      tab.rhs(r) = s * src.rhs;
      if (!src.equality) {
        tab.at(r, slack) = s;
        if (s > 0) tab.basis()[r] = slack;
        ++slack;
      }
      if (src.equality || src.rhs < 0) {
        tab.at(r, art) = 1.0;
        tab.basis()[r] = art;
        ++art;
      }
    }
  }

  double rhs_scale = 1.0;
  for (std::size_t r = 0; r < m; ++r) rhs_scale = std::max(rhs_scale, std::abs(tab.rhs(r)));
  double cost_scale = 1.0;
  for (double c : cy) cost_scale = std::max(cost_scale, std::abs(c));
  const double opt_tol = 1e-11 * cost_scale;

  LpSolution sol;
  std::size_t iters = 0;

  // Phase one: drive the artificials to zero.
  if (n_art > 0) {
    std::vector<double> c1(ncols, 0.0);
    for (std::size_t j = art0; j < ncols; ++j) c1[j] = 1.0;
    std::vector<char> eligible(ncols, 1);
    tab.price(c1);
    while (true) {
      if (iters >= max_iters) {
        sol.status = LpStatus::iteration_limit;
        sol.iterations = iters;
        return sol;
      }
      const auto step = tab.iterate(eligible, 1e-11);
      if (step != detail::Tableau::Step::pivoted) break;
      ++iters;
    }
    if (tab.objective() > 1e-9 * rhs_scale) {
      sol.status = LpStatus::infeasible;
      sol.iterations = iters;
      return sol;
    }
    // Pivot remaining (zero-valued) artificials out of the basis.
    for (std::size_t r = 0; r < tab.rows();) {
      if (tab.basis()[r] < art0) {
        ++r;
        continue;
      }
      std::size_t c = art0;
      double best = kPivotTol;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(tab.at(r, j)) > best) {
          best = std::abs(tab.at(r, j));
          c = j;
        }
      }
      if (c == art0) {
        tab.drop_row(r);
      } else {
        tab.pivot(r, c);
        ++r;
      }
    }
  }

  // Phase two on the structural and slack columns.
  std::vector<double> c2(ncols, 0.0);
  std::copy(cy.begin(), cy.end(), c2.begin());
  std::vector<char> eligible(ncols, 0);
  std::fill(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(art0), 1);
  tab.price(c2);
  while (true) {
    if (iters >= max_iters) {
      sol.status = LpStatus::iteration_limit;
      sol.iterations = iters;
      return sol;
    }
    const auto step = tab.iterate(eligible, opt_tol);
    if (step == detail::Tableau::Step::optimal) break;
    if (step == detail::Tableau::Step::unbounded) {
      sol.status = LpStatus::unbounded;
      sol.iterations = iters;
      return sol;
    }
    ++iters;
  }

  std::vector<double> y(ncols, 0.0);
  for (std::size_t r = 0; r < tab.rows(); ++r) y[tab.basis()[r]] = std::max(tab.rhs(r), 0.0);

  sol.status = LpStatus::optimal;
  sol.iterations = iters;
  sol.variable_values.resize(p.num_vars);
  for (std::size_t k = 0; k < p.num_vars; ++k) {
    const auto& mk = map[k];
    double x = mk.offset + mk.sign * y[mk.col];
    if (mk.neg_col != kNone) x -= y[mk.neg_col];
    sol.variable_values[k] = x;
  }
  double obj = p.objective_constant;
  for (std::size_t k = 0; k < p.num_vars; ++k) obj += p.objective_coeffs[k] * sol.variable_values[k];
  sol.objective_value = obj;
  return sol;
}

// Nearest-Laplacian LP with its variable-to-entry map.
struct Problem1Lp {
  LpProblem lp;
  std::size_t n = 0;
  std::vector<Edge> entries;  // entries[v] = (i, j) of L variable v; t variable of v is v + entries.size()
};

inline constexpr std::size_t kOracleMaxNodes = 30;

// Variables: L_ii >= 0 for every node, L_ij <= 0 for (i,j) in E, and one
// t >= 0 per L variable with t >= A_ij - L_ij and t >= L_ij - A_ij.
// Off-structure entries are fixed at zero and contribute |A_ij| as a constant.
inline Problem1Lp build_problem1_lp(const DenseMatrix& A, const EdgeSet& E) {
  if (A.n() != E.n()) throw DimensionError("matrix order does not match edge set");
  if (A.n() > kOracleMaxNodes) {
    throw ValidationError("LP oracle is limited to n <= " + std::to_string(kOracleMaxNodes) + ", got n = " +
                          std::to_string(A.n()));
  }
  A.require_finite();
  const std::size_t n = A.n();

  Problem1Lp out;
  out.n = n;
  double constant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || E.contains(i, j)) out.entries.emplace_back(i, j);
      else constant += std::abs(A(i, j));
    }
  }
  const std::size_t nl = out.entries.size();
  auto& lp = out.lp;
  lp.num_vars = 2 * nl;
  lp.objective_coeffs.assign(2 * nl, 0.0);
  lp.objective_constant = constant;
  lp.variable_bounds.resize(2 * nl);
  for (std::size_t v = 0; v < nl; ++v) {
    const auto [i, j] = out.entries[v];
    lp.variable_bounds[v] = (i == j) ? VariableBounds{0.0, kInf} : VariableBounds{-kInf, 0.0};
    lp.variable_bounds[nl + v] = VariableBounds{0.0, kInf};
    lp.objective_coeffs[nl + v] = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    LpRow row{std::vector<double>(2 * nl, 0.0), 0.0};
    for (std::size_t v = 0; v < nl; ++v)
      if (out.entries[v].first == i) row.coeffs[v] = 1.0;
    lp.equality_rows.push_back(std::move(row));
  }
  for (std::size_t v = 0; v < nl; ++v) {
    const auto [i, j] = out.entries[v];
    const double a = A(i, j);
    LpRow below{std::vector<double>(2 * nl, 0.0), -a};  // -L - t <= -a
    below.coeffs[v] = -1.0;
    below.coeffs[nl + v] = -1.0;
    LpRow above{std::vector<double>(2 * nl, 0.0), a};  // L - t <= a
    above.coeffs[v] = 1.0;
    above.coeffs[nl + v] = -1.0;
    lp.inequality_rows.push_back(std::move(below));
    lp.inequality_rows.push_back(std::move(above));
  }
  return out;
}

// Objective of the LP at the point whose L variables equal L (t set to |A - L|).
inline double problem1_objective_at(const Problem1Lp& p, const DenseMatrix& A, const DenseMatrix& L) {
  double obj = p.lp.objective_constant;
  for (const auto& [i, j] : p.entries) obj += std::abs(A(i, j) - L(i, j));
  return obj;
}

inline DenseMatrix reconstruct_laplacian(const Problem1Lp& p, const LpSolution& s) {
  if (s.variable_values.size() != p.lp.num_vars) throw DimensionError("LP solution has wrong length");
  DenseMatrix L(p.n);
  for (std::size_t v = 0; v < p.entries.size(); ++v) {
    const auto [i, j] = p.entries[v];
    L(i, j) = s.variable_values[v];
  }
  return L;
}

inline double oracle_optimum(const DenseMatrix& A, const EdgeSet& E,
                             std::size_t max_iters = kDefaultSimplexIterations) {
  const auto p = build_problem1_lp(A, E);
  const auto s = simplex_solve(p.lp, max_iters);
  if (s.status != LpStatus::optimal) {
    throw NumericalError(std::string("LP oracle did not reach an optimum: ") + to_string(s.status));
  }
  return s.objective_value;
}

}  // namespace nearlap

#endif  // NEARLAP_LP_ORACLE_HPP
