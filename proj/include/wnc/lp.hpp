#pragma once

// Dense two-phase primal simplex with Bland's rule.
//
//   maximize c.x  subject to  a_k.x (<=|=|>=) b_k,  x >= 0
//
// Sized for desk-scale programs (a few hundred rows/columns). The tableau is
// templated on the scalar so lp_exact.hpp can replay a basis in rationals.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wnc/error.hpp"

namespace wnc {

enum class Relation { less_equal, equal, greater_equal };

struct Constraint {
  std::vector<double> coefficients;
  Relation relation = Relation::less_equal;
  double bound = 0.0;
};

struct LinearProgram {
  std::vector<double> objective;  // maximized
  std::vector<Constraint> constraints;

  std::size_t variable_count() const { return objective.size(); }

  void add(std::vector<double> coefficients, Relation rel, double bound) {
    constraints.push_back({std::move(coefficients), rel, bound});
  }

  void validate() const {
    for (double c : objective)
      if (!std::isfinite(c)) throw ValidationError("LP objective coefficient is not finite");
    for (std::size_t k = 0; k < constraints.size(); ++k) {
      const auto& row = constraints[k];
      if (row.coefficients.size() != variable_count())
        throw ValidationError("LP row " + std::to_string(k) + " has wrong length");
      if (!std::isfinite(row.bound))
        throw ValidationError("LP row " + std::to_string(k) + " bound is not finite");
      for (double a : row.coefficients)
        if (!std::isfinite(a))
          throw ValidationError("LP row " + std::to_string(k) + " coefficient is not finite");
    }
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  double objective_value = 0.0;
  std::vector<double> solution;  // length = variable count
  // One dual value per input constraint (y >= 0 for <=, y <= 0 for >=, free
  // for =). Filled only when optimal.
  std::vector<double> duals;
  // Final basic column per internal tableau row (see lp_exact.hpp).
  std::vector<int> basis;
};

struct SolverOptions {
  double tolerance = 1e-9;
  std::ostream* dump = nullptr;  // final tableau as text, for debugging
};

namespace detail {

// Standard form after presolve: every row has b >= 0 and relation <= or >=.
struct StandardRow {
  std::size_t source = 0;  // index into LinearProgram::constraints
  double sign = 1.0;       // internal row = sign * source row
  bool at_least = false;   // >= after normalisation
};

inline std::vector<StandardRow> standardize(const LinearProgram& p) {
  std::vector<StandardRow> rows;
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    const auto& c = p.constraints[k];
    bool duplicate = false;
    for (std::size_t j = 0; j < k && !duplicate; ++j) {
      const auto& o = p.constraints[j];
      duplicate = o.relation == c.relation && o.bound == c.bound && o.coefficients == c.coefficients;
    }
    if (duplicate) continue;
    auto push = [&](bool at_least) {
      StandardRow r{k, 1.0, at_least};
      if (c.bound < 0.0) {
        r.sign = -1.0;
        r.at_least = !at_least;
      }
      rows.push_back(r);
    };
    if (c.relation != Relation::greater_equal) push(false);
    if (c.relation != Relation::less_equal) push(true);
  }
  return rows;
}

// Columns: [structural | one slack/surplus per row | one artificial per >= row].
template <class T>
class Tableau {
 public:
  Tableau(const LinearProgram& p, const std::vector<StandardRow>& rows, T tol)
      : rows_(rows), tol_(tol), n_(p.variable_count()) {
    const std::size_t m = rows.size();
    std::size_t artificials = 0;
    for (const auto& r : rows) artificials += r.at_least ? 1 : 0;
    cols_ = n_ + m + artificials;
    a_.assign(m, std::vector<T>(cols_ + 1, T(0)));
    basis_.assign(m, 0);
    unit_col_.assign(m, 0);
    artificial_.assign(cols_, false);
    cost_.assign(cols_, T(0));
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = T(p.objective[j]);

    std::size_t next_art = n_ + m;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& src = p.constraints[rows[i].source];
      const T sign(rows[i].sign);
      for (std::size_t j = 0; j < n_; ++j) a_[i][j] = sign * T(src.coefficients[j]);
      a_[i][cols_] = sign * T(src.bound);
      if (rows[i].at_least) {
        a_[i][n_ + i] = T(-1);
        a_[i][next_art] = T(1);
        artificial_[next_art] = true;
        unit_col_[i] = next_art;
        basis_[i] = static_cast<int>(next_art);
        ++next_art;
      } else {
        a_[i][n_ + i] = T(1);
        unit_col_[i] = n_ + i;
        basis_[i] = static_cast<int>(n_ + i);
      }
    }
  }

  std::size_t rows() const { return a_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t structural() const { return n_; }
  bool is_artificial(std::size_t j) const { return artificial_[j]; }
  bool has_artificials() const { return std::find(artificial_.begin(), artificial_.end(), true) != artificial_.end(); }
  const std::vector<int>& basis() const { return basis_; }
  const T& at(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const T& rhs(std::size_t i) const { return a_[i][cols_]; }
  const T& reduced_cost(std::size_t j) const { return z_[j]; }
  const T& objective() const { return z_[cols_]; }
  std::size_t unit_column(std::size_t i) const { return unit_col_[i]; }

  // z_j = c_B B^-1 A_j - c_j for the given costs.
  void price(const std::vector<T>& costs) {
    z_.assign(cols_ + 1, T(0));
    for (std::size_t j = 0; j <= cols_; ++j) {
      T s(0);
      for (std::size_t i = 0; i < rows(); ++i) {
        const T& cb = costs[static_cast<std::size_t>(basis_[i])];
        if (cb != T(0)) s += cb * a_[i][j];
      }
      z_[j] = j < cols_ ? s - costs[j] : s;
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const T inv = T(1) / a_[r][c];
    for (auto& v : a_[r]) v *= inv;
    a_[r][c] = T(1);
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || a_[i][c] == T(0)) continue;
      const T f = a_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j) a_[i][j] -= f * a_[r][j];
      a_[i][c] = T(0);
    }
    if (!z_.empty() && z_[c] != T(0)) {
      const T f = z_[c];
      for (std::size_t j = 0; j <= cols_; ++j) z_[j] -= f * a_[r][j];
      z_[c] = T(0);
    }
    basis_[r] = static_cast<int>(c);
  }

  enum class Run { optimal, unbounded };

  // Bland: lowest-index improving column; ratio ties go to the lowest basic
  // column index.
  Run iterate(bool block_artificials, std::size_t max_pivots) {
    for (std::size_t it = 0; it < max_pivots; ++it) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (block_artificials && artificial_[j]) continue;
        if (z_[j] < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return Run::optimal;

      std::size_t leave = rows();
      T best(0);
      for (std::size_t i = 0; i < rows(); ++i) {
        const T& e = a_[i][enter];
        if (!(e > tol_)) continue;
        const T ratio = a_[i][cols_] / e;
        if (leave == rows() || ratio < best - tol_) {
          best = ratio;
          leave = i;
        } else if (!(ratio > best + tol_) && basis_[i] < basis_[leave]) {
          if (ratio < best) best = ratio;
          leave = i;
        }
      }
      if (leave == rows()) return Run::unbounded;
      pivot(leave, enter);
    }
    throw SolverError("simplex exceeded its pivot budget (numerical breakdown)");
  }

  void dump(std::ostream& os) const {
    os << std::setprecision(6);
    os << "basis |";
    for (std::size_t j = 0; j < cols_; ++j) os << ' ' << std::setw(10) << j;
    os << " |        rhs\n";
    for (std::size_t i = 0; i < rows(); ++i) {
      os << std::setw(5) << basis_[i] << " |";
      for (std::size_t j = 0; j < cols_; ++j) os << ' ' << std::setw(10) << a_[i][j];
      os << " | " << std::setw(10) << a_[i][cols_] << '\n';
    }
    os << "    z |";
    for (std::size_t j = 0; j < cols_; ++j) os << ' ' << std::setw(10) << z_[j];
    os << " | " << std::setw(10) << z_[cols_] << '\n';
  }

  std::vector<T> phase_one_costs() const {
    std::vector<T> c(cols_, T(0));
    for (std::size_t j = 0; j < cols_; ++j)
      if (artificial_[j]) c[j] = T(-1);
    return c;
  }
  const std::vector<T>& phase_two_costs() const { return cost_; }

 private:
  std::vector<StandardRow> rows_;
  T tol_;
  std::size_t n_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<T>> a_;
  std::vector<T> z_;
  std::vector<int> basis_;
  std::vector<std::size_t> unit_col_;
  std::vector<bool> artificial_;
  std::vector<T> cost_;
};

inline double row_norm(const Constraint& c) {
  double m = std::abs(c.bound);
  for (double a : c.coefficients) m = std::max(m, std::abs(a));
  return std::max(1.0, m);
}

}  // namespace detail

/// Largest violation of any constraint (or of x >= 0), each scaled by the
/// row's max-norm.
inline double max_violation(const LinearProgram& p, const std::vector<double>& x) {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (const auto& c : p.constraints) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coefficients[j] * x[j];
    double v = 0.0;
    if (c.relation != Relation::greater_equal) v = std::max(v, lhs - c.bound);
    if (c.relation != Relation::less_equal) v = std::max(v, c.bound - lhs);
    worst = std::max(worst, v / detail::row_norm(c));
  }
  return worst;
}

inline LpOutcome solve_lp(const LinearProgram& p, const SolverOptions& opt = {}) {
  p.validate();
  const auto rows = detail::standardize(p);
  detail::Tableau<double> tab(p, rows, opt.tolerance);
  const std::size_t budget = 1000 + 200 * (tab.rows() + tab.cols());

  LpOutcome out;
  out.solution.assign(p.variable_count(), 0.0);

  if (tab.has_artificials()) {
    tab.price(tab.phase_one_costs());
    tab.iterate(false, budget);
    if (tab.objective() < -opt.tolerance * static_cast<double>(std::max<std::size_t>(1, tab.rows()))) {
      out.status = LpStatus::infeasible;
      out.basis = tab.basis();
      if (opt.dump) tab.dump(*opt.dump);
      return out;
    }
    // Drive zero-level artificials out where a real column can replace them.
    // Rows with no such column are redundant and stay inert.
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (!tab.is_artificial(static_cast<std::size_t>(tab.basis()[i]))) continue;
      for (std::size_t j = 0; j < tab.cols(); ++j) {
        if (!tab.is_artificial(j) && std::abs(tab.at(i, j)) > opt.tolerance) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  tab.price(tab.phase_two_costs());
  const auto run = tab.iterate(true, budget);
  out.basis = tab.basis();
  if (opt.dump) tab.dump(*opt.dump);
  if (run == detail::Tableau<double>::Run::unbounded) {
    out.status = LpStatus::unbounded;
    return out;
  }

  out.status = LpStatus::optimal;
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    const auto col = static_cast<std::size_t>(tab.basis()[i]);
    if (col < p.variable_count()) out.solution[col] = std::max(0.0, tab.rhs(i));
  }
  out.objective_value = 0.0;
  for (std::size_t j = 0; j < p.variable_count(); ++j)
    out.objective_value += p.objective[j] * out.solution[j];

  out.duals.assign(p.constraints.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.duals[rows[i].source] += rows[i].sign * tab.reduced_cost(tab.unit_column(i));

  const double viol = max_violation(p, out.solution);
  if (viol > 1e3 * opt.tolerance) {
    throw SolverError("simplex returned a point violating the constraints by " +
                      std::to_string(viol) + " (numerical breakdown)");
  }
  return out;
}

}  // namespace wnc
