#pragma once

// Re-checks a floating-point simplex basis in exact rational arithmetic.
// Input coefficients are converted from double exactly, so a passing check
// certifies the basis is optimal for the program as stored.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

#include "wnc/lp.hpp"

namespace wnc {

using Rational = boost::multiprecision::cpp_rational;

struct ExactCheck {
  bool basis_valid = false;     // basic columns form a nonsingular basis
  bool primal_feasible = false; // B^-1 b >= 0, artificials at zero
  bool dual_feasible = false;   // no improving column (optimality)
  Rational objective{0};
  std::vector<Rational> solution;

  bool optimal() const { return basis_valid && primal_feasible && dual_feasible; }
};

inline ExactCheck verify_exact(const LinearProgram& p, const LpOutcome& outcome) {
  ExactCheck check;
  const auto rows = detail::standardize(p);
  detail::Tableau<Rational> tab(p, rows, Rational(0));
  if (outcome.basis.size() != tab.rows()) return check;

  // Gauss-Jordan into the recorded basic columns.
  std::vector<bool> placed(tab.rows(), false);
  for (int col : outcome.basis) {
    const auto c = static_cast<std::size_t>(col);
    if (c >= tab.cols()) return check;
    std::size_t r = tab.rows();
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (!placed[i] && tab.at(i, c) != 0) {
        r = i;
        break;
      }
    }
    if (r == tab.rows()) return check;
    tab.pivot(r, c);
    placed[r] = true;
  }
  check.basis_valid = true;

  check.primal_feasible = true;
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (tab.rhs(i) < 0) check.primal_feasible = false;
    if (tab.is_artificial(static_cast<std::size_t>(tab.basis()[i])) && tab.rhs(i) != 0)
      check.primal_feasible = false;
  }

  tab.price(tab.phase_two_costs());
  check.dual_feasible = true;
  for (std::size_t j = 0; j < tab.cols(); ++j)
    if (!tab.is_artificial(j) && tab.reduced_cost(j) < 0) check.dual_feasible = false;

  check.solution.assign(p.variable_count(), Rational(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    const auto col = static_cast<std::size_t>(tab.basis()[i]);
    if (col < p.variable_count()) check.solution[col] = tab.rhs(i);
  }
  check.objective = tab.objective();
  return check;
}

}  // namespace wnc
