#pragma once

#include <vector>

#include "basis_factor.hpp"
#include "potts_forge/milp.hpp"

namespace potts_forge::detail {

enum class VarStatus : unsigned char { Basic, AtLower, AtUpper, FreeZero };

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

/// Snapshot of a simplex basis, used to warm start sibling LPs.
struct Basis {
  std::vector<int> basic;
  std::vector<VarStatus> status;
};

/// Bounded-variable simplex over [A; A_eq | I]. Each row gets a logical
/// variable: a slack in [0, inf) for inequalities and an artificial fixed at
/// 0 for equalities, so equalities enter the basis directly.
class LpEngine {
 public:
  LpEngine(const MilpProblem& problem, const SolverConfig& config);

  int n_struct() const noexcept { return n_; }
  int n_rows() const noexcept { return m_; }

  void set_bounds(int var, double lo, double hi);
  void reset_bounds();
  double lower(int var) const { return lb_[static_cast<std::size_t>(var)]; }
  double upper(int var) const { return ub_[static_cast<std::size_t>(var)]; }

  /// Solves from the current basis: dual simplex when the basis is dual but
  /// not primal feasible, then primal simplex to finish.
  LpStatus solve();

  /// Structural part of the current point.
  std::vector<double> x() const;
  double value(int var) const { return x_[static_cast<std::size_t>(var)]; }
  double objective() const;
  long iterations() const noexcept { return iterations_; }

  Basis basis() const;
  void set_basis(const Basis& basis);

 private:
  void refactor();
  void place_nonbasic(int j);
  void compute_basic_values();
  bool primal_infeasible() const;
  bool make_dual_feasible();
  void compute_duals(bool phase_one, std::vector<double>& d);
  LpStatus primal();
  LpStatus dual();
  void column(int j, std::vector<double>& out) const;
  double column_dot(int j, const std::vector<double>& v) const;
  void pivot(int position, int entering, const std::vector<double>& alpha);
  bool over_limit() const { return iterations_ >= iteration_limit_; }

  const SolverConfig& config_;
  int n_ = 0;
  int m_ = 0;
  CscMatrix mat_;
  std::vector<double> cost_;
  std::vector<double> rhs_;
  std::vector<double> root_lb_, root_ub_;
  std::vector<double> lb_, ub_;
  std::vector<double> x_;
  std::vector<VarStatus> status_;
  std::vector<int> basic_;
  std::vector<int> position_;  // var -> basis position or -1
  BasisFactor factor_;
  bool needs_factor_ = true;
  long iterations_ = 0;
  long iteration_limit_ = 0;
};

}  // namespace potts_forge::detail
