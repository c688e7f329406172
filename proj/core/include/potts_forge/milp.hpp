#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace potts_forge {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Sparse matrix as a list of (row, col, value) triplets. Duplicate positions
/// are summed when the matrix is consumed.
struct SparseMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<Triplet> entries;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : n_rows(rows), n_cols(cols) {}

  void add(int row, int col, double value) { entries.push_back({row, col, value}); }
  /// Appends an empty row and returns its index.
  int add_row() { return n_rows++; }
  /// Sorts row-major, merges duplicates and drops explicit zeros.
  void canonicalize();
};

/// min c.x  s.t.  A x <= b,  A_eq x = b_eq,  lb <= x <= ub,  x_j integer for j in integer_vars.
struct MilpProblem {
  std::vector<double> c;
  SparseMatrix A;
  std::vector<double> b;
  SparseMatrix A_eq;
  std::vector<double> b_eq;
  std::vector<double> lb;
  std::vector<double> ub;
  std::vector<int> integer_vars;

  int n_vars() const noexcept { return static_cast<int>(c.size()); }
  int n_ineq() const noexcept { return A.n_rows; }
  int n_eq() const noexcept { return A_eq.n_rows; }

  /// Throws Error(InvalidArgument) on inconsistent dimensions, lb > ub,
  /// NaN entries or integer indices out of range.
  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit, NodeLimit, TimeLimit };

std::string_view to_string(SolveStatus status) noexcept;

struct MilpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  /// Best point found; empty when none exists.
  std::vector<double> x;
  double objective = std::numeric_limits<double>::infinity();
  long nodes_explored = 0;
  /// Objective of the root LP relaxation.
  double root_bound = -std::numeric_limits<double>::infinity();
  long lp_iterations = 0;

  bool has_solution() const noexcept { return !x.empty(); }
};

struct SolverConfig {
  double tol_feas = 1e-7;
  double tol_int = 1e-6;
  double tol_gap = 1e-9;
  /// Reduced-cost tolerance for optimality.
  double tol_dual = 1e-9;
  long node_limit = 1'000'000;
  /// Wall-clock budget in seconds for solve_milp.
  double time_limit = std::numeric_limits<double>::infinity();
  /// Simplex iteration cap per LP; 0 picks max(100000, 50 (rows + cols)).
  long lp_iteration_limit = 0;
  /// Basis updates between refactorizations.
  int refactor_interval = 64;
  /// Dive from the root for an early incumbent.
  bool dive_at_root = true;
  /// Additionally dive every this many nodes (0 disables).
  long dive_frequency = 0;
  /// Per-variable branching priority; fractional variables of the highest
  /// priority are branched on (and dived on) first. Empty means all equal.
  std::vector<int> branch_priority;
};

/// Image of a variable under a group element: x'_{var} = sign * x_j.
struct VarImage {
  int var = 0;
  double sign = 1.0;
};

/// A finite group acting on the variables of a problem by signed
/// permutations. Integer variables must map to integer variables with sign +1.
class SymmetryGroup {
 public:
  virtual ~SymmetryGroup() = default;
  virtual std::size_t order() const = 0;
  virtual VarImage image(std::size_t element, int var) const = 0;
};

/// LP relaxation (integrality ignored) by the bounded primal/dual simplex.
MilpSolution solve_lp(const MilpProblem& problem, const SolverConfig& config = {});

/// Best-first branch-and-bound. When `symmetry` is given it must be a
/// symmetry of the problem; branching on a binary then uses orbital branching
/// (x_j = 1 in one child, x_i = 0 for the whole orbit of j in the other).
MilpSolution solve_milp(const MilpProblem& problem, const SolverConfig& config = {},
                        const SymmetryGroup* symmetry = nullptr);

/// Largest violation of rows and bounds at x.
double max_violation(const MilpProblem& problem, std::span<const double> x);
/// Largest distance of an integer variable from the nearest integer.
double max_integrality_violation(const MilpProblem& problem, std::span<const double> x);

/// Checks that each listed group element maps the problem onto itself:
/// cost, bounds, integrality and the row sets (equality rows up to sign).
bool verify_symmetry(const MilpProblem& problem, const SymmetryGroup& group, std::span<const std::size_t> elements,
                     double tol = 1e-12);

/// Line-oriented text dump: a header with dimensions, then the cost row,
/// sparse triplets, right-hand sides, bounds and the integer index list.
void write_problem(std::ostream& out, const MilpProblem& problem);
/// Inverse of write_problem. Throws Error(ParseError).
MilpProblem read_problem(std::istream& in);

}  // namespace potts_forge
