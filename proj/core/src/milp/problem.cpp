#include <algorithm>
#include <cmath>
#include <string>

#include "potts_forge/error.hpp"
#include "potts_forge/milp.hpp"

namespace potts_forge {

void SparseMatrix::canonicalize() {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(entries.size());
  for (const Triplet& t : entries) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == 0.0; });
  entries = std::move(merged);
}

std::string_view to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::IterationLimit: return "IterationLimit";
    case SolveStatus::NodeLimit: return "NodeLimit";
    case SolveStatus::TimeLimit: return "TimeLimit";
  }
  return "Unknown";
}

namespace {

void check_matrix(const SparseMatrix& m, int n_vars, std::size_t rhs_size, const char* name) {
  if (m.n_cols != n_vars) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " has " + std::to_string(m.n_cols) +
                                                " columns, expected " + std::to_string(n_vars));
  }
  if (rhs_size != static_cast<std::size_t>(m.n_rows)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " right-hand side length mismatch");
  }
  for (const Triplet& t : m.entries) {
    if (t.row < 0 || t.row >= m.n_rows || t.col < 0 || t.col >= m.n_cols) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " entry out of range at (" +
                                                  std::to_string(t.row) + "," + std::to_string(t.col) + ")");
    }
    if (!std::isfinite(t.value)) throw Error(ErrorCode::InvalidArgument, std::string(name) + " has a non-finite entry");
  }
}

}  // namespace

void MilpProblem::validate() const {
  const int n = n_vars();
  if (lb.size() != c.size() || ub.size() != c.size()) {
    throw Error(ErrorCode::InvalidArgument, "bounds length does not match the cost row");
  }
  check_matrix(A, n, b.size(), "A");
  check_matrix(A_eq, n, b_eq.size(), "A_eq");
  for (int j = 0; j < n; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (!std::isfinite(c[u])) throw Error(ErrorCode::InvalidArgument, "cost entry " + std::to_string(j) + " not finite");
    if (std::isnan(lb[u]) || std::isnan(ub[u]) || lb[u] > ub[u] || lb[u] == std::numeric_limits<double>::infinity() ||
        ub[u] == -std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::InvalidArgument, "invalid bounds on variable " + std::to_string(j));
    }
  }
  for (double v : b)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "b has a non-finite entry");
  for (double v : b_eq)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "b_eq has a non-finite entry");
  for (int j : integer_vars) {
    if (j < 0 || j >= n) throw Error(ErrorCode::InvalidArgument, "integer index " + std::to_string(j) + " out of range");
  }
}

double max_violation(const MilpProblem& problem, std::span<const double> x) {
  double worst = 0.0;
  std::vector<double> row(static_cast<std::size_t>(problem.n_ineq()), 0.0);
  for (const Triplet& t : problem.A.entries) row[static_cast<std::size_t>(t.row)] += t.value * x[static_cast<std::size_t>(t.col)];
  for (std::size_t i = 0; i < row.size(); ++i) worst = std::max(worst, row[i] - problem.b[i]);
  std::vector<double> eq(static_cast<std::size_t>(problem.n_eq()), 0.0);
  for (const Triplet& t : problem.A_eq.entries) eq[static_cast<std::size_t>(t.row)] += t.value * x[static_cast<std::size_t>(t.col)];
  for (std::size_t i = 0; i < eq.size(); ++i) worst = std::max(worst, std::abs(eq[i] - problem.b_eq[i]));
  for (std::size_t j = 0; j < problem.c.size(); ++j) {
    worst = std::max(worst, problem.lb[j] - x[j]);
    worst = std::max(worst, x[j] - problem.ub[j]);
  }
  return worst;
}

double max_integrality_violation(const MilpProblem& problem, std::span<const double> x) {
  double worst = 0.0;
  for (int j : problem.integer_vars) {
    const double v = x[static_cast<std::size_t>(j)];
    worst = std::max(worst, std::abs(v - std::round(v)));
  }
  return worst;
}

}  // namespace potts_forge
