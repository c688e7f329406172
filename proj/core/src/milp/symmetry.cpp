#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "potts_forge/milp.hpp"

namespace potts_forge {

namespace {

using Row = std::vector<std::pair<int, double>>;

std::vector<Row> rows_of(const SparseMatrix& m) {
  std::vector<Row> rows(static_cast<std::size_t>(m.n_rows));
  for (const Triplet& t : m.entries) {
    if (t.value != 0.0) rows[static_cast<std::size_t>(t.row)].push_back({t.col, t.value});
  }
  for (auto& r : rows) std::sort(r.begin(), r.end());
  return rows;
}

bool same_row(const Row& a, double rhs_a, const Row& b, double rhs_b, double scale, double tol) {
  if (a.size() != b.size() || std::abs(rhs_a - scale * rhs_b) > tol) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].first != b[k].first || std::abs(a[k].second - scale * b[k].second) > tol) return false;
  }
  return true;
}

// Every transformed row must match some original row. Rows are bucketed by
// their sorted column pattern to keep the lookup cheap.
bool rows_invariant(const std::vector<Row>& rows, const std::vector<double>& rhs, const SymmetryGroup& group,
                    std::size_t element, bool allow_negation, double tol) {
  std::map<std::vector<int>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<int> pattern;
    for (const auto& [j, v] : rows[i]) pattern.push_back(j);
    buckets[pattern].push_back(i);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Row mapped;
    for (const auto& [j, v] : rows[i]) {
      const VarImage img = group.image(element, j);
      mapped.push_back({img.var, img.sign * v});
    }
    std::sort(mapped.begin(), mapped.end());
    std::vector<int> pattern;
    for (const auto& [j, v] : mapped) pattern.push_back(j);
    auto it = buckets.find(pattern);
    if (it == buckets.end()) return false;
    bool found = false;
    for (std::size_t r : it->second) {
      if (same_row(mapped, rhs[i], rows[r], rhs[r], 1.0, tol) ||
          (allow_negation && same_row(mapped, rhs[i], rows[r], rhs[r], -1.0, tol))) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool verify_symmetry(const MilpProblem& problem, const SymmetryGroup& group, std::span<const std::size_t> elements,
                     double tol) {
  const int n = problem.n_vars();
  std::vector<char> is_int(static_cast<std::size_t>(n), 0);
  for (int j : problem.integer_vars) is_int[static_cast<std::size_t>(j)] = 1;
  const auto ineq = rows_of(problem.A);
  const auto eq = rows_of(problem.A_eq);

  for (std::size_t g : elements) {
    if (g >= group.order()) return false;
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
      const VarImage img = group.image(g, j);
      if (img.var < 0 || img.var >= n || hit[static_cast<std::size_t>(img.var)]) return false;
      if (img.sign != 1.0 && img.sign != -1.0) return false;
      hit[static_cast<std::size_t>(img.var)] = 1;
      const auto u = static_cast<std::size_t>(j);
      const auto w = static_cast<std::size_t>(img.var);
      if (is_int[u] != is_int[w] || (is_int[u] && img.sign != 1.0)) return false;
      if (std::abs(problem.c[w] * img.sign - problem.c[u]) > tol) return false;
      const double lo = img.sign > 0 ? problem.lb[u] : -problem.ub[u];
      const double hi = img.sign > 0 ? problem.ub[u] : -problem.lb[u];
      if (!(lo == problem.lb[w] || std::abs(lo - problem.lb[w]) <= tol)) return false;
      if (!(hi == problem.ub[w] || std::abs(hi - problem.ub[w]) <= tol)) return false;
    }
    if (!rows_invariant(ineq, problem.b, group, g, false, tol)) return false;
    if (!rows_invariant(eq, problem.b_eq, group, g, true, tol)) return false;
  }
  return true;
}

}  // namespace potts_forge
