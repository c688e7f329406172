#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond the plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <vector>

#include "potts_forge/graph.hpp"
#include "potts_forge/milp.hpp"
#include "potts_forge/potts.hpp"

namespace oracle {

using potts_forge::Graph;
using potts_forge::MilpProblem;
using potts_forge::Params;
using potts_forge::PottsModel;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest cycle length by BFS from every vertex; 0 for a forest.
inline int girth(const Graph& g) {
  const int n = g.n_vertices();
  int best = 0;
  for (int root = 0; root < n; ++root) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1), parent(static_cast<std::size_t>(n), -1);
    std::deque<int> q{root};
    dist[static_cast<std::size_t>(root)] = 0;
    while (!q.empty()) {
      const int u = q.front();
      q.pop_front();
      for (int v : g.neighbours(u)) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          parent[static_cast<std::size_t>(v)] = u;
          q.push_back(v);
        } else if (parent[static_cast<std::size_t>(u)] != v) {
          const int len = dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(v)] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

// Labels of state `index`, vertex 0 least significant.
inline std::vector<int> labels(std::uint64_t index, int n_vertices, int n_labels) {
  std::vector<int> s(static_cast<std::size_t>(n_vertices));
  for (int i = 0; i < n_vertices; ++i) {
    s[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::uint64_t>(n_labels));
    index /= static_cast<std::uint64_t>(n_labels);
  }
  return s;
}

// Energy straight from the model definition.
inline double state_energy(const PottsModel& m, const Params& p, const std::vector<int>& s) {
  double e = 0.0;
  for (int i = 0; i < m.n_vertices(); ++i) e += p.H[static_cast<std::size_t>(i)] * m.U(s[static_cast<std::size_t>(i)]);
  for (int k = 0; k < m.n_edges(); ++k) {
    const auto& edge = m.graph().edge(k);
    e += p.J[static_cast<std::size_t>(k)] *
         m.V(s[static_cast<std::size_t>(edge.first)], s[static_cast<std::size_t>(edge.second)]);
  }
  return e;
}

inline std::uint64_t n_states(const PottsModel& m) {
  std::uint64_t n = 1;
  for (int i = 0; i < m.n_vertices(); ++i) n *= static_cast<std::uint64_t>(m.n_labels());
  return n;
}

inline std::vector<double> energies(const PottsModel& m, const Params& p) {
  std::vector<double> out;
  for (std::uint64_t s = 0; s < n_states(m); ++s) out.push_back(state_energy(m, p, labels(s, m.n_vertices(), m.n_labels())));
  return out;
}

struct Levels {
  double E0 = kInf;
  double E1 = kInf;
  std::vector<std::uint64_t> ground;
};

inline Levels levels(const std::vector<double>& e, double tol = 1e-9) {
  Levels out;
  for (double v : e) out.E0 = std::min(out.E0, v);
  const double t = tol * std::max(1.0, std::abs(out.E0));
  for (std::size_t s = 0; s < e.size(); ++s) {
    if (e[s] <= out.E0 + t) {
      out.ground.push_back(s);
    } else {
      out.E1 = std::min(out.E1, e[s]);
    }
  }
  return out;
}

// eta by naive summation (no shifting); only for moderate beta * |E|.
inline double naive_nll(const std::vector<double>& e, const std::vector<std::uint64_t>& data, double beta) {
  double z = 0.0;
  for (double v : e) z += std::exp(-beta * v);
  double out = 0.0;
  for (auto s : data) out -= std::log(std::exp(-beta * e[s]) / z);
  return out;
}

// Dense two-phase tableau simplex with Bland's rule. Needs finite bounds.
struct LpResult {
  bool feasible = false;
  double objective = kInf;
  std::vector<double> x;
};

inline LpResult dense_lp(const MilpProblem& p) {
  const int n = p.n_vars();
  // Rows over y = x - lb: A y <= b - A lb, y <= ub - lb, A_eq y = b_eq - A_eq lb.
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<int> kind;  // 0: <=, 1: =
  auto dense = [&](const potts_forge::SparseMatrix& m, const std::vector<double>& b, int k) {
    std::vector<std::vector<double>> r(static_cast<std::size_t>(m.n_rows), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (const auto& t : m.entries) r[static_cast<std::size_t>(t.row)][static_cast<std::size_t>(t.col)] += t.value;
    for (int i = 0; i < m.n_rows; ++i) {
      double v = b[static_cast<std::size_t>(i)];
      for (int j = 0; j < n; ++j) v -= r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * p.lb[static_cast<std::size_t>(j)];
      rows.push_back(r[static_cast<std::size_t>(i)]);
      rhs.push_back(v);
      kind.push_back(k);
    }
  };
  dense(p.A, p.b, 0);
  for (int j = 0; j < n; ++j) {
    std::vector<double> r(static_cast<std::size_t>(n), 0.0);
    r[static_cast<std::size_t>(j)] = 1.0;
    rows.push_back(r);
    rhs.push_back(p.ub[static_cast<std::size_t>(j)] - p.lb[static_cast<std::size_t>(j)]);
    kind.push_back(0);
  }
  dense(p.A_eq, p.b_eq, 1);

  const int m = static_cast<int>(rows.size());
  int n_slack = 0;
  for (int k : kind) n_slack += k == 0;
  // Columns: y (n), slacks, artificials (m), rhs.
  const int n_cols = n + n_slack + m;
  std::vector<std::vector<double>> T(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n_cols) + 1, 0.0));
  std::vector<int> basis(static_cast<std::size_t>(m));
  int slack = n;
  for (int i = 0; i < m; ++i) {
    auto& t = T[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (kind[static_cast<std::size_t>(i)] == 0) t[static_cast<std::size_t>(slack++)] = 1.0;
    t[static_cast<std::size_t>(n_cols)] = rhs[static_cast<std::size_t>(i)];
    if (t[static_cast<std::size_t>(n_cols)] < 0) {
      for (double& v : t) v = -v;
    }
    t[static_cast<std::size_t>(n + n_slack + i)] = 1.0;
    basis[static_cast<std::size_t>(i)] = n + n_slack + i;
  }

  auto run = [&](const std::vector<double>& cost, int allowed) {
    for (int guard = 0; guard < 100000; ++guard) {
      // Reduced costs d_j = c_j - c_B B^-1 a_j; Bland: first improving column.
      int enter = -1;
      for (int j = 0; j < allowed && enter < 0; ++j) {
        double d = cost[static_cast<std::size_t>(j)];
        for (int i = 0; i < m; ++i) d -= cost[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] * T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (d < -1e-10) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = kInf;
      for (int i = 0; i < m; ++i) {
        const double a = T[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
        if (a > 1e-10) {
          const double r = T[static_cast<std::size_t>(i)][static_cast<std::size_t>(n_cols)] / a;
          if (r < best - 1e-12 || (r <= best + 1e-12 && leave >= 0 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
            best = r;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;  // unbounded; cannot happen with finite bounds
      auto& pr = T[static_cast<std::size_t>(leave)];
      const double piv = pr[static_cast<std::size_t>(enter)];
      for (double& v : pr) v /= piv;
      for (int i = 0; i < m; ++i) {
        if (i == leave) continue;
        auto& r = T[static_cast<std::size_t>(i)];
        const double f = r[static_cast<std::size_t>(enter)];
        if (f == 0.0) continue;
        for (int j = 0; j <= n_cols; ++j) r[static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
      }
      basis[static_cast<std::size_t>(leave)] = enter;
    }
    return false;
  };

  std::vector<double> phase1(static_cast<std::size_t>(n_cols), 0.0);
  for (int i = 0; i < m; ++i) phase1[static_cast<std::size_t>(n + n_slack + i)] = 1.0;
  run(phase1, n_cols);
  double infeas = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[static_cast<std::size_t>(i)] >= n + n_slack) infeas += T[static_cast<std::size_t>(i)][static_cast<std::size_t>(n_cols)];
  LpResult out;
  if (infeas > 1e-7) return out;

  // Drive zero-level artificials out of the basis; rows where that fails are
  // redundant and never change again.
  for (int i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n + n_slack) continue;
    auto& pr = T[static_cast<std::size_t>(i)];
    int col = -1;
    for (int j = 0; j < n + n_slack && col < 0; ++j)
      if (std::abs(pr[static_cast<std::size_t>(j)]) > 1e-9) col = j;
    if (col < 0) continue;
    const double piv = pr[static_cast<std::size_t>(col)];
    for (double& v : pr) v /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == i) continue;
      const double f = T[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int j = 0; j <= n_cols; ++j) T[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
    }
    basis[static_cast<std::size_t>(i)] = col;
  }

  std::vector<double> phase2(static_cast<std::size_t>(n_cols), 0.0);
  for (int j = 0; j < n; ++j) phase2[static_cast<std::size_t>(j)] = p.c[static_cast<std::size_t>(j)];
  run(phase2, n + n_slack);

  out.feasible = true;
  out.x.assign(p.lb.begin(), p.lb.end());
  for (int i = 0; i < m; ++i)
    if (basis[static_cast<std::size_t>(i)] < n) out.x[static_cast<std::size_t>(basis[static_cast<std::size_t>(i)])] += T[static_cast<std::size_t>(i)][static_cast<std::size_t>(n_cols)];
  out.objective = 0.0;
  for (int j = 0; j < n; ++j) out.objective += p.c[static_cast<std::size_t>(j)] * out.x[static_cast<std::size_t>(j)];
  return out;
}

// Exhaustive MILP: enumerates every integer point of the integer variables
// (finite boxes) and solves the remaining LP with dense_lp.
inline LpResult enumerate_milp(const MilpProblem& p) {
  LpResult best;
  std::vector<int> ints = p.integer_vars;
  std::vector<double> value(ints.size());
  for (std::size_t i = 0; i < ints.size(); ++i) value[i] = std::ceil(p.lb[static_cast<std::size_t>(ints[i])]);
  for (;;) {
    MilpProblem q = p;
    for (std::size_t i = 0; i < ints.size(); ++i) q.lb[static_cast<std::size_t>(ints[i])] = q.ub[static_cast<std::size_t>(ints[i])] = value[i];
    const LpResult r = dense_lp(q);
    if (r.feasible && r.objective < best.objective - 1e-12) best = r;
    std::size_t k = 0;
    while (k < ints.size() && value[k] + 1 > p.ub[static_cast<std::size_t>(ints[k])]) {
      value[k] = std::ceil(p.lb[static_cast<std::size_t>(ints[k])]);
      ++k;
    }
    if (k == ints.size()) break;
    value[k] += 1;
  }
  return best;
}

// Random binary problem with small integer coefficients; always feasible at
// some point because the rows are built around a planted solution.
inline MilpProblem random_binary(std::mt19937_64& rng, int n, int rows, int eq_rows) {
  std::uniform_int_distribution<int> coef(-5, 5), bit(0, 1), slackd(0, 3);
  MilpProblem p;
  p.A = potts_forge::SparseMatrix(0, n);
  p.A_eq = potts_forge::SparseMatrix(0, n);
  std::vector<int> plant(static_cast<std::size_t>(n));
  for (int& v : plant) v = bit(rng);
  for (int j = 0; j < n; ++j) p.c.push_back(coef(rng));
  auto add = [&](potts_forge::SparseMatrix& m, std::vector<double>& rhs, int extra) {
    const int r = m.add_row();
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) {
      const int a = coef(rng);
      if (a != 0 && bit(rng)) {
        m.add(r, j, a);
        lhs += a * plant[static_cast<std::size_t>(j)];
      }
    }
    rhs.push_back(lhs + extra);
  };
  for (int i = 0; i < rows - eq_rows; ++i) add(p.A, p.b, slackd(rng));
  for (int i = 0; i < eq_rows; ++i) add(p.A_eq, p.b_eq, 0);
  p.lb.assign(static_cast<std::size_t>(n), 0.0);
  p.ub.assign(static_cast<std::size_t>(n), 1.0);
  for (int j = 0; j < n; ++j) p.integer_vars.push_back(j);
  return p;
}

}  // namespace oracle
