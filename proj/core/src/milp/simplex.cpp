#include <algorithm>
#include <cmath>
#include <limits>

#include "lp_engine.hpp"
#include "potts_forge/milp.hpp"

namespace potts_forge::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr int kStallLimit = 100;
constexpr double kHugeBound = 1e20;
constexpr double kPerturb = 1e-7;

CscMatrix build_matrix(const MilpProblem& p) {
  SparseMatrix a = p.A;
  SparseMatrix a_eq = p.A_eq;
  a.canonicalize();
  a_eq.canonicalize();
  const int n = p.n_vars();
  const int m = p.n_ineq() + p.n_eq();
  CscMatrix mat;
  mat.n_rows = m;
  mat.n_cols = n + m;
  std::vector<int> count(static_cast<std::size_t>(n + m), 0);
  for (const Triplet& t : a.entries) ++count[static_cast<std::size_t>(t.col)];
  for (const Triplet& t : a_eq.entries) ++count[static_cast<std::size_t>(t.col)];
  for (int i = 0; i < m; ++i) count[static_cast<std::size_t>(n + i)] = 1;
  mat.start.assign(static_cast<std::size_t>(n + m) + 1, 0);
  for (int j = 0; j < n + m; ++j) mat.start[static_cast<std::size_t>(j) + 1] = mat.start[static_cast<std::size_t>(j)] + count[static_cast<std::size_t>(j)];
  mat.index.resize(static_cast<std::size_t>(mat.start.back()));
  mat.value.resize(static_cast<std::size_t>(mat.start.back()));
  std::vector<int> fill(mat.start.begin(), mat.start.end() - 1);
  // Triplets are row-major, so each column receives its rows in order.
  for (const Triplet& t : a.entries) {
    const auto k = static_cast<std::size_t>(fill[static_cast<std::size_t>(t.col)]++);
    mat.index[k] = t.row;
    mat.value[k] = t.value;
  }
  for (const Triplet& t : a_eq.entries) {
    const auto k = static_cast<std::size_t>(fill[static_cast<std::size_t>(t.col)]++);
    mat.index[k] = p.n_ineq() + t.row;
    mat.value[k] = t.value;
  }
  for (int i = 0; i < m; ++i) {
    const auto k = static_cast<std::size_t>(fill[static_cast<std::size_t>(n + i)]++);
    mat.index[k] = i;
    mat.value[k] = 1.0;
  }
  return mat;
}

}  // namespace

LpEngine::LpEngine(const MilpProblem& problem, const SolverConfig& config)
    : config_(config), n_(problem.n_vars()), m_(problem.n_ineq() + problem.n_eq()) {
  mat_ = build_matrix(problem);
  const auto total = static_cast<std::size_t>(n_ + m_);
  cost_.assign(total, 0.0);
  std::copy(problem.c.begin(), problem.c.end(), cost_.begin());
  rhs_ = problem.b;
  rhs_.insert(rhs_.end(), problem.b_eq.begin(), problem.b_eq.end());
  root_lb_.assign(total, 0.0);
  root_ub_.assign(total, 0.0);
  std::copy(problem.lb.begin(), problem.lb.end(), root_lb_.begin());
  std::copy(problem.ub.begin(), problem.ub.end(), root_ub_.begin());
  for (int i = 0; i < problem.n_ineq(); ++i) root_ub_[static_cast<std::size_t>(n_ + i)] = kInf;
  // Huge finite bounds behave like infinite ones.
  for (std::size_t j = 0; j < total; ++j) {
    if (root_lb_[j] <= -kHugeBound) root_lb_[j] = -kInf;
    if (root_ub_[j] >= kHugeBound) root_ub_[j] = kInf;
  }
  lb_ = root_lb_;
  ub_ = root_ub_;

  x_.assign(total, 0.0);
  status_.assign(total, VarStatus::AtLower);
  position_.assign(total, -1);
  basic_.resize(static_cast<std::size_t>(m_));
  for (int i = 0; i < m_; ++i) {
    basic_[static_cast<std::size_t>(i)] = n_ + i;
    position_[static_cast<std::size_t>(n_ + i)] = i;
    status_[static_cast<std::size_t>(n_ + i)] = VarStatus::Basic;
  }
  // Cost-favourable bounds make the slack basis dual feasible for boxed problems.
  for (int j = 0; j < n_; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (cost_[u] < 0.0 && ub_[u] < kInf) {
      status_[u] = VarStatus::AtUpper;
    } else if (lb_[u] > -kInf) {
      status_[u] = VarStatus::AtLower;
    } else if (ub_[u] < kInf) {
      status_[u] = VarStatus::AtUpper;
    } else {
      status_[u] = VarStatus::FreeZero;
    }
  }
  iteration_limit_ = config.lp_iteration_limit > 0 ? config.lp_iteration_limit
                                                    : std::max<long>(100000, 50L * static_cast<long>(n_ + m_));
}

void LpEngine::set_bounds(int var, double lo, double hi) {
  lb_[static_cast<std::size_t>(var)] = lo;
  ub_[static_cast<std::size_t>(var)] = hi;
}

void LpEngine::reset_bounds() {
  std::copy(root_lb_.begin(), root_lb_.begin() + n_, lb_.begin());
  std::copy(root_ub_.begin(), root_ub_.begin() + n_, ub_.begin());
}

std::vector<double> LpEngine::x() const { return {x_.begin(), x_.begin() + n_}; }

double LpEngine::objective() const {
  double acc = 0.0;
  for (int j = 0; j < n_; ++j) acc += cost_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
  return acc;
}

Basis LpEngine::basis() const { return Basis{basic_, status_}; }

void LpEngine::set_basis(const Basis& basis) {
  basic_ = basis.basic;
  status_ = basis.status;
  std::fill(position_.begin(), position_.end(), -1);
  for (int p = 0; p < m_; ++p) position_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(p)])] = p;
  needs_factor_ = true;
}

void LpEngine::place_nonbasic(int j) {
  const auto u = static_cast<std::size_t>(j);
  VarStatus& s = status_[u];
  if (s == VarStatus::Basic) return;
  if (s == VarStatus::AtLower && lb_[u] == -kInf) s = ub_[u] < kInf ? VarStatus::AtUpper : VarStatus::FreeZero;
  if (s == VarStatus::AtUpper && ub_[u] == kInf) s = lb_[u] > -kInf ? VarStatus::AtLower : VarStatus::FreeZero;
  if (s == VarStatus::FreeZero && lb_[u] > -kInf) s = VarStatus::AtLower;
  if (s == VarStatus::FreeZero && ub_[u] < kInf) s = VarStatus::AtUpper;
  switch (s) {
    case VarStatus::AtLower: x_[u] = lb_[u]; break;
    case VarStatus::AtUpper: x_[u] = ub_[u]; break;
    default: x_[u] = 0.0; break;
  }
}

void LpEngine::column(int j, std::vector<double>& out) const {
  out.assign(static_cast<std::size_t>(m_), 0.0);
  for (int k = mat_.start[static_cast<std::size_t>(j)]; k < mat_.start[static_cast<std::size_t>(j) + 1]; ++k) {
    out[static_cast<std::size_t>(mat_.index[static_cast<std::size_t>(k)])] = mat_.value[static_cast<std::size_t>(k)];
  }
}

double LpEngine::column_dot(int j, const std::vector<double>& v) const {
  double acc = 0.0;
  for (int k = mat_.start[static_cast<std::size_t>(j)]; k < mat_.start[static_cast<std::size_t>(j) + 1]; ++k) {
    acc += mat_.value[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(mat_.index[static_cast<std::size_t>(k)])];
  }
  return acc;
}

void LpEngine::compute_basic_values() {
  std::vector<double> y(rhs_);
  for (int j = 0; j < n_ + m_; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (status_[u] == VarStatus::Basic || x_[u] == 0.0) continue;
    for (int k = mat_.start[u]; k < mat_.start[u + 1]; ++k) {
      y[static_cast<std::size_t>(mat_.index[static_cast<std::size_t>(k)])] -= mat_.value[static_cast<std::size_t>(k)] * x_[u];
    }
  }
  factor_.ftran(y);
  for (int p = 0; p < m_; ++p) x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(p)])] = y[static_cast<std::size_t>(p)];
}

void LpEngine::refactor() {
  for (int attempt = 0; attempt < 4; ++attempt) {
    const auto repairs = factor_.factor(mat_, basic_);
    if (repairs.empty()) break;
    for (const auto& [p, r] : repairs) {
      const int old = basic_[static_cast<std::size_t>(p)];
      const int logical = n_ + r;
      const auto uo = static_cast<std::size_t>(old);
      status_[uo] = (x_[uo] - lb_[uo] <= ub_[uo] - x_[uo]) ? VarStatus::AtLower : VarStatus::AtUpper;
      position_[uo] = -1;
      basic_[static_cast<std::size_t>(p)] = logical;
      position_[static_cast<std::size_t>(logical)] = p;
      status_[static_cast<std::size_t>(logical)] = VarStatus::Basic;
      place_nonbasic(old);
    }
  }
  needs_factor_ = false;
  compute_basic_values();
}

bool LpEngine::primal_infeasible() const {
  const double tol = config_.tol_feas;
  for (int j : basic_) {
    const auto u = static_cast<std::size_t>(j);
    if (x_[u] < lb_[u] - tol || x_[u] > ub_[u] + tol) return true;
  }
  return false;
}

void LpEngine::compute_duals(bool phase_one, std::vector<double>& d) {
  const double tol = config_.tol_feas;
  std::vector<double> pi(static_cast<std::size_t>(m_), 0.0);
  for (int p = 0; p < m_; ++p) {
    const auto u = static_cast<std::size_t>(basic_[static_cast<std::size_t>(p)]);
    if (phase_one) {
      if (x_[u] < lb_[u] - tol) pi[static_cast<std::size_t>(p)] = -1.0;
      else if (x_[u] > ub_[u] + tol) pi[static_cast<std::size_t>(p)] = 1.0;
    } else {
      pi[static_cast<std::size_t>(p)] = cost_[u];
    }
  }
  factor_.btran(pi);
  d.assign(static_cast<std::size_t>(n_ + m_), 0.0);
  for (int j = 0; j < n_ + m_; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (status_[u] == VarStatus::Basic) continue;
    d[u] = (phase_one ? 0.0 : cost_[u]) - column_dot(j, pi);
  }
}

void LpEngine::pivot(int position, int entering, const std::vector<double>& alpha) {
  const int leaving = basic_[static_cast<std::size_t>(position)];
  position_[static_cast<std::size_t>(leaving)] = -1;
  basic_[static_cast<std::size_t>(position)] = entering;
  position_[static_cast<std::size_t>(entering)] = position;
  status_[static_cast<std::size_t>(entering)] = VarStatus::Basic;
  factor_.update(position, alpha);
}

bool LpEngine::make_dual_feasible() {
  std::vector<double> d;
  compute_duals(false, d);
  const double tol = config_.tol_dual;
  bool flipped = false;
  for (int j = 0; j < n_ + m_; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (status_[u] == VarStatus::Basic || lb_[u] == ub_[u]) continue;
    if (status_[u] == VarStatus::AtLower && d[u] < -tol) {
      if (ub_[u] == kInf) return false;
      status_[u] = VarStatus::AtUpper;
      flipped = true;
    } else if (status_[u] == VarStatus::AtUpper && d[u] > tol) {
      if (lb_[u] == -kInf) return false;
      status_[u] = VarStatus::AtLower;
      flipped = true;
    } else if (status_[u] == VarStatus::FreeZero && std::abs(d[u]) > tol) {
      return false;
    }
    place_nonbasic(j);
  }
  if (flipped) compute_basic_values();
  return true;
}

LpStatus LpEngine::solve() {
  const long start = iterations_;
  const long saved_limit = iteration_limit_;
  iteration_limit_ = start + saved_limit;
  for (int j = 0; j < n_ + m_; ++j) place_nonbasic(j);
  if (needs_factor_) {
    refactor();
  } else {
    compute_basic_values();
  }
  LpStatus st = LpStatus::Optimal;
  if (primal_infeasible() && make_dual_feasible()) st = dual();
  if (st == LpStatus::Optimal) st = primal();
  iteration_limit_ = saved_limit;
  return st;
}

LpStatus LpEngine::primal() {
  const double tol = config_.tol_feas;
  const double dtol = config_.tol_dual;
  std::vector<double> d, alpha;
  bool bland = false;
  int stall = 0;
  int trouble = 0;
  for (;;) {
    if (over_limit()) return LpStatus::IterationLimit;
    if (factor_.n_updates() >= config_.refactor_interval) refactor();
    const bool phase_one = primal_infeasible();
    compute_duals(phase_one, d);

    int q = -1;
    int dir = 0;
    double best = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      const auto u = static_cast<std::size_t>(j);
      const VarStatus s = status_[u];
      if (s == VarStatus::Basic || lb_[u] == ub_[u]) continue;
      int jd = 0;
      if ((s == VarStatus::AtLower || s == VarStatus::FreeZero) && d[u] < -dtol) jd = 1;
      else if ((s == VarStatus::AtUpper || s == VarStatus::FreeZero) && d[u] > dtol) jd = -1;
      if (jd == 0) continue;
      if (bland) {
        q = j;
        dir = jd;
        break;
      }
      if (std::abs(d[u]) > best) {
        best = std::abs(d[u]);
        q = j;
        dir = jd;
      }
    }
    if (q < 0) return phase_one ? LpStatus::Infeasible : LpStatus::Optimal;

    column(q, alpha);
    factor_.ftran(alpha);
    const auto uq = static_cast<std::size_t>(q);
    const double range = ub_[uq] - lb_[uq];

    // Harris two-pass ratio test; bland mode uses the textbook minimum ratio
    // with lowest-index ties.
    double t_max = range;
    for (int p = 0; p < m_; ++p) {
      const double a = alpha[static_cast<std::size_t>(p)];
      if (std::abs(a) <= kPivotTol) continue;
      const double delta = -dir * a;
      const auto u = static_cast<std::size_t>(basic_[static_cast<std::size_t>(p)]);
      const double xi = x_[u];
      double t = kInf;
      if (xi < lb_[u] - tol) {
        if (delta > 0) t = (lb_[u] - xi + (bland ? 0.0 : tol)) / delta;
      } else if (xi > ub_[u] + tol) {
        if (delta < 0) t = (xi - ub_[u] + (bland ? 0.0 : tol)) / -delta;
      } else if (delta < 0 && lb_[u] > -kInf) {
        t = (xi - lb_[u] + (bland ? 0.0 : tol)) / -delta;
      } else if (delta > 0 && ub_[u] < kInf) {
        t = (ub_[u] + (bland ? 0.0 : tol) - xi) / delta;
      }
      t_max = std::min(t_max, t);
    }
    if (t_max == kInf) {
      if (!phase_one) return LpStatus::Unbounded;
      if (++trouble > 5) return LpStatus::IterationLimit;
      refactor();
      continue;
    }

    int leave = -1;
    double leave_t = 0.0;
    bool to_lower = true;
    if (range > t_max || bland) {
      double best_a = 0.0;
      for (int p = 0; p < m_; ++p) {
        const double a = alpha[static_cast<std::size_t>(p)];
        if (std::abs(a) <= kPivotTol) continue;
        const double delta = -dir * a;
        const int var = basic_[static_cast<std::size_t>(p)];
        const auto u = static_cast<std::size_t>(var);
        const double xi = x_[u];
        double t = kInf;
        bool lower = true;
        if (xi < lb_[u] - tol) {
          if (delta > 0) t = (lb_[u] - xi) / delta;
        } else if (xi > ub_[u] + tol) {
          if (delta < 0) t = (xi - ub_[u]) / -delta, lower = false;
        } else if (delta < 0 && lb_[u] > -kInf) {
          t = (xi - lb_[u]) / -delta;
        } else if (delta > 0 && ub_[u] < kInf) {
          t = (ub_[u] - xi) / delta, lower = false;
        }
        if (t == kInf) continue;
        t = std::max(t, 0.0);
        bool take = false;
        if (bland) {
          take = leave < 0 || t < leave_t - 1e-12 ||
                 (t <= leave_t + 1e-12 && var < basic_[static_cast<std::size_t>(leave)]);
        } else if (t <= t_max) {
          take = std::abs(a) > best_a;
        }
        if (take) {
          leave = p;
          leave_t = t;
          to_lower = lower;
          best_a = std::abs(a);
        }
      }
      if (bland && leave >= 0 && range <= leave_t) leave = -1;
    }

    const double t = leave < 0 ? range : leave_t;
    x_[uq] += dir * t;
    for (int p = 0; p < m_; ++p) {
      const double a = alpha[static_cast<std::size_t>(p)];
      if (a != 0.0) x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(p)])] -= dir * a * t;
    }
    if (leave < 0) {
      status_[uq] = dir > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
      place_nonbasic(q);
    } else {
      const int out = basic_[static_cast<std::size_t>(leave)];
      const auto uo = static_cast<std::size_t>(out);
      status_[uo] = to_lower ? VarStatus::AtLower : VarStatus::AtUpper;
      x_[uo] = to_lower ? lb_[uo] : ub_[uo];
      pivot(leave, q, alpha);
    }
    ++iterations_;
    if (t <= 1e-12) {
      if (++stall > kStallLimit) bland = true;
    } else {
      stall = 0;
      bland = false;
    }
  }
}

LpStatus LpEngine::dual() {
  const double tol = config_.tol_feas;
  const double dtol = config_.tol_dual;
  std::vector<double> d, rho, alpha;
  std::vector<double> row(static_cast<std::size_t>(n_ + m_), 0.0);
  // Small cost shifts towards dual feasibility break ties between dual
  // degenerate columns. The primal pass afterwards uses the true costs.
  const std::vector<double> saved_cost = cost_;
  for (int j = 0; j < n_ + m_; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (status_[u] == VarStatus::Basic || lb_[u] == ub_[u]) continue;
    const double shift = kPerturb * (1.0 + std::abs(cost_[u])) * (1.0 + static_cast<double>((j * 2654435761u) % 1000) / 1000.0);
    if (status_[u] == VarStatus::AtLower) cost_[u] += shift;
    else if (status_[u] == VarStatus::AtUpper) cost_[u] -= shift;
  }
  struct Restore {
    std::vector<double>& cost;
    const std::vector<double>& saved;
    ~Restore() { cost = saved; }
  } restore{cost_, saved_cost};
  compute_duals(false, d);
  int stall = 0;
  int trouble = 0;
  for (;;) {
    if (over_limit()) return LpStatus::IterationLimit;
    if (factor_.n_updates() >= config_.refactor_interval) {
      refactor();
      compute_duals(false, d);
    }

    // Leaving row: largest bound violation; lowest variable index when stalling.
    int r = -1;
    double worst = 0.0;
    for (int p = 0; p < m_; ++p) {
      const auto u = static_cast<std::size_t>(basic_[static_cast<std::size_t>(p)]);
      const double viol = std::max(lb_[u] - x_[u], x_[u] - ub_[u]);
      if (viol <= tol) continue;
      if (stall > kStallLimit) {
        if (r < 0 || basic_[static_cast<std::size_t>(p)] < basic_[static_cast<std::size_t>(r)]) r = p;
      } else if (viol > worst) {
        worst = viol;
        r = p;
      }
    }
    if (r < 0) return LpStatus::Optimal;
    const auto ur = static_cast<std::size_t>(basic_[static_cast<std::size_t>(r)]);
    const double s = x_[ur] < lb_[ur] ? 1.0 : -1.0;

    rho.assign(static_cast<std::size_t>(m_), 0.0);
    rho[static_cast<std::size_t>(r)] = 1.0;
    factor_.btran(rho);

    // Dual slack of a nonbasic column: how far its reduced cost may move
    // towards the wrong sign. Free columns have none.
    auto slack = [&](std::size_t u) {
      switch (status_[u]) {
        case VarStatus::AtLower: return d[u];
        case VarStatus::AtUpper: return -d[u];
        default: return 0.0;
      }
    };
    auto eligible = [&](std::size_t u, double a) {
      if (lb_[u] == ub_[u] || std::abs(a) <= kPivotTol) return false;
      const VarStatus st = status_[u];
      return (st == VarStatus::AtLower && a < 0) || (st == VarStatus::AtUpper && a > 0) || st == VarStatus::FreeZero;
    };

    double t_max = kInf;
    for (int j = 0; j < n_ + m_; ++j) {
      const auto u = static_cast<std::size_t>(j);
      if (status_[u] == VarStatus::Basic) {
        row[u] = 0.0;
        continue;
      }
      row[u] = column_dot(j, rho);
      const double a = s * row[u];
      if (!eligible(u, a)) continue;
      t_max = std::min(t_max, (std::max(slack(u), 0.0) + dtol) / std::abs(a));
    }
    if (t_max == kInf) return LpStatus::Infeasible;

    // Harris choice among ratios within t_max; when stalling, the exact
    // minimum ratio with lowest-index ties.
    const bool bland = stall > kStallLimit;
    int q = -1;
    double best_a = 0.0, best_t = kInf;
    for (int j = 0; j < n_ + m_; ++j) {
      const auto u = static_cast<std::size_t>(j);
      if (status_[u] == VarStatus::Basic) continue;
      const double a = s * row[u];
      if (!eligible(u, a)) continue;
      const double t = std::max(slack(u), 0.0) / std::abs(a);
      if (bland) {
        if (t < best_t) {
          best_t = t;
          q = j;
        }
      } else if (t <= t_max && std::abs(a) > best_a) {
        best_a = std::abs(a);
        q = j;
      }
    }
    if (q < 0) return LpStatus::Infeasible;

    column(q, alpha);
    factor_.ftran(alpha);
    const auto uq = static_cast<std::size_t>(q);
    const double piv = alpha[static_cast<std::size_t>(r)];
    if (std::abs(piv - row[uq]) > 1e-7 * (1.0 + std::abs(row[uq])) || std::abs(piv) <= kPivotTol) {
      if (++trouble > 5) return LpStatus::IterationLimit;
      refactor();
      compute_duals(false, d);
      continue;
    }

    const double target = s > 0 ? lb_[ur] : ub_[ur];
    const double step = (x_[ur] - target) / piv;
    for (int p = 0; p < m_; ++p) {
      const double a = alpha[static_cast<std::size_t>(p)];
      if (a != 0.0) x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(p)])] -= a * step;
    }
    x_[uq] += step;

    // A slightly wrong-signed entering cost is shifted to zero, so the step
    // never lowers the dual objective.
    if (slack(uq) < 0.0) {
      cost_[uq] -= d[uq];
      d[uq] = 0.0;
    }
    const double lambda = d[uq] / piv;
    for (int j = 0; j < n_ + m_; ++j) {
      const auto u = static_cast<std::size_t>(j);
      if (status_[u] != VarStatus::Basic && row[u] != 0.0) d[u] -= lambda * row[u];
    }
    d[uq] = 0.0;
    d[ur] = -lambda;

    status_[ur] = s > 0 ? VarStatus::AtLower : VarStatus::AtUpper;
    x_[ur] = target;
    pivot(r, q, alpha);
    ++iterations_;
    if (std::abs(lambda) <= 1e-9) ++stall;
    else stall = 0;
  }
}

}  // namespace potts_forge::detail

namespace potts_forge {

MilpSolution solve_lp(const MilpProblem& problem, const SolverConfig& config) {
  problem.validate();
  detail::LpEngine engine(problem, config);
  const detail::LpStatus st = engine.solve();
  MilpSolution sol;
  sol.lp_iterations = engine.iterations();
  switch (st) {
    case detail::LpStatus::Optimal:
      sol.status = SolveStatus::Optimal;
      sol.x = engine.x();
      sol.objective = engine.objective();
      sol.root_bound = sol.objective;
      break;
    case detail::LpStatus::Infeasible: sol.status = SolveStatus::Infeasible; break;
    case detail::LpStatus::Unbounded:
      sol.status = SolveStatus::Unbounded;
      sol.objective = -std::numeric_limits<double>::infinity();
      break;
    case detail::LpStatus::IterationLimit: sol.status = SolveStatus::IterationLimit; break;
  }
  return sol;
}

}  // namespace potts_forge
