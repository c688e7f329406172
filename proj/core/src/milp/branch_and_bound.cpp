#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <queue>
#include <vector>

#include "lp_engine.hpp"
#include "potts_forge/error.hpp"
#include "potts_forge/milp.hpp"

namespace potts_forge {

namespace {

using detail::Basis;
using detail::LpEngine;
using detail::LpStatus;
using Clock = std::chrono::steady_clock;

struct BoundChange {
  int var;
  double lo;
  double hi;
};

using Stabilizer = std::vector<std::uint32_t>;

struct Node {
  double bound;
  int depth;
  long id;
  std::shared_ptr<const std::vector<BoundChange>> changes;
  std::shared_ptr<const Basis> basis;
  std::shared_ptr<const Stabilizer> group;
};

// Best bound first, then deeper nodes, then creation order.
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpProblem& problem, const SolverConfig& config, const SymmetryGroup* symmetry)
      : problem_(problem), config_(config), symmetry_(symmetry), engine_(problem, config), start_(Clock::now()) {
    is_int_.assign(static_cast<std::size_t>(problem.n_vars()), 0);
    for (int j : problem.integer_vars) is_int_[static_cast<std::size_t>(j)] = 1;
  }

  MilpSolution run();

 private:
  void apply(const std::vector<BoundChange>& changes) {
    engine_.reset_bounds();
    for (const BoundChange& c : changes) engine_.set_bounds(c.var, c.lo, c.hi);
  }
  bool out_of_time() const {
    return std::chrono::duration<double>(Clock::now() - start_).count() > config_.time_limit;
  }
  int priority(int j) const {
    return config_.branch_priority.empty() ? 0 : config_.branch_priority[static_cast<std::size_t>(j)];
  }
  int fractional_var(const std::vector<double>& x) const;
  void consider(std::vector<double> x);
  void dive(const std::vector<BoundChange>& changes);
  void branch(const Node& node, const std::vector<double>& x, double bound);
  bool pruned(double bound) const { return has_incumbent_ && bound >= incumbent_obj_ - config_.tol_gap; }

  const MilpProblem& problem_;
  const SolverConfig& config_;
  const SymmetryGroup* symmetry_;
  LpEngine engine_;
  Clock::time_point start_;
  std::vector<char> is_int_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  long next_id_ = 0;
  bool has_incumbent_ = false;
  double incumbent_obj_ = std::numeric_limits<double>::infinity();
  std::vector<double> incumbent_;
};

int BranchAndBound::fractional_var(const std::vector<double>& x) const {
  int best = -1;
  double best_frac = config_.tol_int;
  int best_prio = std::numeric_limits<int>::min();
  for (int j : problem_.integer_vars) {
    const double v = x[static_cast<std::size_t>(j)];
    const double frac = std::abs(v - std::round(v));
    if (frac <= config_.tol_int) continue;
    const int prio = priority(j);
    if (prio > best_prio || (prio == best_prio && (frac > best_frac || (frac == best_frac && j < best)))) {
      best = j;
      best_frac = frac;
      best_prio = prio;
    }
  }
  return best;
}

// Rounds the integer variables, re-solves for the continuous ones and keeps
// the point if it improves the incumbent (lexicographically smaller x breaks
// objective ties).
void BranchAndBound::consider(std::vector<double> x) {
  std::vector<std::pair<double, double>> saved;
  for (int j : problem_.integer_vars) {
    saved.emplace_back(engine_.lower(j), engine_.upper(j));
    const double v = std::round(x[static_cast<std::size_t>(j)]);
    engine_.set_bounds(j, v, v);
  }
  const Basis basis = engine_.basis();
  if (engine_.solve() == LpStatus::Optimal) {
    x = engine_.x();
    for (int j : problem_.integer_vars) x[static_cast<std::size_t>(j)] = std::round(x[static_cast<std::size_t>(j)]);
    const double obj = engine_.objective();
    if (max_violation(problem_, x) <= config_.tol_feas) {
      const bool better = !has_incumbent_ || obj < incumbent_obj_ - config_.tol_gap ||
                          (obj <= incumbent_obj_ + config_.tol_gap && x < incumbent_);
      if (better) {
        has_incumbent_ = true;
        incumbent_obj_ = obj;
        incumbent_ = std::move(x);
      }
    }
  }
  std::size_t k = 0;
  for (int j : problem_.integer_vars) {
    engine_.set_bounds(j, saved[k].first, saved[k].second);
    ++k;
  }
  engine_.set_basis(basis);
}

// Repeatedly fixes the fractional integer variable with the largest value
// (within the top priority) to its ceiling until the LP becomes integral, infeasible or dominated.
void BranchAndBound::dive(const std::vector<BoundChange>& changes) {
  const Basis basis = engine_.basis();
  const int max_depth = static_cast<int>(problem_.integer_vars.size());
  for (int depth = 0; depth < max_depth && !out_of_time(); ++depth) {
    const std::vector<double> x = engine_.x();
    int pick = -1;
    int pick_prio = std::numeric_limits<int>::min();
    double best = -std::numeric_limits<double>::infinity();
    for (int j : problem_.integer_vars) {
      const double v = x[static_cast<std::size_t>(j)];
      if (std::abs(v - std::round(v)) <= config_.tol_int) continue;
      const int prio = priority(j);
      if (prio > pick_prio || (prio == pick_prio && v > best)) {
        best = v;
        pick = j;
        pick_prio = prio;
      }
    }
    if (pick < 0) {
      consider(x);
      break;
    }
    engine_.set_bounds(pick, std::ceil(best), engine_.upper(pick));
    if (engine_.solve() != LpStatus::Optimal || pruned(engine_.objective())) break;
  }
  apply(changes);
  engine_.set_basis(basis);
}

void BranchAndBound::branch(const Node& node, const std::vector<double>& x, double bound) {
  const int j = fractional_var(x);
  const double v = x[static_cast<std::size_t>(j)];
  const auto basis = std::make_shared<const Basis>(engine_.basis());
  const bool binary = engine_.lower(j) == 0.0 && engine_.upper(j) == 1.0;

  auto up = std::make_shared<std::vector<BoundChange>>(*node.changes);
  up->push_back({j, std::ceil(v), engine_.upper(j)});
  auto down = std::make_shared<std::vector<BoundChange>>(*node.changes);
  std::shared_ptr<const Stabilizer> up_group, down_group;

  if (node.group) {
    // Stabilizer of j within the node's group, and the orbit of j.
    auto stab = std::make_shared<Stabilizer>();
    std::vector<int> orbit;
    std::vector<char> seen(static_cast<std::size_t>(problem_.n_vars()), 0);
    for (std::uint32_t g : *node.group) {
      const int img = symmetry_->image(g, j).var;
      if (img == j) stab->push_back(g);
      if (!seen[static_cast<std::size_t>(img)]) {
        seen[static_cast<std::size_t>(img)] = 1;
        orbit.push_back(img);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    up_group = stab;
    if (binary) {
      bool feasible = true;
      for (int i : orbit) {
        if (engine_.lower(i) > 0.0) feasible = false;
        down->push_back({i, engine_.lower(i), 0.0});
      }
      if (!feasible) down.reset();
      down_group = node.group;
    } else {
      down->push_back({j, engine_.lower(j), std::floor(v)});
      down_group = stab;
    }
  } else {
    down->push_back({j, engine_.lower(j), std::floor(v)});
  }

  open_.push(Node{bound, node.depth + 1, next_id_++, up, basis, up_group});
  if (down) open_.push(Node{bound, node.depth + 1, next_id_++, down, basis, down_group});
}

MilpSolution BranchAndBound::run() {
  MilpSolution sol;
  std::shared_ptr<const Stabilizer> root_group;
  if (symmetry_) {
    if (symmetry_->order() > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorCode::InvalidArgument, "symmetry group too large");
    }
    auto all = std::make_shared<Stabilizer>(symmetry_->order());
    for (std::size_t g = 0; g < all->size(); ++g) (*all)[g] = static_cast<std::uint32_t>(g);
    root_group = all;
  }
  open_.push(Node{-std::numeric_limits<double>::infinity(), 0, next_id_++,
                  std::make_shared<const std::vector<BoundChange>>(), nullptr, root_group});

  SolveStatus limit = SolveStatus::Optimal;
  bool lp_failure = false;
  while (!open_.empty()) {
    Node node = open_.top();
    open_.pop();
    if (pruned(node.bound)) continue;
    if (sol.nodes_explored >= config_.node_limit) {
      limit = SolveStatus::NodeLimit;
      break;
    }
    if (out_of_time()) {
      limit = SolveStatus::TimeLimit;
      break;
    }
    apply(*node.changes);
    if (node.basis) engine_.set_basis(*node.basis);
    const LpStatus st = engine_.solve();
    ++sol.nodes_explored;

    if (node.depth == 0) {
      if (st == LpStatus::Unbounded) {
        sol.status = SolveStatus::Unbounded;
        sol.objective = -std::numeric_limits<double>::infinity();
        sol.lp_iterations = engine_.iterations();
        return sol;
      }
      if (st == LpStatus::IterationLimit) {
        sol.status = SolveStatus::IterationLimit;
        sol.lp_iterations = engine_.iterations();
        return sol;
      }
      if (st == LpStatus::Optimal) sol.root_bound = engine_.objective();
    }
    if (st == LpStatus::IterationLimit) lp_failure = true;
    if (st != LpStatus::Optimal) continue;

    const double bound = engine_.objective();
    if (pruned(bound)) continue;
    const std::vector<double> x = engine_.x();
    if (fractional_var(x) < 0) {
      consider(x);
      continue;
    }
    const bool dive_now = (node.depth == 0 && config_.dive_at_root) ||
                          (config_.dive_frequency > 0 && sol.nodes_explored % config_.dive_frequency == 0);
    if (dive_now) dive(*node.changes);
    branch(node, x, bound);
  }

  sol.lp_iterations = engine_.iterations();
  if (has_incumbent_) {
    sol.x = incumbent_;
    sol.objective = incumbent_obj_;
  }
  if (limit != SolveStatus::Optimal) {
    sol.status = limit;
  } else if (lp_failure) {
    sol.status = SolveStatus::IterationLimit;
  } else {
    sol.status = has_incumbent_ ? SolveStatus::Optimal : SolveStatus::Infeasible;
  }
  return sol;
}

}  // namespace

MilpSolution solve_milp(const MilpProblem& problem, const SolverConfig& config, const SymmetryGroup* symmetry) {
  problem.validate();
  for (int j : problem.integer_vars) {
    const auto u = static_cast<std::size_t>(j);
    if (!std::isfinite(problem.lb[u]) || !std::isfinite(problem.ub[u]) || problem.lb[u] != std::round(problem.lb[u]) ||
        problem.ub[u] != std::round(problem.ub[u])) {
      throw Error(ErrorCode::InvalidArgument, "integer variable " + std::to_string(j) + " needs finite integral bounds");
    }
  }
  if (!config.branch_priority.empty() && config.branch_priority.size() != static_cast<std::size_t>(problem.n_vars())) {
    throw Error(ErrorCode::InvalidArgument, "branch_priority needs one entry per variable");
  }
  BranchAndBound bb(problem, config, symmetry);
  return bb.run();
}

}  // namespace potts_forge
