#include "potts_forge/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "potts_forge/error.hpp"
#include "potts_forge/model_symmetry.hpp"

namespace potts_forge {

namespace {

double max_abs(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

StateIndex checked_states(const PottsModel& model, const FormulationOptions& options) {
  const StateIndex n = model.n_states();
  if (n > options.max_states) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " states exceed the formulation budget");
  }
  return n;
}

void check_data(const std::vector<StateIndex>& data, StateIndex n_states) {
  if (data.empty()) throw Error(ErrorCode::EmptyDataSet, "data set is empty");
  std::vector<StateIndex> sorted(data);
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= n_states) {
    throw Error(ErrorCode::InvalidState, "data state index " + std::to_string(sorted.back()) + " out of range");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidDataSet, "data set contains a repeated state");
  }
  if (sorted.size() == n_states) {
    throw Error(ErrorCode::DegenerateDataSet, "data set covers every state; no excited state is left");
  }
}

std::vector<StateIndex> excited_states(const std::vector<StateIndex>& data, StateIndex n_states) {
  std::vector<char> in_data(static_cast<std::size_t>(n_states), 0);
  for (StateIndex s : data) in_data[static_cast<std::size_t>(s)] = 1;
  std::vector<StateIndex> out;
  for (StateIndex s = 0; s < n_states; ++s)
    if (!in_data[static_cast<std::size_t>(s)]) out.push_back(s);
  return out;
}

// Common pieces of both data-set problems: cost on theta from the reference
// state, the tie rows for the other data states and the theta box.
void das_common(const PottsModel& model, const ParamBounds& bounds, const std::vector<StateIndex>& data,
                int n_vars, MilpProblem& p) {
  const int nt = model.n_params();
  const auto unt = static_cast<std::size_t>(nt);
  p.c.assign(static_cast<std::size_t>(n_vars), 0.0);
  std::vector<double> ref(unt), row(unt);
  feature_row_into(model, data.front(), ref);
  std::copy(ref.begin(), ref.end(), p.c.begin());
  p.c[unt] = -1.0;
  for (std::size_t i = 1; i < data.size(); ++i) {
    feature_row_into(model, data[i], row);
    const int r = p.A_eq.add_row();
    for (int j = 0; j < nt; ++j) {
      const double v = row[static_cast<std::size_t>(j)] - ref[static_cast<std::size_t>(j)];
      if (v != 0.0) p.A_eq.add(r, j, v);
    }
    p.b_eq.push_back(0.0);
  }
  p.lb.assign(static_cast<std::size_t>(n_vars), 0.0);
  p.ub.assign(static_cast<std::size_t>(n_vars), 1.0);
  const auto lo = bounds.lower();
  const auto hi = bounds.upper();
  std::copy(lo.begin(), lo.end(), p.lb.begin());
  std::copy(hi.begin(), hi.end(), p.ub.begin());
}

}  // namespace

double big_m(const PottsModel& model, const ParamBounds& bounds) {
  bounds.validate(model);
  double h = 0.0, j = 0.0;
  for (std::size_t i = 0; i < bounds.H_min.size(); ++i) h += std::abs(bounds.H_max[i]) + std::abs(bounds.H_min[i]);
  for (std::size_t k = 0; k < bounds.J_min.size(); ++k) j += std::abs(bounds.J_max[k]) + std::abs(bounds.J_min[k]);
  double v = 0.0;
  for (const auto& r : model.V_table()) v = std::max(v, max_abs(r));
  return max_abs(model.U_table()) * h + v * j;
}

DasProblem build_das(const PottsModel& model, const ParamBounds& bounds, const std::vector<StateIndex>& data,
                     const FormulationOptions& options) {
  bounds.validate(model);
  const StateIndex n_states = checked_states(model, options);
  check_data(data, n_states);

  DasProblem das;
  das.data = data;
  das.excited = excited_states(data, n_states);
  das.n_theta = model.n_params();
  das.M = big_m(model, bounds);
  const int nt = das.n_theta;
  const double M = das.M;
  const int n_vars = nt + 1 + static_cast<int>(das.excited.size());

  MilpProblem& p = das.milp;
  p.A = SparseMatrix(0, n_vars);
  p.A_eq = SparseMatrix(0, n_vars);
  // Selection row first, then the ties to the reference state.
  {
    const int r = p.A_eq.add_row();
    for (std::size_t i = 0; i < das.excited.size(); ++i) p.A_eq.add(r, das.m_var(i), 1.0);
    p.b_eq.push_back(1.0);
  }
  das_common(model, bounds, data, n_vars, p);

  std::vector<double> row(static_cast<std::size_t>(nt));
  for (std::size_t i = 0; i < das.excited.size(); ++i) {
    feature_row_into(model, das.excited[i], row);
    // eps(S_i) theta - E1 + M m_i <= M
    int r = p.A.add_row();
    for (int j = 0; j < nt; ++j)
      if (row[static_cast<std::size_t>(j)] != 0.0) p.A.add(r, j, row[static_cast<std::size_t>(j)]);
    p.A.add(r, das.e1_var(), -1.0);
    p.A.add(r, das.m_var(i), M);
    p.b.push_back(M);
    // -eps(S_i) theta + E1 <= 0
    r = p.A.add_row();
    for (int j = 0; j < nt; ++j)
      if (row[static_cast<std::size_t>(j)] != 0.0) p.A.add(r, j, -row[static_cast<std::size_t>(j)]);
    p.A.add(r, das.e1_var(), 1.0);
    p.b.push_back(0.0);
  }
  p.lb[static_cast<std::size_t>(das.e1_var())] = -M;
  p.ub[static_cast<std::size_t>(das.e1_var())] = M;
  for (std::size_t i = 0; i < das.excited.size(); ++i) p.integer_vars.push_back(das.m_var(i));
  return das;
}

DasProblem build_das(const PottsModel& model, const ParamBounds& bounds, const std::vector<State>& data,
                     const FormulationOptions& options) {
  std::vector<StateIndex> idx;
  idx.reserve(data.size());
  for (const State& s : data) idx.push_back(encode(model, s));
  return build_das(model, bounds, idx, options);
}

MilpProblem build_das_relaxed(const PottsModel& model, const ParamBounds& bounds, const std::vector<StateIndex>& data,
                              const FormulationOptions& options) {
  bounds.validate(model);
  const StateIndex n_states = checked_states(model, options);
  check_data(data, n_states);
  const int nt = model.n_params();
  const double M = big_m(model, bounds);
  const int n_vars = nt + 1;

  MilpProblem p;
  p.A = SparseMatrix(0, n_vars);
  p.A_eq = SparseMatrix(0, n_vars);
  das_common(model, bounds, data, n_vars, p);
  std::vector<double> row(static_cast<std::size_t>(nt));
  for (StateIndex s : excited_states(data, n_states)) {
    feature_row_into(model, s, row);
    const int r = p.A.add_row();
    for (int j = 0; j < nt; ++j)
      if (row[static_cast<std::size_t>(j)] != 0.0) p.A.add(r, j, -row[static_cast<std::size_t>(j)]);
    p.A.add(r, nt, 1.0);
    p.b.push_back(0.0);
  }
  p.lb[static_cast<std::size_t>(nt)] = -M;
  p.ub[static_cast<std::size_t>(nt)] = M;
  return p;
}

GsmProblem build_gsm(const PottsModel& model, const ParamBounds& bounds, int n_gs, const FormulationOptions& options) {
  bounds.validate(model);
  const StateIndex n_states = checked_states(model, options);
  if (n_gs < 1 || static_cast<StateIndex>(n_gs) >= n_states) {
    throw Error(ErrorCode::InvalidArgument,
                "n_gs must lie in [1, " + std::to_string(n_states - 1) + "], got " + std::to_string(n_gs));
  }
  GsmProblem gsm;
  gsm.n_gs = n_gs;
  gsm.n_theta = model.n_params();
  gsm.n_states = n_states;
  gsm.M = big_m(model, bounds);
  const int nt = gsm.n_theta;
  const double M = gsm.M;
  const int n_vars = nt + 2 + 2 * static_cast<int>(n_states);

  MilpProblem& p = gsm.milp;
  p.c.assign(static_cast<std::size_t>(n_vars), 0.0);
  p.c[static_cast<std::size_t>(gsm.e0_var())] = 1.0;
  p.c[static_cast<std::size_t>(gsm.e1_var())] = -1.0;
  p.A = SparseMatrix(0, n_vars);
  p.A_eq = SparseMatrix(0, n_vars);

  std::vector<double> row(static_cast<std::size_t>(nt));
  auto add_theta = [&](int r, double sign) {
    for (int j = 0; j < nt; ++j)
      if (row[static_cast<std::size_t>(j)] != 0.0) p.A.add(r, j, sign * row[static_cast<std::size_t>(j)]);
  };
  for (StateIndex s = 0; s < n_states; ++s) {
    feature_row_into(model, s, row);
    const int l = gsm.l_var(s);
    const int m = gsm.m_var(s);
    // -eps theta + E0 <= 0
    int r = p.A.add_row();
    add_theta(r, -1.0);
    p.A.add(r, gsm.e0_var(), 1.0);
    p.b.push_back(0.0);
    // eps theta - E0 + M l <= M
    r = p.A.add_row();
    add_theta(r, 1.0);
    p.A.add(r, gsm.e0_var(), -1.0);
    p.A.add(r, l, M);
    p.b.push_back(M);
    // -eps theta + E1 - M l <= 0
    r = p.A.add_row();
    add_theta(r, -1.0);
    p.A.add(r, gsm.e1_var(), 1.0);
    p.A.add(r, l, -M);
    p.b.push_back(0.0);
    // eps theta - E1 + M m <= M
    r = p.A.add_row();
    add_theta(r, 1.0);
    p.A.add(r, gsm.e1_var(), -1.0);
    p.A.add(r, m, M);
    p.b.push_back(M);
    // l + m <= 1
    r = p.A.add_row();
    p.A.add(r, l, 1.0);
    p.A.add(r, m, 1.0);
    p.b.push_back(1.0);
  }
  const int rl = p.A_eq.add_row();
  const int rm = p.A_eq.add_row();
  for (StateIndex s = 0; s < n_states; ++s) {
    p.A_eq.add(rl, gsm.l_var(s), 1.0);
    p.A_eq.add(rm, gsm.m_var(s), 1.0);
  }
  p.b_eq = {static_cast<double>(n_gs), 1.0};

  p.lb.assign(static_cast<std::size_t>(n_vars), 0.0);
  p.ub.assign(static_cast<std::size_t>(n_vars), 1.0);
  const auto lo = bounds.lower();
  const auto hi = bounds.upper();
  std::copy(lo.begin(), lo.end(), p.lb.begin());
  std::copy(hi.begin(), hi.end(), p.ub.begin());
  for (int v : {gsm.e0_var(), gsm.e1_var()}) {
    p.lb[static_cast<std::size_t>(v)] = -M;
    p.ub[static_cast<std::size_t>(v)] = M;
  }
  for (StateIndex s = 0; s < n_states; ++s) p.integer_vars.push_back(gsm.l_var(s));
  for (StateIndex s = 0; s < n_states; ++s) p.integer_vars.push_back(gsm.m_var(s));
  return gsm;
}

EstimationResult extract_and_validate(const PottsModel& model, const ParamBounds& bounds, const MilpSolution& solution,
                                      const EstimationMode& mode) {
  EstimationResult res;
  res.status = solution.status;
  res.objective = solution.objective;
  res.root_bound = solution.root_bound;
  res.nodes_explored = solution.nodes_explored;
  res.lp_iterations = solution.lp_iterations;
  if (!solution.has_solution()) {
    res.reason = "solver returned no point (" + std::string(to_string(solution.status)) + ")";
    return res;
  }
  // Vertex solutions can sit a rounding error outside the box.
  res.params = bounds.clamp(Params::from_theta(model, solution.x));
  const Spectrum spec = compute_spectrum(model, res.params);
  res.E0 = spec.E0;
  res.E1 = spec.E1;
  res.delta_E = spec.delta_E;
  res.ground_states = spec.ground;

  if (solution.status != SolveStatus::Optimal) {
    res.reason = "solver stopped with status " + std::string(to_string(solution.status));
  } else if (spec.fully_degenerate || !(spec.delta_E > spec.tolerance)) {
    res.reason = "band gap is not positive";
  } else if (const auto* das = std::get_if<DasMode>(&mode)) {
    std::vector<StateIndex> want(das->data);
    std::sort(want.begin(), want.end());
    if (want != spec.ground) res.reason = "ground set differs from the data set";
  } else if (const auto* gsm = std::get_if<GsmMode>(&mode)) {
    if (spec.n_ground() != static_cast<StateIndex>(gsm->n_gs)) {
      res.reason = "ground-state multiplicity " + std::to_string(spec.n_ground()) + " differs from " +
                   std::to_string(gsm->n_gs);
    }
  }
  res.accepted = res.reason.empty();
  return res;
}

EstimationResult estimate_das(const PottsModel& model, const ParamBounds& bounds, const std::vector<StateIndex>& data,
                              const EstimateOptions& options) {
  const DasProblem das = build_das(model, bounds, data, options.formulation);
  const MilpSolution sol = solve_milp(das.milp, options.solver);
  return extract_and_validate(model, bounds, sol, DasMode{data});
}

EstimationResult estimate_gsm(const PottsModel& model, const ParamBounds& bounds, int n_gs,
                              const EstimateOptions& options) {
  const GsmProblem gsm = build_gsm(model, bounds, n_gs, options.formulation);
  // Ground-set indicators first: once l is integral the m-relaxed bound is
  // already exact.
  SolverConfig config = options.solver;
  if (config.branch_priority.empty()) {
    config.branch_priority.assign(static_cast<std::size_t>(gsm.milp.n_vars()), 0);
    for (StateIndex s = 0; s < gsm.n_states; ++s) config.branch_priority[static_cast<std::size_t>(gsm.l_var(s))] = 1;
  }
  MilpSolution sol;
  std::size_t order = 1;
  if (options.use_symmetry) {
    const ModelSymmetry sym = ModelSymmetry::detect(model, bounds);
    order = sym.order();
    sol = solve_milp(gsm.milp, config, order > 1 ? &sym : nullptr);
  } else {
    sol = solve_milp(gsm.milp, config);
  }
  EstimationResult res = extract_and_validate(model, bounds, sol, GsmMode{n_gs});
  res.symmetry_order = order;
  return res;
}

EstimationResult gsm_bruteforce(const PottsModel& model, const ParamBounds& bounds, int n_gs, std::size_t cap,
                                const SolverConfig& config) {
  bounds.validate(model);
  const StateIndex n_states = model.n_states();
  if (n_gs < 1 || static_cast<StateIndex>(n_gs) >= n_states) {
    throw Error(ErrorCode::InvalidArgument, "n_gs out of range");
  }
  // binomial(N_TS, n_gs) with an early exit past the cap.
  double count = 1.0;
  for (int k = 0; k < n_gs; ++k) {
    count = count * static_cast<double>(n_states - static_cast<StateIndex>(k)) / static_cast<double>(k + 1);
    if (count > static_cast<double>(cap)) {
      throw Error(ErrorCode::TooLarge, "more than " + std::to_string(cap) + " candidate ground sets");
    }
  }

  EstimationResult best;
  best.status = SolveStatus::Optimal;
  best.reason = "no candidate ground set has a positive band gap";
  double best_gap = 0.0;
  std::vector<StateIndex> set(static_cast<std::size_t>(n_gs));
  for (int k = 0; k < n_gs; ++k) set[static_cast<std::size_t>(k)] = static_cast<StateIndex>(k);
  for (;;) {
    const MilpProblem lp = build_das_relaxed(model, bounds, set);
    const MilpSolution sol = solve_lp(lp, config);
    if (sol.status == SolveStatus::Optimal && -sol.objective > best_gap + 1e-9) {
      EstimationResult r = extract_and_validate(model, bounds, sol, DasMode{set});
      if (r.accepted) {
        best_gap = -sol.objective;
        best = std::move(r);
      }
    }
    // Next subset in lexicographic order.
    int k = n_gs - 1;
    while (k >= 0 && set[static_cast<std::size_t>(k)] == n_states - static_cast<StateIndex>(n_gs - k)) --k;
    if (k < 0) break;
    ++set[static_cast<std::size_t>(k)];
    for (int t = k + 1; t < n_gs; ++t) set[static_cast<std::size_t>(t)] = set[static_cast<std::size_t>(t) - 1] + 1;
  }
  best.objective = -best_gap;
  best.nodes_explored = 0;
  return best;
}

}  // namespace potts_forge
