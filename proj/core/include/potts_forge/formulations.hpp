#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "potts_forge/milp.hpp"
#include "potts_forge/potts.hpp"
#include "potts_forge/spectrum.hpp"

namespace potts_forge {

/// M = max|U| sum_i (|H_i^max| + |H_i^min|) + max|V| sum_k (|J_k^max| + |J_k^min|).
double big_m(const PottsModel& model, const ParamBounds& bounds);

struct FormulationOptions {
  /// Largest state set a formulation may enumerate.
  StateIndex max_states = StateIndex{1} << 20;
};

/// Data-set formulation: x = [theta, E1, m]. The first data state is the
/// reference state whose energy every other data state is tied to.
struct DasProblem {
  MilpProblem milp;
  std::vector<StateIndex> data;     // user order
  std::vector<StateIndex> excited;  // ascending; m_i belongs to excited[i]
  int n_theta = 0;
  double M = 0.0;

  int e1_var() const noexcept { return n_theta; }
  int m_var(std::size_t i) const noexcept { return n_theta + 1 + static_cast<int>(i); }
};

/// Data-set formulation built from 0-based states. Throws Error(EmptyDataSet),
/// Error(InvalidState), Error(InvalidDataSet) for repeated states and
/// Error(DegenerateDataSet) when the data covers every state.
DasProblem build_das(const PottsModel& model, const ParamBounds& bounds, const std::vector<StateIndex>& data,
                     const FormulationOptions& options = {});
DasProblem build_das(const PottsModel& model, const ParamBounds& bounds, const std::vector<State>& data,
                     const FormulationOptions& options = {});

/// The data-set problem without the selection binaries: maximise E1 subject
/// only to E1 <= E(S) for every excited state. x = [theta, E1].
MilpProblem build_das_relaxed(const PottsModel& model, const ParamBounds& bounds, const std::vector<StateIndex>& data,
                              const FormulationOptions& options = {});

/// Ground-state multiplicity formulation: x = [theta, E0, E1, l, m] with one
/// l and one m binary per state.
struct GsmProblem {
  MilpProblem milp;
  int n_gs = 0;
  int n_theta = 0;
  StateIndex n_states = 0;
  double M = 0.0;

  int e0_var() const noexcept { return n_theta; }
  int e1_var() const noexcept { return n_theta + 1; }
  int l_var(StateIndex s) const noexcept { return n_theta + 2 + static_cast<int>(s); }
  int m_var(StateIndex s) const noexcept { return n_theta + 2 + static_cast<int>(n_states + s); }
};

/// Throws Error(InvalidArgument) unless 1 <= n_gs <= N_TS - 1.
GsmProblem build_gsm(const PottsModel& model, const ParamBounds& bounds, int n_gs,
                     const FormulationOptions& options = {});

struct DasMode {
  std::vector<StateIndex> data;
};
struct GsmMode {
  int n_gs = 0;
};
using EstimationMode = std::variant<DasMode, GsmMode>;

/// Parameters read from a solver point plus the oracle's view of them.
struct EstimationResult {
  Params params;
  double E0 = 0.0;
  double E1 = 0.0;
  double delta_E = 0.0;
  std::vector<StateIndex> ground_states;
  bool accepted = false;
  /// Why a result was rejected; empty when accepted.
  std::string reason;
  SolveStatus status = SolveStatus::Infeasible;
  /// Solver objective (minus the optimised band gap).
  double objective = 0.0;
  double root_bound = 0.0;
  long nodes_explored = 0;
  long lp_iterations = 0;
  /// Order of the symmetry group handed to the solver (1 when none).
  std::size_t symmetry_order = 1;
};

/// Reads theta from the solution, recomputes the spectrum and accepts iff the
/// solve was optimal, the band gap is positive and the ground set matches
/// (data set exactly for DAS, multiplicity for GSM).
EstimationResult extract_and_validate(const PottsModel& model, const ParamBounds& bounds,
                                      const MilpSolution& solution, const EstimationMode& mode);

struct EstimateOptions {
  SolverConfig solver;
  FormulationOptions formulation;
  /// Hand the model's symmetry group to the solver for orbital branching.
  bool use_symmetry = true;
};

EstimationResult estimate_das(const PottsModel& model, const ParamBounds& bounds, const std::vector<StateIndex>& data,
                              const EstimateOptions& options = {});
EstimationResult estimate_gsm(const PottsModel& model, const ParamBounds& bounds, int n_gs,
                              const EstimateOptions& options = {});

/// Exhaustive reference for the multiplicity problem: solves the relaxed
/// data-set LP for every n_gs-subset of states and keeps the largest band
/// gap (ties go to the lexicographically smallest ground set). Throws
/// Error(TooLarge) when binomial(N_TS, n_gs) exceeds `cap`.
EstimationResult gsm_bruteforce(const PottsModel& model, const ParamBounds& bounds, int n_gs,
                                std::size_t cap = 100000, const SolverConfig& config = {});

}  // namespace potts_forge
