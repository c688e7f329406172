#pragma once

#include <span>
#include <vector>

#include "potts_forge/potts.hpp"

namespace potts_forge {

struct SpectrumOptions {
  /// Enumeration guard; compute_spectrum throws Error(TooLarge) above it.
  StateIndex max_states = StateIndex{1} << 24;
  /// Worker count for enumeration. Results are bitwise identical for any value.
  int threads = 1;
};

/// Every state energy plus the ground/excited split.
///
/// States within `tolerance` of E0 form the ground set. Boltzmann quantities
/// treat ground-state energies as exactly E0, so a degenerate ground set is
/// not split by rounding noise.
struct Spectrum {
  std::vector<double> energies;     // indexed by StateIndex
  double E0 = 0.0;
  double E1 = 0.0;
  double delta_E = 0.0;
  std::vector<StateIndex> ground;   // sorted
  StateIndex n_excited = 0;
  /// True when every state is a ground state (N_ES = 0); delta_E is then 0.
  bool fully_degenerate = false;
  double tolerance = 0.0;
  int threads = 1;

  StateIndex n_states() const noexcept { return static_cast<StateIndex>(energies.size()); }
  StateIndex n_ground() const noexcept { return static_cast<StateIndex>(ground.size()); }
  bool is_ground(StateIndex index) const;
  /// E(S) - E0, exactly zero on the ground set.
  double excitation(StateIndex index) const;
};

/// tol_degeneracy = 1e-9 * max(1, |E0|).
double degeneracy_tolerance(double e0) noexcept;

Spectrum compute_spectrum(const PottsModel& model, const Params& params, const SpectrumOptions& options = {});

/// log Z(beta), evaluated as -beta*E0 + log(sum exp(-beta (E - E0))).
double log_partition_function(const Spectrum& spectrum, double beta);
/// Z(beta); may overflow to +inf for large beta*|E0| (use the log form).
double partition_function(const Spectrum& spectrum, double beta);
/// Boltzmann probability p(S | theta, beta).
double probability(const Spectrum& spectrum, StateIndex index, double beta);
/// Boltzmann expectation of the energy.
double expected_energy(const Spectrum& spectrum, double beta);

/// Negative log-likelihood eta = -sum_{S in data} log p(S). Throws
/// Error(EmptyDataSet) for empty data and Error(InvalidState) for indices
/// outside the state set.
double nll(const Spectrum& spectrum, std::span<const StateIndex> data, double beta);

/// eta - N_DS log N_GS, computed with log1p so that it stays accurate when
/// eta sits within rounding distance of its low-temperature floor.
double nll_excess(const Spectrum& spectrum, std::span<const StateIndex> data, double beta);

/// log(eta - N_DS log N_GS) for data contained in the ground set; finite for
/// any beta because the excited-state sum is carried in log space. Throws
/// Error(InvalidDataSet) when a data state is not a ground state.
double log_nll_excess(const Spectrum& spectrum, std::span<const StateIndex> data, double beta);

/// d eta / d beta = sum_{S in data} E(S) - N_DS E_p[E]; equals
/// N_GS (E0 - E_p[E]) when data is the ground set.
double nll_beta_derivative(const Spectrum& spectrum, std::span<const StateIndex> data, double beta);

/// xi(beta) = N_GS log(N_GS + N_ES exp(-beta dE)), the upper bound on eta for
/// a model whose ground set is the data set. Throws Error(DegenerateGap) for
/// delta_E <= 0 and Error(InvalidArgument) for n_gs < 1, n_es < 0, beta < 0.
double nll_upper_bound(double n_gs, double n_es, double delta_E, double beta);

/// Inverse temperature past which eta - N_GS log N_GS < epsilon:
/// (log(N_ES / N_GS) - log(exp(epsilon / N_GS) - 1)) / delta_E.
double beta_star(double n_gs, double n_es, double delta_E, double epsilon);

/// Exact gradient of eta with respect to theta = [H, J]:
/// beta * sum_{S in data} (epsilon(S) - E_p[epsilon]).
std::vector<double> nll_gradient(const PottsModel& model, const Params& params, std::span<const StateIndex> data,
                                 double beta, const SpectrumOptions& options = {});

struct TrainOptions {
  int steps = 5000;
  double learning_rate = 1.0;
  /// Stop once the projected step moves theta by less than this (max norm).
  double step_tolerance = 1e-13;
  SpectrumOptions spectrum;
};

/// Projected gradient descent on eta at fixed beta starting from theta = 0:
/// theta <- clip(theta - lr * grad, bounds), halving lr whenever a step would
/// increase eta. Deterministic.
Params train_nll(const PottsModel& model, const ParamBounds& bounds, std::span<const StateIndex> data, double beta,
                 const TrainOptions& options = {});

/// Norm of the projected gradient (zero at a box-constrained stationary point).
double projected_gradient_norm(const ParamBounds& bounds, const Params& params, std::span<const double> gradient);

}  // namespace potts_forge
