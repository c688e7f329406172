#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "potts_forge/graph.hpp"

namespace potts_forge {

/// Complete labelling of a graph: one 0-based label per vertex. For Ising
/// models label 0 is spin +1 and label 1 is spin -1 (the fixed label map).
using State = std::vector<int>;

/// Mixed-radix position of a State in the set of all states, vertex 0 least
/// significant: index = sum_i s_i * N_L^i.
using StateIndex = std::uint64_t;

/// Potts energy model: a graph, a label count and the label energy tables U
/// (per vertex) and V (per edge, symmetric).
class PottsModel {
 public:
  PottsModel(Graph graph, int n_labels, std::vector<double> vertex_energy,
             std::vector<std::vector<double>> pair_energy);

  const Graph& graph() const noexcept { return graph_; }
  int n_labels() const noexcept { return n_labels_; }
  int n_vertices() const noexcept { return graph_.n_vertices(); }
  int n_edges() const noexcept { return graph_.n_edges(); }
  /// Length of theta = [H, J].
  int n_params() const noexcept { return graph_.n_vertices() + graph_.n_edges(); }

  double U(int label) const { return vertex_energy_[static_cast<std::size_t>(label)]; }
  double V(int a, int b) const {
    return pair_energy_[static_cast<std::size_t>(a * n_labels_ + b)];
  }
  const std::vector<double>& U_table() const noexcept { return vertex_energy_; }
  std::vector<std::vector<double>> V_table() const;

  /// N_L^N_V. Throws Error(TooLarge) when it does not fit in 62 bits.
  StateIndex n_states() const;

  bool is_valid(const State& state) const noexcept;

 private:
  Graph graph_;
  int n_labels_;
  std::vector<double> vertex_energy_;
  std::vector<double> pair_energy_;  // row-major n_labels x n_labels
};

/// Field strengths H (one per vertex) and interaction strengths J (one per
/// edge, in edge-index order).
struct Params {
  std::vector<double> H;
  std::vector<double> J;

  /// theta = [H_1..H_NV, J_1..J_NC].
  std::vector<double> theta() const;
  static Params from_theta(const PottsModel& model, std::span<const double> theta);
  static Params zeros(const PottsModel& model);

  friend bool operator==(const Params&, const Params&) = default;
};

/// Box bounds on H and J.
struct ParamBounds {
  std::vector<double> H_min, H_max;
  std::vector<double> J_min, J_max;

  /// |H_i| <= h and |J_k| <= j for every vertex and edge.
  static ParamBounds symmetric(const Graph& graph, double h, double j);
  /// Throws Error(ModelMismatch) on length mismatch and
  /// Error(InvalidArgument) on min > max or non-finite entries.
  void validate(const PottsModel& model) const;
  std::vector<double> lower() const;
  std::vector<double> upper() const;
  Params clamp(const Params& params) const;
};

/// Ising preset: N_L = 2, U = (+1, -1), V = [[1, -1], [-1, 1]].
PottsModel ising(const Graph& graph);

/// Spin value of an Ising label under the fixed map 0 -> +1, 1 -> -1.
constexpr int ising_spin(int label) noexcept { return label == 0 ? 1 : -1; }

double energy(const PottsModel& model, const Params& params, const State& state);

/// epsilon(S) = [U(s_1)..U(s_NV), V(s_pi1(1), s_pi2(1))..]; energy = epsilon . theta.
std::vector<double> feature_row(const PottsModel& model, const State& state);

/// Writes epsilon(decode(index)) into `out` (length n_params) without
/// allocating. No range checks.
void feature_row_into(const PottsModel& model, StateIndex index, std::span<double> out);

StateIndex encode(const PottsModel& model, const State& state);
State decode(const PottsModel& model, StateIndex index);

/// All feature rows, row-major n_states x n_params. Throws Error(TooLarge)
/// when n_states exceeds max_states.
std::vector<double> feature_table(const PottsModel& model, StateIndex max_states = StateIndex{1} << 20);

}  // namespace potts_forge
