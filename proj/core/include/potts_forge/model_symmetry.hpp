#pragma once

#include <cstddef>
#include <vector>

#include "potts_forge/milp.hpp"
#include "potts_forge/potts.hpp"

namespace potts_forge {

/// Symmetries of a bounded Potts model: graph automorphisms pi that preserve
/// the parameter boxes, combined with per-vertex label permutations tau_i
/// satisfying U(tau(s)) = sigma U(s) and V(tau_a s, tau_b t) = rho V(s, t).
///
/// An element maps a state S to S' with S'_{pi(i)} = tau_i(S_i) and
/// parameters by H'_{pi(i)} = sigma_i H_i, J'_{pi(k)} = rho_k J_k, which
/// leaves every energy unchanged. As a SymmetryGroup it acts on the variable
/// layout of the multiplicity formulation [theta, E0, E1, l, m].
class ModelSymmetry : public SymmetryGroup {
 public:
  /// Falls back to fewer generators (automorphisms only, then the trivial
  /// group) when the full group would exceed `max_order` elements.
  static ModelSymmetry detect(const PottsModel& model, const ParamBounds& bounds,
                              std::size_t max_order = std::size_t{1} << 22);

  std::size_t order() const override;
  VarImage image(std::size_t element, int var) const override;

  StateIndex map_state(std::size_t element, StateIndex index) const;
  Params map_params(std::size_t element, const Params& params) const;

  std::size_t n_automorphisms() const noexcept { return automorphisms_.size(); }
  std::size_t n_label_maps() const noexcept { return label_maps_total_; }
  const std::vector<std::vector<int>>& automorphisms() const noexcept { return automorphisms_; }

 private:
  struct LabelMap {
    std::vector<int> perm;
    double sigma;
  };
  struct Decoded {
    std::size_t aut;
    std::size_t local;
  };
  Decoded decode(std::size_t element) const;
  int label_map_of(std::size_t local, int vertex) const;

  int n_vertices_ = 0;
  int n_labels_ = 0;
  int n_theta_ = 0;
  StateIndex n_states_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> automorphisms_;   // vertex permutations
  std::vector<std::vector<int>> edge_maps_;       // per automorphism
  std::vector<LabelMap> label_maps_;
  std::vector<double> rho_;                       // rho[a * |P| + b]
  std::size_t label_maps_total_ = 1;              // |P|^N_V
  std::vector<StateIndex> radix_;                 // N_L^i
};

/// Vertex permutations pi with {pi(a), pi(b)} an edge iff {a, b} is. Stops
/// after `cap` results.
std::vector<std::vector<int>> graph_automorphisms(const Graph& graph, std::size_t cap);

}  // namespace potts_forge
