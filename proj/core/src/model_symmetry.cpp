#include "potts_forge/model_symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "potts_forge/error.hpp"

namespace potts_forge {

namespace {

constexpr int kMaxGaugeLabels = 8;

bool same_box(double lo_a, double hi_a, double lo_b, double hi_b) { return lo_a == lo_b && hi_a == hi_b; }

/// sign s in {+1, -1} with f(x) = s g(x) for all x, or 0 when none exists.
template <class F, class G>
double sign_relation(int n, F f, G g) {
  bool plus = true, minus = true;
  for (int x = 0; x < n; ++x) {
    if (f(x) != g(x)) plus = false;
    if (f(x) != -g(x)) minus = false;
  }
  return plus ? 1.0 : (minus ? -1.0 : 0.0);
}

}  // namespace

std::vector<std::vector<int>> graph_automorphisms(const Graph& graph, std::size_t cap) {
  const int n = graph.n_vertices();
  std::vector<std::vector<int>> out;
  std::vector<int> pi(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  auto extend = [&](auto&& self, int i) -> void {
    if (out.size() >= cap) return;
    if (i == n) {
      out.push_back(pi);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)] || graph.degree(v) != graph.degree(i)) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = graph.adjacent(i, j) == graph.adjacent(v, pi[static_cast<std::size_t>(j)]);
      if (!ok) continue;
      pi[static_cast<std::size_t>(i)] = v;
      used[static_cast<std::size_t>(v)] = 1;
      self(self, i + 1);
      used[static_cast<std::size_t>(v)] = 0;
      pi[static_cast<std::size_t>(i)] = -1;
    }
  };
  extend(extend, 0);
  return out;
}

ModelSymmetry ModelSymmetry::detect(const PottsModel& model, const ParamBounds& bounds, std::size_t max_order) {
  bounds.validate(model);
  const Graph& g = model.graph();
  ModelSymmetry sym;
  sym.n_vertices_ = model.n_vertices();
  sym.n_labels_ = model.n_labels();
  sym.n_theta_ = model.n_params();
  sym.n_states_ = model.n_states();
  for (const Edge& e : g.edges()) sym.edges_.emplace_back(e.first, e.second);
  StateIndex r = 1;
  for (int i = 0; i < sym.n_vertices_; ++i) {
    sym.radix_.push_back(r);
    r *= static_cast<StateIndex>(sym.n_labels_);
  }

  // Automorphisms that keep every parameter box in place.
  const auto nv = static_cast<std::size_t>(sym.n_vertices_);
  for (auto& pi : graph_automorphisms(g, max_order + 1)) {
    bool ok = true;
    for (std::size_t i = 0; i < nv && ok; ++i) {
      const auto t = static_cast<std::size_t>(pi[i]);
      ok = same_box(bounds.H_min[i], bounds.H_max[i], bounds.H_min[t], bounds.H_max[t]);
    }
    std::vector<int> emap;
    for (std::size_t k = 0; k < sym.edges_.size() && ok; ++k) {
      const auto idx = g.edge_index(pi[static_cast<std::size_t>(sym.edges_[k].first)], pi[static_cast<std::size_t>(sym.edges_[k].second)]);
      const auto t = static_cast<std::size_t>(*idx);
      ok = same_box(bounds.J_min[k], bounds.J_max[k], bounds.J_min[t], bounds.J_max[t]);
      emap.push_back(*idx);
    }
    if (!ok) continue;
    sym.automorphisms_.push_back(std::move(pi));
    sym.edge_maps_.push_back(std::move(emap));
  }

  // Label permutations scaling U and V by signs.
  const int nl = sym.n_labels_;
  std::vector<int> perm(static_cast<std::size_t>(nl));
  std::iota(perm.begin(), perm.end(), 0);
  sym.label_maps_.push_back({perm, 1.0});
  if (nl <= kMaxGaugeLabels) {
    while (std::next_permutation(perm.begin(), perm.end())) {
      const double sigma = sign_relation(nl, [&](int s) { return model.U(perm[static_cast<std::size_t>(s)]); },
                                         [&](int s) { return model.U(s); });
      if (sigma != 0.0) sym.label_maps_.push_back({perm, sigma});
    }
  }
  bool symmetric_boxes = true;
  for (std::size_t i = 0; i < nv; ++i) symmetric_boxes = symmetric_boxes && bounds.H_min[i] == -bounds.H_max[i];
  for (std::size_t k = 0; k < sym.edges_.size(); ++k) symmetric_boxes = symmetric_boxes && bounds.J_min[k] == -bounds.J_max[k];

  auto build_rho = [&]() {
    const std::size_t np = sym.label_maps_.size();
    sym.rho_.assign(np * np, 0.0);
    bool needs_sign_flip = false;
    for (std::size_t a = 0; a < np; ++a) {
      if (sym.label_maps_[a].sigma < 0) needs_sign_flip = true;
      for (std::size_t b = 0; b < np; ++b) {
        const auto& pa = sym.label_maps_[a].perm;
        const auto& pb = sym.label_maps_[b].perm;
        const double rho = sign_relation(
            nl * nl,
            [&](int st) { return model.V(pa[static_cast<std::size_t>(st / nl)], pb[static_cast<std::size_t>(st % nl)]); },
            [&](int st) { return model.V(st / nl, st % nl); });
        if (rho == 0.0) return false;
        if (rho < 0) needs_sign_flip = true;
        sym.rho_[a * np + b] = rho;
      }
    }
    return !needs_sign_flip || symmetric_boxes;
  };
  if (!build_rho()) {
    sym.label_maps_.resize(1);
    build_rho();
  }

  auto total = [&]() {
    std::size_t local = 1;
    for (int i = 0; i < sym.n_vertices_; ++i) {
      if (local > max_order / sym.label_maps_.size() + 1) return max_order + 1;
      local *= sym.label_maps_.size();
    }
    sym.label_maps_total_ = local;
    return local > max_order / sym.automorphisms_.size() + 1 ? max_order + 1 : local * sym.automorphisms_.size();
  };
  if (total() > max_order) {
    sym.label_maps_.resize(1);
    build_rho();
  }
  if (total() > max_order) {
    std::vector<int> id(nv);
    std::iota(id.begin(), id.end(), 0);
    std::vector<int> eid(sym.edges_.size());
    std::iota(eid.begin(), eid.end(), 0);
    sym.automorphisms_ = {id};
    sym.edge_maps_ = {eid};
    total();
  }
  return sym;
}

std::size_t ModelSymmetry::order() const { return automorphisms_.size() * label_maps_total_; }

ModelSymmetry::Decoded ModelSymmetry::decode(std::size_t element) const {
  return {element / label_maps_total_, element % label_maps_total_};
}

int ModelSymmetry::label_map_of(std::size_t local, int vertex) const {
  const std::size_t np = label_maps_.size();
  for (int i = 0; i < vertex; ++i) local /= np;
  return static_cast<int>(local % np);
}

StateIndex ModelSymmetry::map_state(std::size_t element, StateIndex index) const {
  const Decoded d = decode(element);
  const auto& pi = automorphisms_[d.aut];
  const std::size_t np = label_maps_.size();
  std::size_t local = d.local;
  StateIndex out = 0;
  for (int i = 0; i < n_vertices_; ++i) {
    const auto s = static_cast<int>(index % static_cast<StateIndex>(n_labels_));
    index /= static_cast<StateIndex>(n_labels_);
    const auto& tau = label_maps_[local % np].perm;
    local /= np;
    out += static_cast<StateIndex>(tau[static_cast<std::size_t>(s)]) * radix_[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])];
  }
  return out;
}

Params ModelSymmetry::map_params(std::size_t element, const Params& params) const {
  Params out = params;
  for (int var = 0; var < n_theta_; ++var) {
    const VarImage img = image(element, var);
    const double v = var < n_vertices_ ? params.H[static_cast<std::size_t>(var)] : params.J[static_cast<std::size_t>(var - n_vertices_)];
    if (img.var < n_vertices_) out.H[static_cast<std::size_t>(img.var)] = img.sign * v;
    else out.J[static_cast<std::size_t>(img.var - n_vertices_)] = img.sign * v;
  }
  return out;
}

VarImage ModelSymmetry::image(std::size_t element, int var) const {
  const Decoded d = decode(element);
  if (var < n_vertices_) {
    const auto& lm = label_maps_[static_cast<std::size_t>(label_map_of(d.local, var))];
    return {automorphisms_[d.aut][static_cast<std::size_t>(var)], lm.sigma};
  }
  if (var < n_theta_) {
    const auto k = static_cast<std::size_t>(var - n_vertices_);
    const auto a = static_cast<std::size_t>(label_map_of(d.local, edges_[k].first));
    const auto b = static_cast<std::size_t>(label_map_of(d.local, edges_[k].second));
    return {n_vertices_ + edge_maps_[d.aut][k], rho_[a * label_maps_.size() + b]};
  }
  const int block = n_theta_ + 2;
  if (var < block) return {var, 1.0};
  auto s = static_cast<StateIndex>(var - block);
  int base = block;
  if (s >= n_states_) {
    s -= n_states_;
    base += static_cast<int>(n_states_);
  }
  return {base + static_cast<int>(map_state(element, s)), 1.0};
}

}  // namespace potts_forge
