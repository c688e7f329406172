#include "potts_forge/potts.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "potts_forge/error.hpp"

namespace potts_forge {

PottsModel::PottsModel(Graph graph, int n_labels, std::vector<double> vertex_energy,
                       std::vector<std::vector<double>> pair_energy)
    : graph_(std::move(graph)), n_labels_(n_labels), vertex_energy_(std::move(vertex_energy)) {
  if (n_labels_ < 2) {
    throw Error(ErrorCode::InvalidArgument, "n_labels must be >= 2, got " + std::to_string(n_labels_));
  }
  if (vertex_energy_.size() != static_cast<std::size_t>(n_labels_)) {
    throw Error(ErrorCode::ModelMismatch, "U must have n_labels entries");
  }
  if (pair_energy.size() != static_cast<std::size_t>(n_labels_)) {
    throw Error(ErrorCode::ModelMismatch, "V must have n_labels rows");
  }
  pair_energy_.reserve(static_cast<std::size_t>(n_labels_ * n_labels_));
  for (const auto& row : pair_energy) {
    if (row.size() != static_cast<std::size_t>(n_labels_)) {
      throw Error(ErrorCode::ModelMismatch, "V must be n_labels x n_labels");
    }
    pair_energy_.insert(pair_energy_.end(), row.begin(), row.end());
  }
  for (double u : vertex_energy_) {
    if (!std::isfinite(u)) throw Error(ErrorCode::InvalidArgument, "U has a non-finite entry");
  }
  for (int a = 0; a < n_labels_; ++a) {
    for (int b = 0; b < n_labels_; ++b) {
      if (!std::isfinite(V(a, b))) throw Error(ErrorCode::InvalidArgument, "V has a non-finite entry");
      if (V(a, b) != V(b, a)) {
        throw Error(ErrorCode::InvalidArgument, "V must be symmetric; V(" + std::to_string(a + 1) + "," +
                                                    std::to_string(b + 1) + ") differs from its transpose");
      }
    }
  }
}

std::vector<std::vector<double>> PottsModel::V_table() const {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(n_labels_));
  for (int a = 0; a < n_labels_; ++a)
    for (int b = 0; b < n_labels_; ++b) out[static_cast<std::size_t>(a)].push_back(V(a, b));
  return out;
}

StateIndex PottsModel::n_states() const {
  StateIndex total = 1;
  const auto base = static_cast<StateIndex>(n_labels_);
  for (int i = 0; i < graph_.n_vertices(); ++i) {
    if (total > (StateIndex{1} << 62) / base) {
      throw Error(ErrorCode::TooLarge, "state count N_L^N_V overflows");
    }
    total *= base;
  }
  return total;
}

bool PottsModel::is_valid(const State& state) const noexcept {
  if (state.size() != static_cast<std::size_t>(graph_.n_vertices())) return false;
  return std::all_of(state.begin(), state.end(), [&](int s) { return s >= 0 && s < n_labels_; });
}

std::vector<double> Params::theta() const {
  std::vector<double> out(H);
  out.insert(out.end(), J.begin(), J.end());
  return out;
}

Params Params::from_theta(const PottsModel& model, std::span<const double> theta) {
  if (theta.size() < static_cast<std::size_t>(model.n_params())) {
    throw Error(ErrorCode::ModelMismatch, "theta shorter than N_V + N_C");
  }
  const auto nv = static_cast<std::size_t>(model.n_vertices());
  const auto np = static_cast<std::size_t>(model.n_params());
  return Params{{theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(nv)},
                {theta.begin() + static_cast<std::ptrdiff_t>(nv), theta.begin() + static_cast<std::ptrdiff_t>(np)}};
}

Params Params::zeros(const PottsModel& model) {
  return Params{std::vector<double>(static_cast<std::size_t>(model.n_vertices()), 0.0),
                std::vector<double>(static_cast<std::size_t>(model.n_edges()), 0.0)};
}

ParamBounds ParamBounds::symmetric(const Graph& graph, double h, double j) {
  const auto nv = static_cast<std::size_t>(graph.n_vertices());
  const auto nc = static_cast<std::size_t>(graph.n_edges());
  return ParamBounds{std::vector<double>(nv, -h), std::vector<double>(nv, h), std::vector<double>(nc, -j),
                     std::vector<double>(nc, j)};
}

void ParamBounds::validate(const PottsModel& model) const {
  const auto nv = static_cast<std::size_t>(model.n_vertices());
  const auto nc = static_cast<std::size_t>(model.n_edges());
  if (H_min.size() != nv || H_max.size() != nv || J_min.size() != nc || J_max.size() != nc) {
    throw Error(ErrorCode::ModelMismatch, "bounds do not match the graph dimensions");
  }
  auto check = [](const std::vector<double>& lo, const std::vector<double>& hi, const char* name) {
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " bound " + std::to_string(i + 1) + " is not finite");
      }
      if (lo[i] > hi[i]) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " bound " + std::to_string(i + 1) + " has min > max");
      }
    }
  };
  check(H_min, H_max, "H");
  check(J_min, J_max, "J");
}

std::vector<double> ParamBounds::lower() const {
  std::vector<double> out(H_min);
  out.insert(out.end(), J_min.begin(), J_min.end());
  return out;
}

std::vector<double> ParamBounds::upper() const {
  std::vector<double> out(H_max);
  out.insert(out.end(), J_max.begin(), J_max.end());
  return out;
}

Params ParamBounds::clamp(const Params& params) const {
  Params out = params;
  for (std::size_t i = 0; i < out.H.size(); ++i) out.H[i] = std::clamp(out.H[i], H_min[i], H_max[i]);
  for (std::size_t k = 0; k < out.J.size(); ++k) out.J[k] = std::clamp(out.J[k], J_min[k], J_max[k]);
  return out;
}

PottsModel ising(const Graph& graph) {
  return PottsModel(graph, 2, {1.0, -1.0}, {{1.0, -1.0}, {-1.0, 1.0}});
}

namespace {

void check_params(const PottsModel& model, const Params& params) {
  if (params.H.size() != static_cast<std::size_t>(model.n_vertices()) ||
      params.J.size() != static_cast<std::size_t>(model.n_edges())) {
    throw Error(ErrorCode::ModelMismatch, "parameter lengths do not match the graph");
  }
}

void check_state(const PottsModel& model, const State& state) {
  if (state.size() != static_cast<std::size_t>(model.n_vertices())) {
    throw Error(ErrorCode::ModelMismatch, "state has " + std::to_string(state.size()) + " labels, graph has " +
                                              std::to_string(model.n_vertices()) + " vertices");
  }
  if (!model.is_valid(state)) throw Error(ErrorCode::InvalidState, "label out of range");
}

}  // namespace

double energy(const PottsModel& model, const Params& params, const State& state) {
  check_params(model, params);
  check_state(model, state);
  double e = 0.0;
  for (int i = 0; i < model.n_vertices(); ++i) {
    e += params.H[static_cast<std::size_t>(i)] * model.U(state[static_cast<std::size_t>(i)]);
  }
  const auto& edges = model.graph().edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    e += params.J[k] * model.V(state[static_cast<std::size_t>(edges[k].first)],
                               state[static_cast<std::size_t>(edges[k].second)]);
  }
  return e;
}

std::vector<double> feature_row(const PottsModel& model, const State& state) {
  check_state(model, state);
  std::vector<double> row;
  row.reserve(static_cast<std::size_t>(model.n_params()));
  for (int s : state) row.push_back(model.U(s));
  for (const Edge& e : model.graph().edges()) {
    row.push_back(model.V(state[static_cast<std::size_t>(e.first)], state[static_cast<std::size_t>(e.second)]));
  }
  return row;
}

void feature_row_into(const PottsModel& model, StateIndex index, std::span<double> out) {
  const int nv = model.n_vertices();
  const auto base = static_cast<StateIndex>(model.n_labels());
  int labels[64];
  int* lab = labels;
  std::vector<int> heap;
  if (nv > 64) {
    heap.resize(static_cast<std::size_t>(nv));
    lab = heap.data();
  }
  for (int i = 0; i < nv; ++i) {
    lab[i] = static_cast<int>(index % base);
    index /= base;
    out[static_cast<std::size_t>(i)] = model.U(lab[i]);
  }
  const auto& edges = model.graph().edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    out[static_cast<std::size_t>(nv) + k] = model.V(lab[edges[k].first], lab[edges[k].second]);
  }
}

StateIndex encode(const PottsModel& model, const State& state) {
  check_state(model, state);
  StateIndex index = 0;
  const auto base = static_cast<StateIndex>(model.n_labels());
  for (auto it = state.rbegin(); it != state.rend(); ++it) index = index * base + static_cast<StateIndex>(*it);
  return index;
}

State decode(const PottsModel& model, StateIndex index) {
  if (index >= model.n_states()) {
    throw Error(ErrorCode::InvalidState, "state index " + std::to_string(index) + " out of range");
  }
  State state(static_cast<std::size_t>(model.n_vertices()));
  const auto base = static_cast<StateIndex>(model.n_labels());
  for (auto& s : state) {
    s = static_cast<int>(index % base);
    index /= base;
  }
  return state;
}

std::vector<double> feature_table(const PottsModel& model, StateIndex max_states) {
  const StateIndex n = model.n_states();
  if (n > max_states) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " states exceed the budget of " + std::to_string(max_states));
  }
  const auto width = static_cast<std::size_t>(model.n_params());
  std::vector<double> table(static_cast<std::size_t>(n) * width);
  for (StateIndex s = 0; s < n; ++s) {
    feature_row_into(model, s, std::span<double>(table).subspan(static_cast<std::size_t>(s) * width, width));
  }
  return table;
}

}  // namespace potts_forge
