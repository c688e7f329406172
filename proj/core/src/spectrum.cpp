#include "potts_forge/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "parallel.hpp"
#include "potts_forge/error.hpp"

namespace potts_forge {

namespace {

constexpr StateIndex kChunk = StateIndex{1} << 14;

std::size_t chunk_count(StateIndex n) { return static_cast<std::size_t>((n + kChunk - 1) / kChunk); }

void check_data(const Spectrum& spectrum, std::span<const StateIndex> data) {
  if (data.empty()) throw Error(ErrorCode::EmptyDataSet, "data set is empty");
  for (StateIndex s : data) {
    if (s >= spectrum.n_states()) {
      throw Error(ErrorCode::InvalidState, "data state index " + std::to_string(s) + " out of range");
    }
  }
}

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::InvalidArgument, "beta must be finite and >= 0");
  }
}

/// Sum of exp(-beta * excitation) over all states (ground states weigh 1),
/// optionally restricted to excited states, reduced in chunk order.
double boltzmann_sum(const Spectrum& spectrum, double beta, bool excited_only) {
  const StateIndex n = spectrum.n_states();
  std::vector<double> partial(chunk_count(n), 0.0);
  detail::parallel_for(partial.size(), spectrum.threads, [&](std::size_t c) {
    const StateIndex begin = static_cast<StateIndex>(c) * kChunk;
    const StateIndex end = std::min(n, begin + kChunk);
    double acc = 0.0;
    for (StateIndex s = begin; s < end; ++s) {
      const double x = spectrum.excitation(s);
      if (excited_only && x == 0.0) continue;
      acc += std::exp(-beta * x);
    }
    partial[c] = acc;
  });
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

/// Returns {sum w, sum w * excitation}.
std::pair<double, double> weighted_excitation(const Spectrum& spectrum, double beta) {
  const StateIndex n = spectrum.n_states();
  std::vector<std::pair<double, double>> partial(chunk_count(n));
  detail::parallel_for(partial.size(), spectrum.threads, [&](std::size_t c) {
    const StateIndex begin = static_cast<StateIndex>(c) * kChunk;
    const StateIndex end = std::min(n, begin + kChunk);
    double w_sum = 0.0, wx_sum = 0.0;
    for (StateIndex s = begin; s < end; ++s) {
      const double x = spectrum.excitation(s);
      const double w = std::exp(-beta * x);
      w_sum += w;
      wx_sum += w * x;
    }
    partial[c] = {w_sum, wx_sum};
  });
  double w = 0.0, wx = 0.0;
  for (auto [a, b] : partial) {
    w += a;
    wx += b;
  }
  return {w, wx};
}

double data_excitation(const Spectrum& spectrum, std::span<const StateIndex> data, double beta) {
  double acc = 0.0;
  for (StateIndex s : data) acc += beta * spectrum.excitation(s);
  return acc;
}

}  // namespace

bool Spectrum::is_ground(StateIndex index) const {
  return std::binary_search(ground.begin(), ground.end(), index);
}

double Spectrum::excitation(StateIndex index) const {
  const double x = energies[static_cast<std::size_t>(index)] - E0;
  return x <= tolerance ? 0.0 : x;
}

double degeneracy_tolerance(double e0) noexcept { return 1e-9 * std::max(1.0, std::abs(e0)); }

Spectrum compute_spectrum(const PottsModel& model, const Params& params, const SpectrumOptions& options) {
  if (params.H.size() != static_cast<std::size_t>(model.n_vertices()) ||
      params.J.size() != static_cast<std::size_t>(model.n_edges())) {
    throw Error(ErrorCode::ModelMismatch, "parameter lengths do not match the graph");
  }
  const StateIndex n = model.n_states();
  if (n > options.max_states) {
    throw Error(ErrorCode::TooLarge,
                std::to_string(n) + " states exceed the enumeration budget of " + std::to_string(options.max_states));
  }

  Spectrum spec;
  spec.threads = std::max(1, options.threads);
  spec.energies.resize(static_cast<std::size_t>(n));

  const int nv = model.n_vertices();
  const int nl = model.n_labels();
  const auto& edges = model.graph().edges();
  // Per-vertex and per-edge energy tables with the parameters folded in.
  std::vector<double> field(static_cast<std::size_t>(nv * nl));
  for (int i = 0; i < nv; ++i)
    for (int a = 0; a < nl; ++a) field[static_cast<std::size_t>(i * nl + a)] = params.H[static_cast<std::size_t>(i)] * model.U(a);

  detail::parallel_for(chunk_count(n), spec.threads, [&](std::size_t c) {
    const StateIndex begin = static_cast<StateIndex>(c) * kChunk;
    const StateIndex end = std::min(n, begin + kChunk);
    State labels = decode(model, begin);
    for (StateIndex s = begin; s < end; ++s) {
      double e = 0.0;
      for (int i = 0; i < nv; ++i) e += field[static_cast<std::size_t>(i * nl + labels[static_cast<std::size_t>(i)])];
      for (std::size_t k = 0; k < edges.size(); ++k) {
        e += params.J[k] * model.V(labels[static_cast<std::size_t>(edges[k].first)],
                                   labels[static_cast<std::size_t>(edges[k].second)]);
      }
      spec.energies[static_cast<std::size_t>(s)] = e;
      for (auto& l : labels) {
        if (++l < nl) break;
        l = 0;
      }
    }
  });

  spec.E0 = *std::min_element(spec.energies.begin(), spec.energies.end());
  spec.tolerance = degeneracy_tolerance(spec.E0);
  double e1 = std::numeric_limits<double>::infinity();
  for (StateIndex s = 0; s < n; ++s) {
    const double e = spec.energies[static_cast<std::size_t>(s)];
    if (e - spec.E0 <= spec.tolerance) {
      spec.ground.push_back(s);
    } else {
      e1 = std::min(e1, e);
    }
  }
  spec.n_excited = n - spec.n_ground();
  if (spec.n_excited == 0) {
    spec.fully_degenerate = true;
    spec.E1 = spec.E0;
    spec.delta_E = 0.0;
  } else {
    spec.E1 = e1;
    spec.delta_E = e1 - spec.E0;
  }
  return spec;
}

double log_partition_function(const Spectrum& spectrum, double beta) {
  check_beta(beta);
  return -beta * spectrum.E0 + std::log(boltzmann_sum(spectrum, beta, false));
}

double partition_function(const Spectrum& spectrum, double beta) {
  return std::exp(log_partition_function(spectrum, beta));
}

double probability(const Spectrum& spectrum, StateIndex index, double beta) {
  check_beta(beta);
  if (index >= spectrum.n_states()) {
    throw Error(ErrorCode::InvalidState, "state index " + std::to_string(index) + " out of range");
  }
  return std::exp(-beta * spectrum.excitation(index) - std::log(boltzmann_sum(spectrum, beta, false)));
}

double expected_energy(const Spectrum& spectrum, double beta) {
  check_beta(beta);
  auto [w, wx] = weighted_excitation(spectrum, beta);
  return spectrum.E0 + wx / w;
}

double nll(const Spectrum& spectrum, std::span<const StateIndex> data, double beta) {
  check_data(spectrum, data);
  check_beta(beta);
  const double log_sum = std::log(boltzmann_sum(spectrum, beta, false));
  return data_excitation(spectrum, data, beta) + static_cast<double>(data.size()) * log_sum;
}

double nll_excess(const Spectrum& spectrum, std::span<const StateIndex> data, double beta) {
  check_data(spectrum, data);
  check_beta(beta);
  const double n_gs = static_cast<double>(spectrum.n_ground());
  const double excited = boltzmann_sum(spectrum, beta, true);
  return data_excitation(spectrum, data, beta) + static_cast<double>(data.size()) * std::log1p(excited / n_gs);
}

double log_nll_excess(const Spectrum& spectrum, std::span<const StateIndex> data, double beta) {
  check_data(spectrum, data);
  check_beta(beta);
  for (StateIndex s : data) {
    if (!spectrum.is_ground(s)) {
      throw Error(ErrorCode::InvalidDataSet, "log_nll_excess needs every data state in the ground set");
    }
  }
  if (spectrum.n_excited == 0) return -std::numeric_limits<double>::infinity();
  // log R with R = sum over excited states of exp(-beta x), shifted by delta_E.
  const StateIndex n = spectrum.n_states();
  double shifted = 0.0;
  for (StateIndex s = 0; s < n; ++s) {
    const double x = spectrum.excitation(s);
    if (x == 0.0) continue;
    shifted += std::exp(-beta * (x - spectrum.delta_E));
  }
  const double log_r = -beta * spectrum.delta_E + std::log(shifted);
  const double log_ratio = log_r - std::log(static_cast<double>(spectrum.n_ground()));
  const double log_nds = std::log(static_cast<double>(data.size()));
  if (log_ratio < -30.0) {
    // log(log1p(x)) = log x - x/2 + O(x^2)
    return log_nds + log_ratio - 0.5 * std::exp(log_ratio);
  }
  return log_nds + std::log(std::log1p(std::exp(log_ratio)));
}

double nll_beta_derivative(const Spectrum& spectrum, std::span<const StateIndex> data, double beta) {
  check_data(spectrum, data);
  check_beta(beta);
  auto [w, wx] = weighted_excitation(spectrum, beta);
  double acc = 0.0;
  for (StateIndex s : data) acc += spectrum.excitation(s);
  return acc - static_cast<double>(data.size()) * (wx / w);
}

double nll_upper_bound(double n_gs, double n_es, double delta_E, double beta) {
  if (!(delta_E > 0.0)) throw Error(ErrorCode::DegenerateGap, "band gap must be positive");
  if (!(n_gs >= 1.0) || !(n_es >= 0.0)) throw Error(ErrorCode::InvalidArgument, "need n_gs >= 1 and n_es >= 0");
  check_beta(beta);
  return n_gs * std::log(n_gs + n_es * std::exp(-beta * delta_E));
}

double beta_star(double n_gs, double n_es, double delta_E, double epsilon) {
  if (!(delta_E > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta_star needs delta_E > 0");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta_star needs epsilon > 0");
  if (!(n_gs > 0.0) || !(n_es > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta_star needs n_gs, n_es > 0");
  return (std::log(n_es / n_gs) - std::log(std::expm1(epsilon / n_gs))) / delta_E;
}

std::vector<double> nll_gradient(const PottsModel& model, const Params& params, std::span<const StateIndex> data,
                                 double beta, const SpectrumOptions& options) {
  const Spectrum spectrum = compute_spectrum(model, params, options);
  check_data(spectrum, data);
  check_beta(beta);
  const auto width = static_cast<std::size_t>(model.n_params());
  const StateIndex n = spectrum.n_states();

  // E_p[epsilon], accumulated per chunk and reduced in chunk order.
  std::vector<std::vector<double>> partial(chunk_count(n), std::vector<double>(width + 1, 0.0));
  detail::parallel_for(partial.size(), spectrum.threads, [&](std::size_t c) {
    const StateIndex begin = static_cast<StateIndex>(c) * kChunk;
    const StateIndex end = std::min(n, begin + kChunk);
    std::vector<double> row(width);
    auto& acc = partial[c];
    for (StateIndex s = begin; s < end; ++s) {
      const double w = std::exp(-beta * spectrum.excitation(s));
      feature_row_into(model, s, row);
      for (std::size_t j = 0; j < width; ++j) acc[j] += w * row[j];
      acc[width] += w;
    }
  });
  std::vector<double> mean(width + 1, 0.0);
  for (const auto& p : partial)
    for (std::size_t j = 0; j <= width; ++j) mean[j] += p[j];
  for (std::size_t j = 0; j < width; ++j) mean[j] /= mean[width];

  std::vector<double> grad(width, 0.0);
  std::vector<double> row(width);
  for (StateIndex s : data) {
    feature_row_into(model, s, row);
    for (std::size_t j = 0; j < width; ++j) grad[j] += row[j] - mean[j];
  }
  for (double& g : grad) g *= beta;
  return grad;
}

double projected_gradient_norm(const ParamBounds& bounds, const Params& params, std::span<const double> gradient) {
  const std::vector<double> theta = params.theta();
  const std::vector<double> lo = bounds.lower();
  const std::vector<double> hi = bounds.upper();
  double acc = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    double g = gradient[j];
    if (theta[j] <= lo[j] && g > 0.0) g = 0.0;
    if (theta[j] >= hi[j] && g < 0.0) g = 0.0;
    acc += g * g;
  }
  return std::sqrt(acc);
}

Params train_nll(const PottsModel& model, const ParamBounds& bounds, std::span<const StateIndex> data, double beta,
                 const TrainOptions& options) {
  bounds.validate(model);
  if (data.empty()) throw Error(ErrorCode::EmptyDataSet, "data set is empty");
  const std::vector<double> lo = bounds.lower();
  const std::vector<double> hi = bounds.upper();

  std::vector<double> theta(static_cast<std::size_t>(model.n_params()), 0.0);
  for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = std::clamp(0.0, lo[j], hi[j]);
  Params current = Params::from_theta(model, theta);
  double current_eta = nll(compute_spectrum(model, current, options.spectrum), data, beta);
  double lr = options.learning_rate;

  std::vector<double> candidate(theta.size());
  for (int step = 0; step < options.steps; ++step) {
    const std::vector<double> grad = nll_gradient(model, current, data, beta, options.spectrum);
    double moved = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      candidate[j] = std::clamp(theta[j] - lr * grad[j], lo[j], hi[j]);
      moved = std::max(moved, std::abs(candidate[j] - theta[j]));
    }
    if (moved < options.step_tolerance) break;
    const Params next = Params::from_theta(model, candidate);
    const double next_eta = nll(compute_spectrum(model, next, options.spectrum), data, beta);
    if (next_eta > current_eta) {
      lr *= 0.5;
      if (lr < 1e-16) break;
      continue;
    }
    theta = candidate;
    current = next;
    current_eta = next_eta;
  }
  return current;
}

}  // namespace potts_forge
