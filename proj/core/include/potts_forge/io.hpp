#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "potts_forge/formulations.hpp"
#include "potts_forge/graph.hpp"
#include "potts_forge/potts.hpp"
#include "potts_forge/spectrum.hpp"

namespace potts_forge {

// JSON files use 1-based vertices and labels. Parse failures throw
// Error(ParseError) with the offending field in the message, e.g.
// "ParseError: bounds.H[2]: expected [min, max]".

/// A model file: model plus parameter box.
struct ModelFile {
  PottsModel model;
  ParamBounds bounds;
};

/// The parts of a result file that downstream commands need.
struct ResultFile {
  Params params;
  /// Missing "accepted" counts as accepted (a bare params file).
  bool accepted = true;
  std::vector<State> ground_states;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

/// {"n_vertices": N, "edges": [[a, b], ...]}
Graph parse_graph(std::string_view json);
std::string graph_to_json(const Graph& graph);

/// {"graph": {...}, "n_labels": L, "U": [...], "V": [[...]],
///  "bounds": {"H": [[min, max], ...], "J": [[min, max], ...]}}
/// "n_labels", "U" and "V" default to the Ising tables when all three are
/// absent. "bounds" may also be {"H": h, "J": j} for a symmetric box.
ModelFile parse_model(std::string_view json);
std::string model_to_json(const PottsModel& model, const ParamBounds& bounds);

/// {"H": [...], "J": [...]} or any object with such a "params" member.
Params parse_params(std::string_view json, const PottsModel& model);
std::string params_to_json(const Params& params);

/// A result or params file.
ResultFile parse_result(std::string_view json, const PottsModel& model);

/// Array of label sequences, 1-based labels, e.g. [[1, 1], [2, 2]]. For Ising
/// models the strings "+1" and "-1" (or "+" and "-") are accepted as spins.
/// An object with a "ground_states" member (a result file) is also accepted.
std::vector<State> parse_data(std::string_view json, const PottsModel& model);
std::string data_to_json(const std::vector<State>& data);

/// 1-based label list of a state.
std::vector<int> one_based(const State& state);

/// {"params", "E0", "E1", "delta_E", "ground_states", "accepted", "reason",
///  "solver": {...}}
std::string result_to_json(const PottsModel& model, const EstimationResult& result);

/// {"E0", "E1", "delta_E", "n_gs", "n_states", "degenerate", "ground_states"}
std::string spectrum_to_json(const PottsModel& model, const Spectrum& spectrum);

/// Fixed 12-significant-digit rendering used for CSV cells.
std::string format_csv_number(double value);

}  // namespace potts_forge
