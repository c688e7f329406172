#include "potts_forge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "potts_forge/error.hpp"

namespace potts_forge {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(what, std::string("malformed JSON (") + e.what() + ")");
  }
}

const json& member(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object()) fail(field, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(field.empty() ? key : field + "." + key, "missing");
  return *it;
}

std::string sub(const std::string& field, const std::string& key) { return field.empty() ? key : field + "." + key; }
std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(field, "expected a finite number");
  return d;
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<int>();
}

const json& array(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array");
  return v;
}

std::vector<double> numbers(const json& v, const std::string& field) {
  array(v, field);
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], at(field, i)));
  return out;
}

Graph graph_from(const json& g, const std::string& field) {
  const int n = integer(member(g, "n_vertices", field), sub(field, "n_vertices"));
  const std::string ef = sub(field, "edges");
  const json& edges = array(member(g, "edges", field), ef);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const json& e = edges[k];
    if (!e.is_array() || e.size() != 2) fail(at(ef, k), "expected [a, b]");
    pairs.emplace_back(integer(e[0], at(ef, k) + "[0]"), integer(e[1], at(ef, k) + "[1]"));
  }
  try {
    return new_graph(n, pairs);
  } catch (const Error& err) {
    fail(field.empty() ? "graph" : field, err.what());
  }
}

void read_box(const json& b, const std::string& field, std::size_t n, std::vector<double>& lo,
              std::vector<double>& hi) {
  lo.clear();
  hi.clear();
  if (b.is_number()) {
    const double h = std::abs(number(b, field));
    lo.assign(n, -h);
    hi.assign(n, h);
    return;
  }
  array(b, field);
  if (b.size() != n) fail(field, "expected " + std::to_string(n) + " entries, got " + std::to_string(b.size()));
  for (std::size_t i = 0; i < n; ++i) {
    const json& e = b[i];
    if (!e.is_array() || e.size() != 2) fail(at(field, i), "expected [min, max]");
    lo.push_back(number(e[0], at(field, i) + "[0]"));
    hi.push_back(number(e[1], at(field, i) + "[1]"));
    if (lo.back() > hi.back()) fail(at(field, i), "min exceeds max");
  }
}

Params params_from(const json& p, const std::string& field, const PottsModel& model) {
  Params out;
  out.H = numbers(member(p, "H", field), sub(field, "H"));
  out.J = numbers(member(p, "J", field), sub(field, "J"));
  if (out.H.size() != static_cast<std::size_t>(model.n_vertices())) {
    fail(sub(field, "H"), "expected " + std::to_string(model.n_vertices()) + " entries");
  }
  if (out.J.size() != static_cast<std::size_t>(model.n_edges())) {
    fail(sub(field, "J"), "expected " + std::to_string(model.n_edges()) + " entries");
  }
  return out;
}

std::vector<State> states_from(const json& d, const std::string& field, const PottsModel& model) {
  array(d, field);
  const bool ising_labels = model.n_labels() == 2 && model.U(0) > model.U(1);
  std::vector<State> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const json& row = d[i];
    const std::string rf = at(field, i);
    array(row, rf);
    if (row.size() != static_cast<std::size_t>(model.n_vertices())) {
      fail(rf, "expected " + std::to_string(model.n_vertices()) + " labels");
    }
    State s;
    for (std::size_t v = 0; v < row.size(); ++v) {
      const json& x = row[v];
      const std::string xf = at(rf, v);
      if (x.is_string()) {
        const auto str = x.get<std::string>();
        if (!ising_labels) fail(xf, "spin aliases need an Ising model");
        if (str == "+1" || str == "+") {
          s.push_back(0);
        } else if (str == "-1" || str == "-") {
          s.push_back(1);
        } else {
          fail(xf, "unknown spin \"" + str + "\"");
        }
      } else {
        const int label = integer(x, xf);
        if (label < 1 || label > model.n_labels()) {
          fail(xf, "label " + std::to_string(label) + " outside 1.." + std::to_string(model.n_labels()));
        }
        s.push_back(label - 1);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

double clean(double v) { return v == 0.0 ? 0.0 : v; }

json params_json(const Params& p) {
  json H = json::array(), J = json::array();
  for (double h : p.H) H.push_back(clean(h));
  for (double j : p.J) J.push_back(clean(j));
  return json{{"H", H}, {"J", J}};
}

json states_json(const PottsModel& model, const std::vector<StateIndex>& states) {
  json out = json::array();
  for (StateIndex s : states) out.push_back(one_based(decode(model, s)));
  return out;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(clean(v)) : json(nullptr); }

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

Graph parse_graph(std::string_view text) { return graph_from(parse_json(text, "graph"), ""); }

std::string graph_to_json(const Graph& graph) {
  json edges = json::array();
  for (const auto& [a, b] : graph.one_based_edges()) edges.push_back({a, b});
  return json{{"n_vertices", graph.n_vertices()}, {"edges", edges}}.dump(2) + "\n";
}

ModelFile parse_model(std::string_view text) {
  const json m = parse_json(text, "model");
  Graph graph = graph_from(member(m, "graph", ""), "graph");
  const bool has_tables = m.contains("n_labels") || m.contains("U") || m.contains("V");
  std::optional<PottsModel> model;
  if (!has_tables) {
    model = ising(graph);
  } else {
    const int L = integer(member(m, "n_labels", ""), "n_labels");
    if (L < 2) fail("n_labels", "expected at least 2");
    std::vector<double> U = numbers(member(m, "U", ""), "U");
    if (U.size() != static_cast<std::size_t>(L)) fail("U", "expected " + std::to_string(L) + " entries");
    const json& v = array(member(m, "V", ""), "V");
    if (v.size() != static_cast<std::size_t>(L)) fail("V", "expected " + std::to_string(L) + " rows");
    std::vector<std::vector<double>> V;
    for (std::size_t a = 0; a < v.size(); ++a) {
      V.push_back(numbers(v[a], at("V", a)));
      if (V.back().size() != static_cast<std::size_t>(L)) fail(at("V", a), "expected " + std::to_string(L) + " entries");
    }
    try {
      model.emplace(graph, L, std::move(U), std::move(V));
    } catch (const Error& err) {
      fail("V", err.what());
    }
  }
  ParamBounds bounds;
  const json& b = member(m, "bounds", "");
  read_box(member(b, "H", "bounds"), "bounds.H", static_cast<std::size_t>(graph.n_vertices()), bounds.H_min,
           bounds.H_max);
  read_box(member(b, "J", "bounds"), "bounds.J", static_cast<std::size_t>(graph.n_edges()), bounds.J_min, bounds.J_max);
  return ModelFile{std::move(*model), std::move(bounds)};
}

std::string model_to_json(const PottsModel& model, const ParamBounds& bounds) {
  json H = json::array(), J = json::array();
  for (std::size_t i = 0; i < bounds.H_min.size(); ++i) H.push_back({bounds.H_min[i], bounds.H_max[i]});
  for (std::size_t k = 0; k < bounds.J_min.size(); ++k) J.push_back({bounds.J_min[k], bounds.J_max[k]});
  json edges = json::array();
  for (const auto& [a, b] : model.graph().one_based_edges()) edges.push_back({a, b});
  json out;
  out["graph"] = {{"n_vertices", model.n_vertices()}, {"edges", edges}};
  out["n_labels"] = model.n_labels();
  out["U"] = model.U_table();
  out["V"] = model.V_table();
  out["bounds"] = {{"H", H}, {"J", J}};
  return out.dump(2) + "\n";
}

Params parse_params(std::string_view text, const PottsModel& model) {
  const json p = parse_json(text, "params");
  if (p.is_object() && p.contains("params")) return params_from(p["params"], "params", model);
  return params_from(p, "", model);
}

std::string params_to_json(const Params& params) { return params_json(params).dump(2) + "\n"; }

ResultFile parse_result(std::string_view text, const PottsModel& model) {
  const json r = parse_json(text, "result");
  ResultFile out;
  if (r.is_object() && r.contains("params")) {
    out.params = params_from(r["params"], "params", model);
  } else {
    out.params = params_from(r, "", model);
  }
  if (r.contains("accepted")) {
    if (!r["accepted"].is_boolean()) fail("accepted", "expected true or false");
    out.accepted = r["accepted"].get<bool>();
  }
  if (r.contains("ground_states")) out.ground_states = states_from(r["ground_states"], "ground_states", model);
  return out;
}

std::vector<State> parse_data(std::string_view text, const PottsModel& model) {
  const json d = parse_json(text, "data");
  if (d.is_object()) return states_from(member(d, "ground_states", "data"), "ground_states", model);
  return states_from(d, "data", model);
}

std::string data_to_json(const std::vector<State>& data) {
  json out = json::array();
  for (const State& s : data) out.push_back(one_based(s));
  return out.dump() + "\n";
}

std::vector<int> one_based(const State& state) {
  std::vector<int> out(state);
  for (int& v : out) ++v;
  return out;
}

std::string result_to_json(const PottsModel& model, const EstimationResult& result) {
  json out;
  out["params"] = params_json(result.params);
  out["E0"] = clean(result.E0);
  out["E1"] = clean(result.E1);
  out["delta_E"] = clean(result.delta_E);
  out["n_gs"] = result.ground_states.size();
  out["ground_states"] = states_json(model, result.ground_states);
  out["accepted"] = result.accepted;
  if (!result.reason.empty()) out["reason"] = result.reason;
  out["solver"] = {{"status", std::string(to_string(result.status))},
                   {"objective", finite_or_null(result.objective)},
                   {"root_bound", finite_or_null(result.root_bound)},
                   {"nodes_explored", result.nodes_explored},
                   {"lp_iterations", result.lp_iterations},
                   {"symmetry_order", result.symmetry_order}};
  return out.dump(2) + "\n";
}

std::string spectrum_to_json(const PottsModel& model, const Spectrum& spectrum) {
  json out;
  out["E0"] = clean(spectrum.E0);
  out["E1"] = clean(spectrum.E1);
  out["delta_E"] = clean(spectrum.delta_E);
  out["n_gs"] = spectrum.n_ground();
  out["n_states"] = spectrum.n_states();
  out["degenerate"] = spectrum.fully_degenerate;
  out["ground_states"] = states_json(model, spectrum.ground);
  return out.dump(2) + "\n";
}

std::string format_csv_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", clean(value));
  return buf;
}

}  // namespace potts_forge
