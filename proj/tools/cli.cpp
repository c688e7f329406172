#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "potts_forge/error.hpp"
#include "potts_forge/io.hpp"

namespace potts_forge::cli {

namespace {

struct Options {
  std::string model;
  std::string data;
  std::string params;
  std::string out;
  std::string summary;
  int ngs = 0;
  double beta_min = 1e-2;
  double beta_max = 1e2;
  int beta_points = 64;
  long node_limit = 1000000;
  double time_limit = std::numeric_limits<double>::infinity();
  int threads = 1;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int estimate_das();
  int estimate_gsm();
  int gsm_oracle();
  int spectrum();
  int nll_curve();
  int compare();

 private:
  ModelFile load_model() const { return parse_model(read_text_file(o_.model)); }
  std::vector<StateIndex> load_data(const PottsModel& model) const;
  EstimateOptions estimate_options() const;
  SpectrumOptions spectrum_options() const;
  void emit(const std::string& text) const;
  int finish(const PottsModel& model, const EstimationResult& r) const;

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

std::vector<StateIndex> to_indices(const PottsModel& model, const std::vector<State>& states) {
  std::vector<StateIndex> out;
  for (const State& s : states) out.push_back(encode(model, s));
  return out;
}

std::vector<StateIndex> Runner::load_data(const PottsModel& model) const {
  return to_indices(model, parse_data(read_text_file(o_.data), model));
}

EstimateOptions Runner::estimate_options() const {
  EstimateOptions e;
  e.solver.node_limit = o_.node_limit;
  e.solver.time_limit = o_.time_limit;
  return e;
}

SpectrumOptions Runner::spectrum_options() const {
  SpectrumOptions s;
  s.threads = o_.threads;
  return s;
}

void Runner::emit(const std::string& text) const {
  if (o_.out.empty()) {
    out_ << text;
  } else {
    write_text_file(o_.out, text);
  }
}

int Runner::finish(const PottsModel& model, const EstimationResult& r) const {
  emit(result_to_json(model, r));
  switch (r.status) {
    case SolveStatus::NodeLimit:
    case SolveStatus::TimeLimit:
    case SolveStatus::IterationLimit:
      err_ << "solver stopped early: " << to_string(r.status) << "\n";
      return kResourceLimit;
    default:
      break;
  }
  if (!r.accepted) {
    err_ << "rejected: " << r.reason << "\n";
    return kRejected;
  }
  return kOk;
}

int Runner::estimate_das() {
  const ModelFile mf = load_model();
  const auto data = load_data(mf.model);
  return finish(mf.model, potts_forge::estimate_das(mf.model, mf.bounds, data, estimate_options()));
}

int Runner::estimate_gsm() {
  const ModelFile mf = load_model();
  return finish(mf.model, potts_forge::estimate_gsm(mf.model, mf.bounds, o_.ngs, estimate_options()));
}

int Runner::gsm_oracle() {
  const ModelFile mf = load_model();
  return finish(mf.model, gsm_bruteforce(mf.model, mf.bounds, o_.ngs));
}

int Runner::spectrum() {
  const ModelFile mf = load_model();
  const Params p = parse_params(read_text_file(o_.params), mf.model);
  emit(spectrum_to_json(mf.model, compute_spectrum(mf.model, p, spectrum_options())));
  return kOk;
}

int Runner::nll_curve() {
  const ModelFile mf = load_model();
  const ResultFile rf = parse_result(read_text_file(o_.params), mf.model);
  if (!rf.accepted) {
    err_ << "rejected result: the bound preconditions do not hold\n";
    return kRejected;
  }
  const Spectrum spec = compute_spectrum(mf.model, rf.params, spectrum_options());
  std::vector<StateIndex> data;
  if (!o_.data.empty()) {
    data = load_data(mf.model);
  } else if (!rf.ground_states.empty()) {
    data = to_indices(mf.model, rf.ground_states);
  } else {
    data = spec.ground;
  }
  const auto betas = beta_grid(o_.beta_min, o_.beta_max, o_.beta_points);
  std::vector<CurveRow> rows;
  try {
    rows = cli::nll_curve(spec, data, betas);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateGap && e.code() != ErrorCode::InvalidDataSet) throw;
    err_ << e.what() << "\n";
    return kRejected;
  }
  std::ostringstream csv;
  csv << "beta,eta,xi_upper,eta_inf,log_eta_excess\n";
  for (const CurveRow& r : rows) {
    csv << format_csv_number(r.beta) << ',' << format_csv_number(r.eta) << ',' << format_csv_number(r.xi_upper)
        << ',' << format_csv_number(r.eta_inf) << ',' << format_csv_number(r.log_eta_excess) << '\n';
  }
  emit(csv.str());
  return kOk;
}

int Runner::compare() {
  const ModelFile mf = load_model();
  const auto data = load_data(mf.model);
  const auto betas = beta_grid(o_.beta_min, o_.beta_max, o_.beta_points);
  TrainOptions train;
  train.spectrum = spectrum_options();
  const Comparison c = cli::compare(mf.model, mf.bounds, data, betas, estimate_options(), train);

  std::ostringstream csv;
  csv << "beta,eta_grad,eta_das,lower\n";
  int das_lower = 0, grad_lower = 0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    csv << format_csv_number(betas[i]) << ',' << format_csv_number(c.eta_grad[i]) << ',';
    if (c.das.accepted) {
      const double d = c.eta_das[i], g = c.eta_grad[i];
      const char* lower = d < g ? "das" : (g < d ? "grad" : "tie");
      das_lower += d < g;
      grad_lower += g < d;
      csv << format_csv_number(d) << ',' << lower << '\n';
    } else {
      csv << ",\n";
    }
  }
  emit(csv.str());

  using json = nlohmann::ordered_json;
  json s;
  s["das_accepted"] = c.das.accepted;
  if (!c.das.reason.empty()) s["das_reason"] = c.das.reason;
  s["das_params"] = json::parse(params_to_json(c.das.params));
  s["grad_params"] = json::parse(params_to_json(c.grad_params));
  s["das_delta_E"] = c.das.delta_E;
  s["grad_interior_minimum"] = c.grad_interior_minimum;
  s["das_monotone"] = c.das_monotone;
  s["das_lower_points"] = das_lower;
  s["grad_lower_points"] = grad_lower;
  s["n_points"] = betas.size();
  const std::string text = s.dump(2) + "\n";
  if (o_.summary.empty()) {
    err_ << text;
  } else {
    write_text_file(o_.summary, text);
  }
  return c.das.accepted ? kOk : kRejected;
}

int env_threads(int fallback) {
  const char* v = std::getenv("POTTS_FORGE_THREADS");
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) {
    throw Error(ErrorCode::InvalidArgument, std::string("POTTS_FORGE_THREADS: expected a positive integer, got ") + v);
  }
  return static_cast<int>(n);
}

}  // namespace

std::vector<double> beta_grid(double lo, double hi, int points) {
  if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi) || points < 1) {
    throw Error(ErrorCode::InvalidArgument, "beta grid needs 0 <= beta-min <= beta-max and beta-points >= 1");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double last = points - 1;
  for (int i = 0; i < points; ++i) {
    const double t = i / last;
    out[static_cast<std::size_t>(i)] = lo == 0.0 ? hi * t : std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<CurveRow> nll_curve(const Spectrum& spectrum, const std::vector<StateIndex>& data,
                                const std::vector<double>& betas) {
  if (spectrum.fully_degenerate || !(spectrum.delta_E > 0.0)) {
    throw Error(ErrorCode::DegenerateGap, "model has no positive band gap");
  }
  std::vector<StateIndex> sorted(data);
  std::sort(sorted.begin(), sorted.end());
  if (sorted != spectrum.ground) throw Error(ErrorCode::InvalidDataSet, "data set is not the model's ground set");
  const auto n_gs = static_cast<double>(spectrum.n_ground());
  const auto n_es = static_cast<double>(spectrum.n_excited);
  std::vector<CurveRow> rows;
  for (double b : betas) {
    CurveRow r;
    r.beta = b;
    r.eta = nll(spectrum, data, b);
    r.xi_upper = nll_upper_bound(n_gs, n_es, spectrum.delta_E, b);
    r.eta_inf = n_gs * std::log(n_gs);
    r.log_eta_excess = log_nll_excess(spectrum, data, b);
    rows.push_back(r);
  }
  return rows;
}

bool has_interior_minimum(const std::vector<double>& values) {
  if (values.size() < 3) return false;
  const auto it = std::min_element(values.begin(), values.end());
  return it != values.begin() && it != values.end() - 1 && *it < values.front() && *it < values.back();
}

bool strictly_decreasing(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] < values[i - 1])) return false;
  return true;
}

Comparison compare(const PottsModel& model, const ParamBounds& bounds, const std::vector<StateIndex>& data,
                   const std::vector<double>& betas, const EstimateOptions& options, const TrainOptions& train) {
  Comparison c;
  c.betas = betas;
  c.grad_params = train_nll(model, bounds, data, 1.0, train);
  const Spectrum grad = compute_spectrum(model, c.grad_params, train.spectrum);
  for (double b : betas) c.eta_grad.push_back(nll(grad, data, b));
  c.grad_interior_minimum = has_interior_minimum(c.eta_grad);

  c.das = estimate_das(model, bounds, data, options);
  if (c.das.accepted) {
    const Spectrum das = compute_spectrum(model, c.das.params, train.spectrum);
    for (double b : betas) c.eta_das.push_back(nll(das, data, b));
    c.das_monotone = strictly_decreasing(c.eta_das);
  }
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Potts model parameter estimation by band-gap maximisation", "potts_forge"};
  app.require_subcommand(1);

  auto model_opt = [&](CLI::App* s) { s->add_option("--model", o.model, "Model JSON file")->required(); };
  auto out_opt = [&](CLI::App* s) {
    s->add_option("--out", o.out, "Write output here instead of stdout");
    s->add_option("--threads", o.threads, "Enumeration worker count")->check(CLI::Range(1, 1024));
  };
  auto solver_opts = [&](CLI::App* s) {
    s->add_option("--node-limit", o.node_limit, "Branch-and-bound node cap")->check(CLI::PositiveNumber);
    s->add_option("--time-limit", o.time_limit, "Solver time cap in seconds")->check(CLI::PositiveNumber);
  };
  auto grid_opts = [&](CLI::App* s) {
    s->add_option("--beta-min", o.beta_min, "Smallest inverse temperature")->capture_default_str();
    s->add_option("--beta-max", o.beta_max, "Largest inverse temperature")->capture_default_str();
    s->add_option("--beta-points", o.beta_points, "Grid size (log-spaced, linear when beta-min is 0)")
        ->capture_default_str();
  };

  CLI::App* das = app.add_subcommand("estimate-das", "Estimate parameters whose ground set is the data set");
  model_opt(das);
  das->add_option("--data", o.data, "Data set JSON file")->required();
  solver_opts(das);
  out_opt(das);

  CLI::App* gsm = app.add_subcommand("estimate-gsm", "Estimate parameters with a given ground-state multiplicity");
  model_opt(gsm);
  gsm->add_option("--ngs", o.ngs, "Ground-state multiplicity")->required()->check(CLI::PositiveNumber);
  solver_opts(gsm);
  out_opt(gsm);

  CLI::App* oracle = app.add_subcommand("gsm-oracle", "Multiplicity problem by enumerating candidate ground sets");
  model_opt(oracle);
  oracle->add_option("--ngs", o.ngs, "Ground-state multiplicity")->required()->check(CLI::PositiveNumber);
  out_opt(oracle);

  CLI::App* spec = app.add_subcommand("spectrum", "Energy spectrum summary for given parameters");
  model_opt(spec);
  spec->add_option("--params", o.params, "Params or result JSON file")->required();
  out_opt(spec);

  CLI::App* curve = app.add_subcommand("nll-curve", "Negative log-likelihood and its bounds over a beta grid");
  model_opt(curve);
  curve->add_option("--params", o.params, "Result or params JSON file")->required();
  curve->add_option("--data", o.data, "Data set (default: the result's ground set)");
  grid_opts(curve);
  out_opt(curve);

  CLI::App* cmp = app.add_subcommand("compare", "Gradient-trained versus DAS likelihood curves");
  model_opt(cmp);
  cmp->add_option("--data", o.data, "Data set JSON file")->required();
  cmp->add_option("--summary", o.summary, "Summary JSON file (default: stderr)");
  grid_opts(cmp);
  solver_opts(cmp);
  out_opt(cmp);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    o.threads = env_threads(o.threads);
    Runner r(o, out, err);
    if (das->parsed()) return r.estimate_das();
    if (gsm->parsed()) return r.estimate_gsm();
    if (oracle->parsed()) return r.gsm_oracle();
    if (spec->parsed()) return r.spectrum();
    if (curve->parsed()) return r.nll_curve();
    return r.compare();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace potts_forge::cli
