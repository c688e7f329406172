#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "potts_forge/formulations.hpp"
#include "potts_forge/potts.hpp"
#include "potts_forge/spectrum.hpp"

namespace potts_forge::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kRejected = 2,
  kResourceLimit = 3,
};

/// Runs the command line `args` (args[0] is the program name). Command output
/// goes to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `points` inverse temperatures from lo to hi: log-spaced when lo > 0,
/// linear when lo == 0. Throws Error(InvalidArgument) on a bad range.
std::vector<double> beta_grid(double lo, double hi, int points);

struct CurveRow {
  double beta = 0.0;
  double eta = 0.0;
  double xi_upper = 0.0;
  double eta_inf = 0.0;
  double log_eta_excess = 0.0;
};

/// eta and its bounds over the grid for a model whose ground set is `data`.
/// Throws Error(DegenerateGap) without a positive gap and
/// Error(InvalidDataSet) when data is not the ground set.
std::vector<CurveRow> nll_curve(const Spectrum& spectrum, const std::vector<StateIndex>& data,
                                const std::vector<double>& betas);

struct Comparison {
  Params grad_params;
  EstimationResult das;
  std::vector<double> betas;
  std::vector<double> eta_grad;
  std::vector<double> eta_das;
  /// The minimum of eta_grad lies strictly inside the grid.
  bool grad_interior_minimum = false;
  /// eta_das strictly decreases along the grid.
  bool das_monotone = false;
};

/// Trains by gradient descent at beta = 1 and by DAS, then evaluates eta for
/// both models over the grid. The DAS curve is filled only when DAS accepts.
Comparison compare(const PottsModel& model, const ParamBounds& bounds, const std::vector<StateIndex>& data,
                   const std::vector<double>& betas, const EstimateOptions& options = {},
                   const TrainOptions& train = {});

bool has_interior_minimum(const std::vector<double>& values);
bool strictly_decreasing(const std::vector<double>& values);

}  // namespace potts_forge::cli
