#pragma once

#include <vector>

#include "bellsim/chsh.hpp"
#include "bellsim/reservoir.hpp"

namespace bellsim {

enum class Evaluator { Restricted, Horodecki };

const char* evaluator_name(Evaluator evaluator);

/// One point of a Bell-maximum-vs-population-parameter curve. Both
/// evaluators are always recorded; violation means value > 2.
struct SweepRecord {
  double x = 0.0;
  double restricted_max = 0.0;
  double horodecki_max = 0.0;
  bool violation_restricted = false;
  bool violation_horodecki = false;
  double p_excited_a = 0.0;
  double p_excited_b = 0.0;
};

inline constexpr int kDefaultSweepPoints = 201;

/// Curve data for one EWL state over n uniform x points in [0, 1].
std::vector<SweepRecord> sweep(const EwlParams& params,
                               int points = kDefaultSweepPoints);

/// Boundary of the violation region adjacent to x = 1 (the figures are
/// read from the right): the smallest x of that region, bisected to 1e-10.
struct ThresholdResult {
  bool exists = false;
  double x_star = 0.0;
  Evaluator evaluator = Evaluator::Restricted;
};

ThresholdResult threshold_population(const EwlParams& params,
                                     Evaluator evaluator);

/// Smallest purity r whose curve reaches a violation somewhere in [0, 1];
/// disengaged when even r = 1 never violates. Nested bisection over r with
/// an inner grid + golden-section maximization over x (the inner max is
/// not assumed to sit at x = 1).
std::optional<double> critical_purity(BellFamily family, double alpha,
                                      Evaluator evaluator);

/// One time sample of a reservoir-driven evolution. The Bell evaluation
/// depends on the trajectory only through x(t) = |q(t)|^2 (both evaluators
/// are insensitive to the amplitude phase).
struct SeriesRecord {
  double t = 0.0;
  double x = 0.0;
  BellEvaluation bell;
  bool violation_restricted = false;
  bool violation_horodecki = false;
  double p_excited_a = 0.0;
  double p_excited_b = 0.0;
};

std::vector<SeriesRecord> time_series(const EwlParams& params,
                                      const ReservoirModel& model,
                                      const TimeGrid& grid);

}  // namespace bellsim
