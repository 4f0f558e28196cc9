#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "bellsim/dynamics.hpp"

namespace bellsim {

/// q(t) = exp(-gamma0 t / 2): flat (memoryless) reservoir spectrum.
struct MarkovianModel {
  double gamma0 = 1.0;
};

/// Resonant Lorentzian spectral density of width lambda:
///   q(t) = e^{-lambda t/2} [cosh(d t/2) + (lambda/d) sinh(d t/2)],
///   d = sqrt(lambda^2 - 2 gamma0 lambda).
/// For lambda < 2 gamma0 the amplitude oscillates (d imaginary) but the
/// expression stays real.
struct LorentzianModel {
  double gamma0 = 1.0;
  double lambda = 1.0;
};

/// Band-gap-style toy with a trapped asymptote:
///   q(t) = w + (1-w) exp(-gamma0 t / 2), so x(t) -> w^2.
struct TrappingModel {
  double gamma0 = 1.0;
  double w = 0.0;
};

using ReservoirModel =
    std::variant<MarkovianModel, LorentzianModel, TrappingModel>;

const char* model_name(const ReservoirModel& model);

/// Uniformly sampled time window; t1 > t0 >= 0 and n >= 2.
struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  int n = 2;
};

struct TrajectorySample {
  double t = 0.0;
  DecoherenceAmplitude q;
  double x = 0.0;  // |q(t)|^2
};

/// Evaluates the model amplitude at one time. Throws std::domain_error for
/// t < 0 or invalid model parameters (rates must be positive, w in [0,1]).
DecoherenceAmplitude q_of_t(const ReservoirModel& model, double t);

/// n uniformly spaced samples over [t0, t1] inclusive.
/// Throws std::invalid_argument when the grid invariants fail.
std::vector<TrajectorySample> trajectory(const ReservoirModel& model,
                                         const TimeGrid& grid);

/// Limit of |q(t)|^2 for t -> infinity; disengaged if the model had no
/// limit (never the case for the three models here).
std::optional<double> asymptotic_population_parameter(
    const ReservoirModel& model);

}  // namespace bellsim
