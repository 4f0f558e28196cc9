#include "bellsim/reservoir.hpp"

#include <cmath>
#include <stdexcept>

namespace bellsim {

namespace {

void require(bool condition, const char* message) {
  if (!condition) throw std::domain_error(message);
}

double clamp_amplitude(double q) {
  if (std::abs(q) > 1.0) {
    if (std::abs(q) > 1.0 + 1e-12)
      throw std::logic_error("reservoir amplitude left the unit interval");
    q = q > 0.0 ? 1.0 : -1.0;
  }
  return q;
}

double markovian_q(const MarkovianModel& model, double t) {
  require(model.gamma0 > 0.0, "gamma0 must be positive");
  return std::exp(-0.5 * model.gamma0 * t);
}

// Resonant pseudomode solution. d may be imaginary (oscillatory regime);
// the cosh/sinh combination is even in d, so the value is real. Near
// d = 0 the (lambda/d) sinh(dt/2) factor is evaluated by series.
double lorentzian_q(const LorentzianModel& model, double t) {
  require(model.gamma0 > 0.0, "gamma0 must be positive");
  require(model.lambda > 0.0, "lambda must be positive");
  const Complex d =
      std::sqrt(Complex(model.lambda * model.lambda -
                        2.0 * model.gamma0 * model.lambda));
  const Complex z = 0.5 * d * t;
  Complex sinhc;  // sinh(z)/z
  if (std::abs(z) < 1e-6) {
    const Complex z2 = z * z;
    sinhc = 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
  } else {
    sinhc = std::sinh(z) / z;
  }
  const Complex value =
      std::exp(-0.5 * model.lambda * t) *
      (std::cosh(z) + 0.5 * model.lambda * t * sinhc);
  if (std::abs(value.imag()) >= 1e-12)
    throw std::logic_error("lorentzian amplitude developed an imaginary part");
  return value.real();
}

double trapping_q(const TrappingModel& model, double t) {
  require(model.gamma0 > 0.0, "gamma0 must be positive");
  require(model.w >= 0.0 && model.w <= 1.0, "w must lie in [0, 1]");
  return model.w + (1.0 - model.w) * std::exp(-0.5 * model.gamma0 * t);
}

}  // namespace

const char* model_name(const ReservoirModel& model) {
  return std::visit(
      [](const auto& m) -> const char* {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MarkovianModel>) return "markovian";
        if constexpr (std::is_same_v<T, LorentzianModel>) return "lorentzian";
        return "trapping";
      },
      model);
}

DecoherenceAmplitude q_of_t(const ReservoirModel& model, double t) {
  require(t >= 0.0, "time must be non-negative");
  const double q = std::visit(
      [t](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, MarkovianModel>)
          return markovian_q(m, t);
        else if constexpr (std::is_same_v<T, LorentzianModel>)
          return lorentzian_q(m, t);
        else
          return trapping_q(m, t);
      },
      model);
  return DecoherenceAmplitude{Complex(clamp_amplitude(q), 0.0)};
}

std::vector<TrajectorySample> trajectory(const ReservoirModel& model,
                                         const TimeGrid& grid) {
  if (!(grid.t0 >= 0.0 && grid.t1 > grid.t0))
    throw std::invalid_argument("time grid requires t1 > t0 >= 0");
  if (grid.n < 2)
    throw std::invalid_argument("time grid requires at least 2 samples");

  std::vector<TrajectorySample> samples;
  samples.reserve(static_cast<std::size_t>(grid.n));
  const double step = (grid.t1 - grid.t0) / (grid.n - 1);
  for (int i = 0; i < grid.n; ++i) {
    const double t = grid.t0 + step * i;
    const auto q = q_of_t(model, t);
    samples.push_back({t, q, q.population_parameter()});
  }
  return samples;
}

std::optional<double> asymptotic_population_parameter(
    const ReservoirModel& model) {
  return std::visit(
      [](const auto& m) -> std::optional<double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TrappingModel>) return m.w * m.w;
        return 0.0;
      },
      model);
}

}  // namespace bellsim
