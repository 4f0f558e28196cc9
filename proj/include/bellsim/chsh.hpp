#pragma once

#include <cstdint>
#include <optional>

#include "bellsim/dynamics.hpp"

namespace bellsim {

/// Spin-like +-1 observable direction (sin t cos p, sin t sin p, cos t)
/// on the Bloch sphere; theta in [0, pi], phi in [0, 2pi).
struct MeasurementDirection {
  double theta = 0.0;
  double phi = 0.0;
};

/// Canonical-range equivalent of the same spatial direction.
MeasurementDirection normalize_direction(MeasurementDirection dir);

/// a, a_prime measured on qubit A; b, b_prime on qubit B. The primed
/// observable of a qubit shares the azimuth of the unprimed one in the
/// restricted family, but the type does not require it.
struct ChshSettings {
  MeasurementDirection a;
  MeasurementDirection a_prime;
  MeasurementDirection b;
  MeasurementDirection b_prime;
};

/// n . sigma for the direction above; eigenvalues exactly +-1.
Eigen::Matrix2cd observable_matrix(MeasurementDirection dir);

/// <O_A O_B> = Tr{rho (O_A x O_B)}; real within 1e-10 for valid states.
double correlation(const TwoQubitState& state, MeasurementDirection dir_a,
                   MeasurementDirection dir_b);

/// B = |<a b> - <a b'>| + <a' b> + <a' b'>.
double bell_function(const TwoQubitState& state, const ChshSettings& settings);

/// Pauli correlation matrix T_nm = Tr[rho (sigma_n x sigma_m)] with the
/// index convention 1<->x, 2<->y, 3<->z.
Eigen::Matrix3d pauli_correlation_matrix(const TwoQubitState& state);

/// Horodecki value 2 sqrt(u1 + u2), u1 >= u2 the largest eigenvalues of
/// T^T T. Equals the Bell-function maximum over all settings.
double horodecki_max(const TwoQubitState& state);

/// Optimal angle set for the X-state family with one A-observable pinned
/// to the z axis: theta = {0, pi/2, atan(Q/|P|), pi - theta2}, azimuths
/// phi1 = (k+k')pi - (d14+d23)/2, phi2 = (k-k')pi - (d14-d23)/2. The
/// integers k, k' move the settings without changing the achieved value.
ChshSettings restricted_settings(const XStateView& initial, double x, int k = 0,
                                 int k_prime = 0);

/// Closed-form maximum over the restricted family for an initial X view
/// evolved to population parameter x = |q|^2:
///   P = 1 - 2x[1 + p11 - p44 - 2 p11 x],  Q = 2x(m14 + m23),
///   value = 2 sqrt(P^2 + Q^2), achieved at restricted_settings.
struct RestrictedMax {
  double value = 0.0;
  double p = 0.0;
  double q = 0.0;
  ChshSettings settings;
};

RestrictedMax restricted_max(const XStateView& initial, double x);

/// Numerical maximization of bell_function over all eight angles: coarse
/// alignment grid (grid_density^4 candidate B-side pairs with the A side
/// chosen against T(n_b -+ n_b')), then cyclic coordinate-ascent
/// refinement from the best candidates plus `restarts` seeded random
/// starts. Deterministic for a fixed seed.
struct BruteForceOptions {
  int grid_density = 12;
  int restarts = 32;
  std::uint64_t seed = 20080513;  // default; CLI --seed overrides
  bool pin_a_to_z = false;        // keep a = z fixed (restricted class)
};

struct BruteForceResult {
  double value = 0.0;
  ChshSettings settings;
  int sweeps = 0;       // refinement sweeps spent on the winner
  bool converged = false;
};

BruteForceResult brute_force_max(const TwoQubitState& state,
                                 const BruteForceOptions& options = {});

/// Aggregated evaluation of one (initial X view, x) pair. brute_force_max
/// is skipped when the options disable it (dense sweeps/time series).
struct BellEvaluation {
  double restricted_max = 0.0;
  double horodecki_max = 0.0;
  std::optional<double> brute_force_max;
  ChshSettings restricted_settings;
  double p = 0.0;
  double q = 0.0;
};

struct EvaluateOptions {
  bool with_brute_force = true;
  BruteForceOptions brute_force;
};

/// Runs restricted_max, evolves the view with the real amplitude sqrt(x)
/// on both qubits, evaluates horodecki_max (and optionally
/// brute_force_max) on the evolved state, and cross-checks that
/// bell_function at the restricted settings reproduces the closed form
/// within 1e-9 (std::logic_error otherwise).
BellEvaluation evaluate(const XStateView& initial, double x,
                        const EvaluateOptions& options = {});

inline constexpr double kTsirelsonBound = 2.8284271247461903;  // 2 sqrt(2)

}  // namespace bellsim
