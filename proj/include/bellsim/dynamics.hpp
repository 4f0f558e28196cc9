#pragma once

#include "bellsim/states.hpp"

namespace bellsim {

/// Decoherence amplitude q of the zero-temperature damping channel.
/// The channel is contractive only for |q| <= 1; operations taking a
/// DecoherenceAmplitude throw std::domain_error beyond that.
struct DecoherenceAmplitude {
  Complex q{1.0, 0.0};

  /// Population parameter x = |q|^2, clamped to [0, 1].
  double population_parameter() const;
};

/// Single-qubit damping map:
///   rho_11 -> rho_11 |q|^2,   rho_10 -> rho_10 q,
///   rho_01 -> rho_01 q*,      rho_00 -> rho_00 + rho_11 (1 - |q|^2).
SingleQubitState single_qubit_map(const SingleQubitState& rho0,
                                  DecoherenceAmplitude q);

/// p(t) = rho_11(0) |q|^2, the surviving excited-state population.
double excited_population(const SingleQubitState& rho0,
                          DecoherenceAmplitude q);

/// Factorized two-qubit propagator: contracts the initial matrix with the
/// per-qubit coefficient tensors of the damping map (qubit A with qa,
/// qubit B with qb). The reservoirs may differ.
TwoQubitState propagate(const TwoQubitState& rho0, DecoherenceAmplitude qa,
                        DecoherenceAmplitude qb);

/// Closed-form propagation of an X-structure view; agrees with propagate
/// on the embedded matrix. Coherence phases shift by arg(qa*qb) (m14) and
/// arg(qa*conj(qb)) (m23).
XStateView propagate_x(const XStateView& view0, DecoherenceAmplitude qa,
                       DecoherenceAmplitude qb);

}  // namespace bellsim
