#include "bellsim/dynamics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace bellsim {

namespace {

constexpr double kAmplitudeSlack = 1e-12;

void check_contractive(DecoherenceAmplitude q) {
  if (std::abs(q.q) > 1.0 + kAmplitudeSlack)
    throw std::domain_error("decoherence amplitude must satisfy |q| <= 1, "
                            "got |q| = " + std::to_string(std::abs(q.q)));
}

// Non-zero entries of the single-qubit evolution tensor read off the
// damping map, in matrix indices (0 = excited): out(r, c) accumulates
// coeff * in(r_in, c_in).
struct MapCoefficient {
  int row, col, row_in, col_in;
  Complex coeff;
};

std::array<MapCoefficient, 5> map_coefficients(DecoherenceAmplitude q) {
  const double x = q.population_parameter();
  return {{{0, 0, 0, 0, Complex(x, 0.0)},
           {0, 1, 0, 1, q.q},
           {1, 0, 1, 0, std::conj(q.q)},
           {1, 1, 1, 1, Complex(1.0, 0.0)},
           {1, 1, 0, 0, Complex(1.0 - x, 0.0)}}};
}

}  // namespace

double DecoherenceAmplitude::population_parameter() const {
  return std::min(1.0, std::norm(q));
}

SingleQubitState single_qubit_map(const SingleQubitState& rho0,
                                  DecoherenceAmplitude q) {
  check_contractive(q);
  const double x = q.population_parameter();
  const auto& m = rho0.elements;

  SingleQubitState out;
  out.elements(0, 0) = m(0, 0) * x;
  out.elements(0, 1) = m(0, 1) * q.q;
  out.elements(1, 0) = m(1, 0) * std::conj(q.q);
  out.elements(1, 1) = m(1, 1) + m(0, 0) * (1.0 - x);
  return out;
}

double excited_population(const SingleQubitState& rho0,
                          DecoherenceAmplitude q) {
  return rho0.elements(0, 0).real() * q.population_parameter();
}

TwoQubitState propagate(const TwoQubitState& rho0, DecoherenceAmplitude qa,
                        DecoherenceAmplitude qb) {
  check_contractive(qa);
  check_contractive(qb);
  const auto coeff_a = map_coefficients(qa);
  const auto coeff_b = map_coefficients(qb);

  TwoQubitState out;
  for (const auto& a : coeff_a)
    for (const auto& b : coeff_b) {
      const int row = 2 * a.row + b.row;
      const int col = 2 * a.col + b.col;
      const int row_in = 2 * a.row_in + b.row_in;
      const int col_in = 2 * a.col_in + b.col_in;
      out.elements(row, col) +=
          a.coeff * b.coeff * rho0.elements(row_in, col_in);
    }
  return out;
}

XStateView propagate_x(const XStateView& view0, DecoherenceAmplitude qa,
                       DecoherenceAmplitude qb) {
  check_contractive(qa);
  check_contractive(qb);
  const double xa = qa.population_parameter();
  const double xb = qb.population_parameter();
  const double mag = std::abs(qa.q) * std::abs(qb.q);

  XStateView out;
  out.p11 = xa * xb * view0.p11;
  out.p22 = xa * view0.p22 + xa * (1.0 - xb) * view0.p11;
  out.p33 = xb * view0.p33 + (1.0 - xa) * xb * view0.p11;
  out.p44 = 1.0 - out.p11 - out.p22 - out.p33;
  out.m14 = mag * view0.m14;
  out.m23 = mag * view0.m23;
  if (out.m14 > 0.0)
    out.d14 = wrap_angle(view0.d14 + std::arg(qa.q * qb.q));
  if (out.m23 > 0.0)
    out.d23 = wrap_angle(view0.d23 + std::arg(qa.q * std::conj(qb.q)));
  return out;
}

}  // namespace bellsim
