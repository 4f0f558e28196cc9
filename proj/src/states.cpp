#include "bellsim/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bellsim {

namespace {

// Zero test below which a coherence phase is defined as 0.
constexpr double kPhaseZeroTol = 1e-15;

void check_alpha(double alpha) {
  if (!(std::abs(alpha) <= 1.0))
    throw std::domain_error("alpha must lie in [-1, 1], got " +
                            std::to_string(alpha));
}

}  // namespace

const char* family_name(BellFamily family) {
  return family == BellFamily::Phi ? "phi" : "psi";
}

double EwlParams::beta() const {
  check_alpha(alpha);
  return std::sqrt(std::max(0.0, 1.0 - alpha * alpha));
}

double wrap_angle(double radians) {
  constexpr double two_pi = 2.0 * M_PI;
  double w = std::fmod(radians, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

TwoQubitState XStateView::embed() const {
  TwoQubitState state;
  auto& m = state.elements;
  m(0, 0) = p11;
  m(1, 1) = p22;
  m(2, 2) = p33;
  m(3, 3) = p44;
  m(0, 3) = std::polar(m14, d14);
  m(3, 0) = std::conj(m(0, 3));
  m(1, 2) = std::polar(m23, d23);
  m(2, 1) = std::conj(m(1, 2));
  return state;
}

TwoQubitState build_bell_like(const EwlParams& params) {
  check_alpha(params.alpha);
  const Complex phased_beta = std::polar(params.beta(), params.delta);

  Eigen::Vector4cd amplitude = Eigen::Vector4cd::Zero();
  if (params.family == BellFamily::Phi) {
    amplitude(2) = params.alpha;   // |01>
    amplitude(1) = phased_beta;    // |10>
  } else {
    amplitude(3) = params.alpha;   // |00>
    amplitude(0) = phased_beta;    // |11>
  }
  return TwoQubitState{amplitude * amplitude.adjoint()};
}

TwoQubitState build_ewl(const EwlParams& params) {
  check_alpha(params.alpha);
  if (!(params.r >= 0.0 && params.r <= 1.0))
    throw std::domain_error("purity r must lie in [0, 1], got " +
                            std::to_string(params.r));

  const double r = params.r;
  const double a2 = params.alpha * params.alpha;
  const double b2 = 1.0 - a2;
  const double mixed = (1.0 - r) / 4.0;
  const Complex coherence =
      params.alpha * params.beta() * std::polar(r, params.delta);

  TwoQubitState state;
  auto& m = state.elements;
  if (params.family == BellFamily::Phi) {
    m(0, 0) = mixed;
    m(1, 1) = mixed + b2 * r;
    m(2, 2) = mixed + a2 * r;
    m(3, 3) = mixed;
    m(1, 2) = coherence;
    m(2, 1) = std::conj(coherence);
  } else {
    m(0, 0) = mixed + b2 * r;
    m(1, 1) = mixed;
    m(2, 2) = mixed;
    m(3, 3) = mixed + a2 * r;
    m(0, 3) = coherence;
    m(3, 0) = std::conj(coherence);
  }
  return state;
}

ValidationReport validate(const TwoQubitState& state) {
  const auto& m = state.elements;
  ValidationReport report;
  report.hermiticity_residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  report.trace_residual = std::abs(m.trace() - Complex(1.0, 0.0));

  const Eigen::Matrix4cd hermitized = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(hermitized);
  report.min_eigenvalue = solver.eigenvalues().minCoeff();

  report.hermitian_ok = report.hermiticity_residual <= kHermitianTol;
  report.trace_ok = report.trace_residual <= kTraceTol;
  report.psd_ok = report.min_eigenvalue >= kPsdFloor;
  return report;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << (ok() ? "pass" : "fail")
      << " (hermiticity " << hermiticity_residual
      << ", trace " << trace_residual
      << ", min eigenvalue " << min_eigenvalue << ")";
  return out.str();
}

std::string XRejection::describe() const {
  std::ostringstream out;
  out << "off-X element rho_" << (row + 1) << (col + 1) << " has magnitude "
      << magnitude;
  return out.str();
}

XViewResult as_x_view(const TwoQubitState& state) {
  const auto& m = state.elements;

  XViewResult result;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool on_x = (i == j) || (i + j == 3);
      if (on_x) continue;
      const double magnitude = std::abs(m(i, j));
      if (magnitude > result.rejection.magnitude) {
        result.rejection = XRejection{i, j, magnitude};
      }
    }
  if (result.rejection.magnitude > kOffXTol) return result;

  XStateView view;
  view.p11 = m(0, 0).real();
  view.p22 = m(1, 1).real();
  view.p33 = m(2, 2).real();
  view.p44 = m(3, 3).real();
  view.m14 = std::abs(m(0, 3));
  view.m23 = std::abs(m(1, 2));
  view.d14 = view.m14 > kPhaseZeroTol ? wrap_angle(std::arg(m(0, 3))) : 0.0;
  view.d23 = view.m23 > kPhaseZeroTol ? wrap_angle(std::arg(m(1, 2))) : 0.0;
  result.view = view;
  result.rejection = XRejection{};
  return result;
}

}  // namespace bellsim
