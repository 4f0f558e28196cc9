#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>

namespace bellsim {

using Complex = std::complex<double>;

/// Two-qubit basis order used throughout: {|11>, |10>, |01>, |00>},
/// i.e. index 0 is both qubits excited and index 3 is both in the ground
/// state. Single-qubit matrices use {|1>, |0>} with the excited state first.
inline constexpr int kBasisDim = 4;
inline constexpr const char* kBasisOrder = "11,10,01,00";

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdFloor = -1e-10;   // smallest admissible eigenvalue
inline constexpr double kOffXTol = 1e-12;     // off-X element magnitude bound

/// Density matrix of the qubit pair in the basis above. This is a plain
/// value type: construction does not enforce the density-matrix axioms,
/// validate() reports them.
struct TwoQubitState {
  Eigen::Matrix4cd elements = Eigen::Matrix4cd::Zero();
};

/// Single-qubit density matrix in the basis {|1>, |0>}.
struct SingleQubitState {
  Eigen::Matrix2cd elements = Eigen::Matrix2cd::Zero();
};

enum class BellFamily { Phi, Psi };

const char* family_name(BellFamily family);

/// Parameters of an extended Werner-like state: purity r, pure-part
/// amplitude alpha (beta is the non-negative root sqrt(1 - alpha^2);
/// a negative beta is expressed through delta = pi) and relative phase
/// delta in radians. build_bell_like ignores r.
struct EwlParams {
  BellFamily family = BellFamily::Phi;
  double r = 1.0;
  double alpha = 0.70710678118654752;
  double delta = 0.0;

  double beta() const;
};

/// The eight real degrees of freedom of an X-structured state: four
/// populations, two anti-diagonal coherence magnitudes and their phases.
struct XStateView {
  double p11 = 0.0;
  double p22 = 0.0;
  double p33 = 0.0;
  double p44 = 0.0;
  double m14 = 0.0;  // |rho_14|
  double m23 = 0.0;  // |rho_23|
  double d14 = 0.0;  // arg(rho_14) in [0, 2pi); 0 for a vanishing element
  double d23 = 0.0;  // arg(rho_23) in [0, 2pi)

  TwoQubitState embed() const;
};

/// Pure Bell-like state |Phi> = alpha|01> + beta e^{i delta}|10> or
/// |Psi> = alpha|00> + beta e^{i delta}|11> as a rank-1 density matrix.
/// Throws std::domain_error for |alpha| > 1.
TwoQubitState build_bell_like(const EwlParams& params);

/// Extended Werner-like mixture r|pure><pure| + (1-r)/4 * I, assembled
/// element-wise. Throws std::domain_error for r outside [0,1] or
/// |alpha| > 1.
TwoQubitState build_ewl(const EwlParams& params);

/// Diagnostics for the density-matrix axioms; never throws.
struct ValidationReport {
  double hermiticity_residual = 0.0;  // max_ij |rho_ij - conj(rho_ji)|
  double trace_residual = 0.0;        // |tr(rho) - 1|
  double min_eigenvalue = 0.0;        // of the hermitized matrix
  bool hermitian_ok = false;
  bool trace_ok = false;
  bool psd_ok = false;

  bool ok() const { return hermitian_ok && trace_ok && psd_ok; }
  std::string summary() const;
};

ValidationReport validate(const TwoQubitState& state);

/// Identifies the largest off-X element when a state is rejected.
struct XRejection {
  int row = -1;
  int col = -1;
  double magnitude = 0.0;
  std::string describe() const;
};

struct XViewResult {
  std::optional<XStateView> view;
  XRejection rejection;

  bool ok() const { return view.has_value(); }
};

/// Extracts the X-structure view when every element off the main and anti
/// diagonal has magnitude <= kOffXTol; otherwise reports the offender.
XViewResult as_x_view(const TwoQubitState& state);

/// Wraps an angle into [0, 2pi).
double wrap_angle(double radians);

}  // namespace bellsim
