#include "bellsim/chsh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace bellsim {

namespace {

Eigen::Vector3d unit_vector(MeasurementDirection d) {
  return {std::sin(d.theta) * std::cos(d.phi),
          std::sin(d.theta) * std::sin(d.phi), std::cos(d.theta)};
}

MeasurementDirection direction_from(const Eigen::Vector3d& v) {
  const double norm = v.norm();
  if (norm < 1e-14) return MeasurementDirection{0.0, 0.0};
  const Eigen::Vector3d n = v / norm;
  const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
  const double phi =
      std::abs(n.x()) + std::abs(n.y()) < 1e-14 ? 0.0 : std::atan2(n.y(), n.x());
  return normalize_direction(MeasurementDirection{theta, phi});
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

const Eigen::Matrix2cd& pauli(int n) {
  static const std::array<Eigen::Matrix2cd, 3> sigma = [] {
    std::array<Eigen::Matrix2cd, 3> s;
    s[0] << 0.0, 1.0, 1.0, 0.0;
    s[1] << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    s[2] << 1.0, 0.0, 0.0, -1.0;
    return s;
  }();
  return sigma[n];
}

// ---------------------------------------------------------------------
// Brute-force maximization internals. The objective is evaluated through
// the Pauli correlation matrix: for fixed T the Bell combination is
//   |n_a . T (n_b - n_b')| + n_a' . T (n_b + n_b'),
// and along any single angle both inner terms are sinusoids
// A cos t + B sin t + C, so each coordinate has an exact line maximum.
// ---------------------------------------------------------------------

using Angles = std::array<double, 8>;  // ta, pa, ta', pa', tb, pb, tb', pb'

struct BilinearObjective {
  Eigen::Matrix3d t;

  double operator()(const Angles& a) const {
    const Eigen::Vector3d na = unit_vector({a[0], a[1]});
    const Eigen::Vector3d nap = unit_vector({a[2], a[3]});
    const Eigen::Vector3d nb = unit_vector({a[4], a[5]});
    const Eigen::Vector3d nbp = unit_vector({a[6], a[7]});
    return std::abs(na.dot(t * (nb - nbp))) + nap.dot(t * (nb + nbp));
  }

  // Inner terms before the absolute value / sum.
  std::pair<double, double> terms(const Angles& a) const {
    const Eigen::Vector3d na = unit_vector({a[0], a[1]});
    const Eigen::Vector3d nap = unit_vector({a[2], a[3]});
    const Eigen::Vector3d nb = unit_vector({a[4], a[5]});
    const Eigen::Vector3d nbp = unit_vector({a[6], a[7]});
    return {na.dot(t * (nb - nbp)), nap.dot(t * (nb + nbp))};
  }
};

struct Sinusoid {
  double a = 0.0, b = 0.0, c = 0.0;
  double operator()(double t) const {
    return a * std::cos(t) + b * std::sin(t) + c;
  }
};

// Fits A cos t + B sin t + C through samples at t = 0, pi/2, pi.
Sinusoid fit_sinusoid(double at0, double at_half_pi, double at_pi) {
  Sinusoid s;
  s.a = 0.5 * (at0 - at_pi);
  s.c = 0.5 * (at0 + at_pi);
  s.b = at_half_pi - s.c;
  return s;
}

// Exact maximum of |p(t)| + g(t) over one period.
double line_maximum(const Sinusoid& p, const Sinusoid& g, double current,
                    double* arg_out) {
  std::array<double, 8> candidates;
  int count = 0;
  candidates[count++] = current;
  candidates[count++] = std::atan2(p.b + g.b, p.a + g.a);   // branch p >= 0
  candidates[count++] = std::atan2(g.b - p.b, g.a - p.a);   // branch p < 0
  const double r = std::hypot(p.a, p.b);
  if (r > 0.0 && std::abs(p.c) <= r) {                      // kinks p = 0
    const double psi = std::atan2(p.b, p.a);
    const double offset = std::acos(std::clamp(-p.c / r, -1.0, 1.0));
    candidates[count++] = psi + offset;
    candidates[count++] = psi - offset;
  }
  double best = -1e300;
  double best_arg = current;
  for (int i = 0; i < count; ++i) {
    const double value = std::abs(p(candidates[i])) + g(candidates[i]);
    if (value > best) {
      best = value;
      best_arg = candidates[i];
    }
  }
  *arg_out = best_arg;
  return best;
}

struct Refined {
  Angles angles;
  double value = 0.0;
  int sweeps = 0;
  bool converged = false;
};

Refined refine(const BilinearObjective& objective, Angles angles,
               bool pin_a_to_z) {
  constexpr int kMaxSweeps = 60;
  constexpr double kTol = 1e-13;

  if (pin_a_to_z) {
    angles[0] = 0.0;
    angles[1] = 0.0;
  }
  double value = objective(angles);
  Refined result{angles, value, 0, false};
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    const double before = value;
    for (int coord = 0; coord < 8; ++coord) {
      if (pin_a_to_z && coord < 2) continue;
      Angles probe = angles;
      std::array<std::pair<double, double>, 3> samples;
      const std::array<double, 3> where = {0.0, 0.5 * M_PI, M_PI};
      for (int s = 0; s < 3; ++s) {
        probe[coord] = where[s];
        samples[s] = objective.terms(probe);
      }
      const Sinusoid p = fit_sinusoid(samples[0].first, samples[1].first,
                                      samples[2].first);
      const Sinusoid g = fit_sinusoid(samples[0].second, samples[1].second,
                                      samples[2].second);
      double arg = angles[coord];
      const double best = line_maximum(p, g, angles[coord], &arg);
      if (best > value) {
        value = best;
        angles[coord] = arg;
      }
    }
    result.sweeps = sweep;
    if (value - before < kTol) {
      result.converged = true;
      break;
    }
  }
  result.angles = angles;
  result.value = value;
  return result;
}

ChshSettings settings_from(const Angles& a) {
  return ChshSettings{
      normalize_direction({a[0], a[1]}), normalize_direction({a[2], a[3]}),
      normalize_direction({a[4], a[5]}), normalize_direction({a[6], a[7]})};
}

std::array<double, 8> settings_key(const ChshSettings& s) {
  return {s.a.theta,       s.a.phi,       s.a_prime.theta, s.a_prime.phi,
          s.b.theta,       s.b.phi,       s.b_prime.theta, s.b_prime.phi};
}

}  // namespace

MeasurementDirection normalize_direction(MeasurementDirection dir) {
  double theta = wrap_angle(dir.theta);
  double phi = dir.phi;
  if (theta > M_PI) {
    theta = 2.0 * M_PI - theta;
    phi += M_PI;
  }
  return MeasurementDirection{theta, wrap_angle(phi)};
}

Eigen::Matrix2cd observable_matrix(MeasurementDirection dir) {
  const Eigen::Vector3d n = unit_vector(dir);
  Eigen::Matrix2cd o;
  o << Complex(n.z(), 0.0), Complex(n.x(), -n.y()),
      Complex(n.x(), n.y()), Complex(-n.z(), 0.0);
  return o;
}

double correlation(const TwoQubitState& state, MeasurementDirection dir_a,
                   MeasurementDirection dir_b) {
  const Complex value =
      (state.elements * kron(observable_matrix(dir_a), observable_matrix(dir_b)))
          .trace();
  if (std::abs(value.imag()) >= 1e-10)
    throw std::runtime_error("correlation of a non-Hermitian state");
  return value.real();
}

double bell_function(const TwoQubitState& state,
                     const ChshSettings& settings) {
  const double e_ab = correlation(state, settings.a, settings.b);
  const double e_abp = correlation(state, settings.a, settings.b_prime);
  const double e_apb = correlation(state, settings.a_prime, settings.b);
  const double e_apbp = correlation(state, settings.a_prime, settings.b_prime);
  return std::abs(e_ab - e_abp) + e_apb + e_apbp;
}

Eigen::Matrix3d pauli_correlation_matrix(const TwoQubitState& state) {
  Eigen::Matrix3d t;
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m) {
      const Complex value =
          (state.elements * kron(pauli(n), pauli(m))).trace();
      t(n, m) = value.real();
    }
  return t;
}

double horodecki_max(const TwoQubitState& state) {
  const Eigen::Matrix3d t = pauli_correlation_matrix(state);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(t.transpose() * t);
  const auto& u = solver.eigenvalues();  // ascending
  return 2.0 * std::sqrt(std::max(0.0, u(2) + u(1)));
}

ChshSettings restricted_settings(const XStateView& initial, double x, int k,
                                 int k_prime) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("population parameter x must lie in [0, 1]");

  const double p =
      1.0 - 2.0 * x * (1.0 + initial.p11 - initial.p44 - 2.0 * initial.p11 * x);
  const double q = 2.0 * x * (initial.m14 + initial.m23);
  const double theta2 = p == 0.0 ? 0.5 * M_PI : std::atan(q / std::abs(p));
  const double phi1 =
      wrap_angle((k + k_prime) * M_PI - 0.5 * (initial.d14 + initial.d23));
  const double phi2 =
      wrap_angle((k - k_prime) * M_PI - 0.5 * (initial.d14 - initial.d23));

  ChshSettings settings;
  settings.a = {0.0, phi1};
  settings.a_prime = {0.5 * M_PI, phi1};
  settings.b = {theta2, phi2};
  settings.b_prime = {M_PI - theta2, phi2};
  return settings;
}

RestrictedMax restricted_max(const XStateView& initial, double x) {
  RestrictedMax result;
  result.settings = restricted_settings(initial, x);
  result.p =
      1.0 - 2.0 * x * (1.0 + initial.p11 - initial.p44 - 2.0 * initial.p11 * x);
  result.q = 2.0 * x * (initial.m14 + initial.m23);
  result.value = 2.0 * std::hypot(result.p, result.q);
  return result;
}

BruteForceResult brute_force_max(const TwoQubitState& state,
                                 const BruteForceOptions& options) {
  const BilinearObjective objective{pauli_correlation_matrix(state)};

  // Coarse stage: scan B-side pairs; the best A directions against a fixed
  // B pair are the normalized images T(n_b -+ n_b').
  struct Candidate {
    double score;
    Angles angles;
  };
  std::vector<Candidate> candidates;
  const int gd = std::max(2, options.grid_density);
  const Eigen::Vector3d z_axis(0.0, 0.0, 1.0);
  std::vector<Eigen::Vector3d> grid_dirs;
  std::vector<MeasurementDirection> grid_angles;
  for (int i = 0; i < gd; ++i)
    for (int j = 0; j < gd; ++j) {
      const MeasurementDirection d{M_PI * (i + 0.5) / gd, 2.0 * M_PI * j / gd};
      grid_angles.push_back(d);
      grid_dirs.push_back(unit_vector(d));
    }
  const int pairs = static_cast<int>(grid_dirs.size());
  for (int b = 0; b < pairs; ++b)
    for (int bp = 0; bp < pairs; ++bp) {
      const Eigen::Vector3d u = objective.t * (grid_dirs[b] - grid_dirs[bp]);
      const Eigen::Vector3d v = objective.t * (grid_dirs[b] + grid_dirs[bp]);
      const double score =
          (options.pin_a_to_z ? std::abs(u.dot(z_axis)) : u.norm()) + v.norm();
      const MeasurementDirection da =
          options.pin_a_to_z ? MeasurementDirection{0.0, 0.0}
                             : direction_from(u);
      const MeasurementDirection dap = direction_from(v);
      candidates.push_back(
          {score,
           Angles{da.theta, da.phi, dap.theta, dap.phi, grid_angles[b].theta,
                  grid_angles[b].phi, grid_angles[bp].theta,
                  grid_angles[bp].phi}});
    }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.score > b.score;
                   });
  constexpr int kKeep = 8;
  if (static_cast<int>(candidates.size()) > kKeep) candidates.resize(kKeep);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int r = 0; r < options.restarts; ++r) {
    Angles a;
    for (int i = 0; i < 4; ++i) {
      a[2 * i] = std::acos(1.0 - 2.0 * unit(rng));
      a[2 * i + 1] = 2.0 * M_PI * unit(rng);
    }
    candidates.push_back({0.0, a});
  }

  Refined best;
  best.value = -1e300;
  ChshSettings best_settings;
  for (const auto& candidate : candidates) {
    const Refined refined = refine(objective, candidate.angles,
                                   options.pin_a_to_z);
    const ChshSettings settings = settings_from(refined.angles);
    const bool better =
        refined.value > best.value ||
        (refined.value == best.value &&
         settings_key(settings) < settings_key(best_settings));
    if (better) {
      best = refined;
      best_settings = settings;
    }
  }

  BruteForceResult result;
  result.settings = best_settings;
  result.value = bell_function(state, best_settings);
  result.sweeps = best.sweeps;
  result.converged = best.converged;
  return result;
}

BellEvaluation evaluate(const XStateView& initial, double x,
                        const EvaluateOptions& options) {
  const RestrictedMax closed_form = restricted_max(initial, x);

  const DecoherenceAmplitude root{Complex(std::sqrt(x), 0.0)};
  const TwoQubitState evolved = propagate_x(initial, root, root).embed();

  BellEvaluation evaluation;
  evaluation.restricted_max = closed_form.value;
  evaluation.restricted_settings = closed_form.settings;
  evaluation.p = closed_form.p;
  evaluation.q = closed_form.q;
  evaluation.horodecki_max = horodecki_max(evolved);
  if (options.with_brute_force)
    evaluation.brute_force_max =
        brute_force_max(evolved, options.brute_force).value;

  const double achieved = bell_function(evolved, closed_form.settings);
  if (std::abs(achieved - closed_form.value) > 1e-9)
    throw std::logic_error(
        "restricted settings failed to reproduce the closed-form maximum");
  return evaluation;
}

}  // namespace bellsim
