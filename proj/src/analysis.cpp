#include "bellsim/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace bellsim {

namespace {

constexpr double kViolationLevel = 2.0;
// Strict-violation margin: B touches 2 exactly at x = 0 for every state,
// which must not count as a violation when hunting purity thresholds.
constexpr double kStrictMargin = 1e-12;

XStateView initial_view(const EwlParams& params) {
  auto result = as_x_view(build_ewl(params));
  if (!result.ok())
    throw std::logic_error("EWL construction left the X family: " +
                           result.rejection.describe());
  return *result.view;
}

double evaluator_value(const XStateView& initial, double x,
                       Evaluator evaluator) {
  if (evaluator == Evaluator::Restricted)
    return restricted_max(initial, x).value;
  const DecoherenceAmplitude root{Complex(std::sqrt(x), 0.0)};
  return horodecki_max(propagate_x(initial, root, root).embed());
}

// Largest up-crossing of the level B = 2, located on a dense scan from
// x = 1 downward and polished by bisection.
ThresholdResult find_threshold(const XStateView& initial,
                               Evaluator evaluator) {
  ThresholdResult result;
  result.evaluator = evaluator;

  constexpr int kScan = 4097;
  auto value_at = [&](double x) {
    return evaluator_value(initial, x, evaluator);
  };

  double hi = -1.0, lo = -1.0;
  double upper = 1.0;
  double upper_value = value_at(upper);
  for (int i = kScan - 2; i >= 0; --i) {
    const double x = static_cast<double>(i) / (kScan - 1);
    const double value = value_at(x);
    if (value <= kViolationLevel && upper_value > kViolationLevel) {
      lo = x;
      hi = upper;
      break;
    }
    upper = x;
    upper_value = value;
  }
  if (lo < 0.0) return result;  // never violates

  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (value_at(mid) > kViolationLevel ? hi : lo) = mid;
  }
  result.exists = true;
  result.x_star = 0.5 * (lo + hi);
  return result;
}

// Max of the evaluator over x in [0, 1]: dense grid plus a golden-section
// polish around the best sample (the argmax is not assumed to sit at an
// endpoint).
double max_over_x(const XStateView& initial, Evaluator evaluator) {
  constexpr int kScan = 513;
  auto value_at = [&](double x) {
    return evaluator_value(initial, x, evaluator);
  };

  int best_index = 0;
  double best = -1.0;
  for (int i = 0; i < kScan; ++i) {
    const double x = static_cast<double>(i) / (kScan - 1);
    const double value = value_at(x);
    if (value > best) {
      best = value;
      best_index = i;
    }
  }

  double lo = std::max(0.0, (best_index - 1.0) / (kScan - 1));
  double hi = std::min(1.0, (best_index + 1.0) / (kScan - 1));
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = value_at(x1);
  double f2 = value_at(x2);
  for (int iter = 0; iter < 90; ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = value_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = value_at(x1);
    }
  }
  return std::max({best, f1, f2});
}

}  // namespace

const char* evaluator_name(Evaluator evaluator) {
  return evaluator == Evaluator::Restricted ? "restricted" : "horodecki";
}

std::vector<SweepRecord> sweep(const EwlParams& params, int points) {
  if (points < 2)
    throw std::invalid_argument("sweep needs at least 2 grid points");
  const XStateView initial = initial_view(params);
  const double excited_a0 = initial.p11 + initial.p22;
  const double excited_b0 = initial.p11 + initial.p33;

  std::vector<SweepRecord> records;
  records.reserve(static_cast<std::size_t>(points));
  EvaluateOptions fast;
  fast.with_brute_force = false;
  for (int i = 0; i < points; ++i) {
    const double x = static_cast<double>(i) / (points - 1);
    const BellEvaluation bell = evaluate(initial, x, fast);
    SweepRecord record;
    record.x = x;
    record.restricted_max = bell.restricted_max;
    record.horodecki_max = bell.horodecki_max;
    record.violation_restricted = bell.restricted_max > kViolationLevel;
    record.violation_horodecki = bell.horodecki_max > kViolationLevel;
    record.p_excited_a = excited_a0 * x;
    record.p_excited_b = excited_b0 * x;
    records.push_back(record);
  }
  return records;
}

ThresholdResult threshold_population(const EwlParams& params,
                                     Evaluator evaluator) {
  return find_threshold(initial_view(params), evaluator);
}

std::optional<double> critical_purity(BellFamily family, double alpha,
                                      Evaluator evaluator) {
  EwlParams params{family, 1.0, alpha, 0.0};
  auto violates = [&](double r) {
    params.r = r;
    return max_over_x(initial_view(params), evaluator) >
           kViolationLevel + kStrictMargin;
  };

  if (!violates(1.0)) return std::nullopt;
  double lo = 0.0, hi = 1.0;  // no violation at r = 0 (fully mixed)
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (violates(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<SeriesRecord> time_series(const EwlParams& params,
                                      const ReservoirModel& model,
                                      const TimeGrid& grid) {
  const XStateView initial = initial_view(params);
  const double excited_a0 = initial.p11 + initial.p22;
  const double excited_b0 = initial.p11 + initial.p33;

  const auto samples = trajectory(model, grid);
  std::vector<SeriesRecord> records;
  records.reserve(samples.size());
  EvaluateOptions fast;
  fast.with_brute_force = false;
  for (const auto& sample : samples) {
    SeriesRecord record;
    record.t = sample.t;
    record.x = sample.x;
    record.bell = evaluate(initial, sample.x, fast);
    record.violation_restricted = record.bell.restricted_max > kViolationLevel;
    record.violation_horodecki = record.bell.horodecki_max > kViolationLevel;
    record.p_excited_a = excited_a0 * sample.x;
    record.p_excited_b = excited_b0 * sample.x;
    records.push_back(record);
  }
  return records;
}

}  // namespace bellsim
