#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bellsim/analysis.hpp"

using namespace bellsim;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Independent oracle for the Psi-family threshold: the nonzero root of
// 4x^3 - 8x^2 + 9x - 4 = 0, solved by bisection on the polynomial itself.
double psi_cubic_root() {
  auto cubic = [](double x) { return ((4.0 * x - 8.0) * x + 9.0) * x - 4.0; };
  double lo = 0.5, hi = 1.0;  // cubic(0.5) < 0 < cubic(1)
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cubic(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

EwlParams werner(BellFamily family, double r) {
  return EwlParams{family, r, kInvSqrt2, 0.0};
}

}  // namespace

TEST_CASE("sweep: endpoints scale as 2*sqrt(2)*r for both families") {
  for (auto family : {BellFamily::Phi, BellFamily::Psi}) {
    for (double r : {1.0, 0.9, 0.8}) {
      const auto records = sweep(werner(family, r), 11);
      REQUIRE(records.size() == 11);
      CHECK(records.front().x == doctest::Approx(0.0));
      CHECK(records.back().x == doctest::Approx(1.0));
      CHECK(records.back().restricted_max ==
            doctest::Approx(kTsirelsonBound * r).epsilon(1e-12));
      CHECK(records.back().horodecki_max ==
            doctest::Approx(kTsirelsonBound * r).epsilon(1e-12));
    }
  }
}

TEST_CASE("sweep: low purity curves never violate") {
  const auto records = sweep(werner(BellFamily::Psi, 0.6), 201);
  for (const auto& rec : records) {
    // B = 2 exactly at x = 0; never above anywhere.
    CHECK(rec.restricted_max <= 2.0);
    if (rec.x > 0.0) CHECK(rec.restricted_max < 2.0);
    CHECK_FALSE(rec.violation_restricted);
    CHECK(rec.restricted_max <= kTsirelsonBound + 1e-9);
    CHECK(rec.horodecki_max <= kTsirelsonBound + 1e-9);
    CHECK(rec.violation_horodecki == (rec.horodecki_max > 2.0));
  }
}

TEST_CASE("sweep: excited populations track x") {
  const EwlParams params{BellFamily::Phi, 0.7, 0.6, 0.4};
  const auto view = as_x_view(build_ewl(params));
  REQUIRE(view.ok());
  const double excited_a0 = view.view->p11 + view.view->p22;
  const double excited_b0 = view.view->p11 + view.view->p33;
  const auto records = sweep(params, 21);
  for (const auto& rec : records) {
    CHECK(rec.p_excited_a == doctest::Approx(excited_a0 * rec.x));
    CHECK(rec.p_excited_b == doctest::Approx(excited_b0 * rec.x));
  }
}

TEST_CASE("threshold_population: Phi-family analytic value 0.8") {
  const auto result =
      threshold_population(werner(BellFamily::Phi, 1.0), Evaluator::Restricted);
  REQUIRE(result.exists);
  CHECK(std::abs(result.x_star - 0.8) < 1e-9);

  const auto view = as_x_view(build_ewl(werner(BellFamily::Phi, 1.0)));
  REQUIRE(view.ok());
  CHECK(std::abs(restricted_max(*view.view, result.x_star).value - 2.0) <
        1e-8);
}

TEST_CASE("threshold_population: Psi-family cubic root, rounds to 0.77") {
  const auto result =
      threshold_population(werner(BellFamily::Psi, 1.0), Evaluator::Restricted);
  REQUIRE(result.exists);
  const double oracle = psi_cubic_root();
  CHECK(std::abs(result.x_star - oracle) < 1e-8);
  CHECK(std::round(result.x_star * 100.0) / 100.0 == doctest::Approx(0.77));
}

TEST_CASE("threshold_population: no violation below the purity cutoff") {
  const auto result =
      threshold_population(werner(BellFamily::Phi, 0.6), Evaluator::Restricted);
  CHECK_FALSE(result.exists);
  const auto psi =
      threshold_population(werner(BellFamily::Psi, 0.7), Evaluator::Restricted);
  CHECK_FALSE(psi.exists);
}

TEST_CASE("threshold_population with the Horodecki evaluator") {
  // For the Phi Werner state the Horodecki curve is 2*sqrt(2)*x in its
  // violating stretch, so the threshold sits at 1/sqrt(2).
  const auto result =
      threshold_population(werner(BellFamily::Phi, 1.0), Evaluator::Horodecki);
  REQUIRE(result.exists);
  CHECK(result.evaluator == Evaluator::Horodecki);
  CHECK(std::abs(result.x_star - kInvSqrt2) < 1e-9);
}

TEST_CASE("threshold consistency for a non-maximal alpha via brute force") {
  // No paper value exists for alpha != beta; cross-check the Horodecki
  // threshold against the optimization oracle at the crossing.
  const EwlParams params{BellFamily::Psi, 0.95, 0.8, 0.0};
  const auto result = threshold_population(params, Evaluator::Horodecki);
  REQUIRE(result.exists);

  const auto view = as_x_view(build_ewl(params));
  REQUIRE(view.ok());
  const double root = std::sqrt(result.x_star);
  const auto evolved = propagate_x(*view.view, DecoherenceAmplitude{root},
                                   DecoherenceAmplitude{root})
                           .embed();
  BruteForceOptions options;
  options.grid_density = 10;
  options.restarts = 12;
  CHECK(std::abs(brute_force_max(evolved, options).value - 2.0) < 1e-4);
}

TEST_CASE("critical_purity: 1/sqrt(2) for both families and evaluators") {
  for (auto family : {BellFamily::Phi, BellFamily::Psi}) {
    const auto restricted =
        critical_purity(family, kInvSqrt2, Evaluator::Restricted);
    REQUIRE(restricted.has_value());
    CHECK(std::abs(*restricted - kInvSqrt2) < 1e-8);

    const auto horodecki =
        critical_purity(family, kInvSqrt2, Evaluator::Horodecki);
    REQUIRE(horodecki.has_value());
    CHECK(std::abs(*horodecki - *restricted) < 1e-9);
  }
}

TEST_CASE("critical_purity: separable pure part never violates") {
  CHECK_FALSE(critical_purity(BellFamily::Phi, 1.0, Evaluator::Restricted)
                  .has_value());
  CHECK_FALSE(critical_purity(BellFamily::Psi, 1.0, Evaluator::Horodecki)
                  .has_value());
}

TEST_CASE("restricted curve is increasing past the Phi threshold") {
  const auto view = as_x_view(build_ewl(werner(BellFamily::Phi, 1.0)));
  REQUIRE(view.ok());
  double previous = restricted_max(*view.view, 0.8).value;
  for (int i = 1; i <= 100; ++i) {
    const double x = 0.8 + 0.2 * i / 100.0;
    const double value = restricted_max(*view.view, x).value;
    CHECK(value > previous);
    previous = value;
  }
}

TEST_CASE("time_series: trapping keeps the violation alive") {
  const auto records = time_series(werner(BellFamily::Phi, 1.0),
                                   TrappingModel{1.0, 0.95},
                                   TimeGrid{0.0, 50.0, 201});
  REQUIRE(records.size() == 201);
  for (const auto& rec : records) {
    CHECK(rec.x >= 0.9025 - 1e-12);
    CHECK(rec.violation_restricted);
    CHECK(rec.bell.restricted_max > 2.0);
  }
}

TEST_CASE("time_series: Markovian decay kills the violation at ln(1.25)") {
  const double cutoff = std::log(1.25);
  const auto records = time_series(werner(BellFamily::Phi, 1.0),
                                   MarkovianModel{1.0},
                                   TimeGrid{0.0, 5.0, 501});
  for (const auto& rec : records) {
    if (rec.t > cutoff + 1e-9) {
      CHECK(rec.x < 0.8);
      CHECK_FALSE(rec.violation_restricted);
    } else if (rec.t < cutoff - 1e-9) {
      CHECK(rec.violation_restricted);
    }
  }
}

TEST_CASE("time_series: w = 1 freezes the t = 0 evaluation") {
  const EwlParams params{BellFamily::Psi, 0.85, 0.6, 1.2};
  const auto records = time_series(params, TrappingModel{1.0, 1.0},
                                   TimeGrid{0.0, 20.0, 41});
  const auto& first = records.front();
  for (const auto& rec : records) {
    CHECK(rec.x == doctest::Approx(1.0));
    CHECK(rec.bell.restricted_max ==
          doctest::Approx(first.bell.restricted_max));
    CHECK(rec.bell.horodecki_max ==
          doctest::Approx(first.bell.horodecki_max));
    CHECK(rec.p_excited_a == doctest::Approx(first.p_excited_a));
  }
}

TEST_CASE("time_series flags are implied by the threshold") {
  const auto threshold =
      threshold_population(werner(BellFamily::Phi, 1.0), Evaluator::Restricted);
  REQUIRE(threshold.exists);
  const auto records = time_series(werner(BellFamily::Phi, 1.0),
                                   LorentzianModel{1.0, 5.0},
                                   TimeGrid{0.0, 10.0, 301});
  for (const auto& rec : records) {
    if (rec.x > threshold.x_star + 1e-9) CHECK(rec.violation_restricted);
    if (rec.x < threshold.x_star - 1e-9) CHECK_FALSE(rec.violation_restricted);
  }
}
