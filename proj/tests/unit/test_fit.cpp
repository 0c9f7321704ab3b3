#include <gtest/gtest.h>

#include <cmath>

#include "cslab/errors.hpp"
#include "cslab/fit.hpp"
#include "cslab/rng.hpp"
#include "oracles.hpp"

using namespace cslab;

namespace {

// Admissible root to 17 digits, from a 50-digit evaluation of the radicals.
constexpr double kU = 0.40702521421017755;
constexpr double kP0 = 0.45798722076241925;
constexpr double kP1 = 0.56120632800889665;
constexpr double kP2 = 0.52883809038518263;
constexpr double kR1 = 0.79325713557777394;

}  // namespace

TEST(Fit, ClosedFormMatchesHighPrecisionValues) {
  const FitSolution s = closed_form();
  EXPECT_NEAR(s.point.u, kU, 2e-15);
  EXPECT_NEAR(s.point.p0, kP0, 2e-14);
  EXPECT_NEAR(s.point.p1, kP1, 2e-13);
  EXPECT_NEAR(s.point.p2, kP2, 2e-13);
  EXPECT_NEAR(s.gamma, 2 * kU, 4e-15);
  EXPECT_NEAR(s.aux.q0, 0.5, 1e-13);
  EXPECT_NEAR(s.aux.q1, 0.5, 1e-13);
  EXPECT_NEAR(s.aux.r1, kR1, 1e-13);
  EXPECT_EQ(s.aux.r2, 0.0);
  EXPECT_EQ(s.aux.r0, s.point.p0);
  EXPECT_EQ(s.aux.r3, s.point.p0);
  EXPECT_TRUE(s.admissible);
  EXPECT_FALSE(s.exceeds_upper_bound);
  EXPECT_EQ(s.method, "closed-form");
}

TEST(Fit, PrintedDigits) {
  const FitSolution s = closed_form();
  auto six = [](double v) { return std::round(v * 1e6) / 1e6; };
  EXPECT_EQ(six(s.point.u), 0.407025);
  EXPECT_EQ(six(s.gamma), 0.814050);
  EXPECT_EQ(six(s.point.p0), 0.457987);
  EXPECT_EQ(six(s.point.p1), 0.561206);
  EXPECT_EQ(six(s.point.p2), 0.528838);
}

TEST(Fit, ResidualsAgreeWithIndependentLongDoubleOracle) {
  SplitMix64 gen(Seed{41, 0});
  for (int t = 0; t < 200; ++t) {
    const double u = 0.05 + 0.9 * gen.uniform(), p0 = 0.05 + 0.9 * gen.uniform();
    const double p1 = 0.05 + 0.9 * gen.uniform(), p2 = 0.05 + 0.9 * gen.uniform();
    const Residuals r = residuals(u, p0, p1, p2);
    const oracle::FitResiduals o = oracle::fit_residuals(u, p0, p1, p2);
    for (int i = 0; i < 5; ++i) ASSERT_NEAR(r[i], static_cast<double>(o.e[i]), 1e-12) << "E" << i + 1;
  }
  const oracle::FitResiduals at_root = oracle::fit_residuals(kU, kP0, kP1, kP2);
  for (long double e : at_root.e) EXPECT_LT(std::fabs(static_cast<double>(e)), 1e-15);
}

TEST(Fit, ClosedFormResidualsBelowTolerance) {
  for (double e : closed_form().residuals) EXPECT_LT(std::abs(e), 1e-12);
}

TEST(Fit, NewtonFromDefaultStart) {
  const FitPoint start = default_start();
  EXPECT_NEAR(start.u, std::sqrt(2.0) - 1.0, 1e-16);
  EXPECT_EQ(start.p0, 0.5);
  const SolveAttempt a = newton(start);
  ASSERT_TRUE(a.converged);
  EXPECT_TRUE(a.admissible);
  EXPECT_LT(a.residual_inf, 1e-13);
  EXPECT_NEAR(a.point.u, kU, 1e-12);
  EXPECT_NEAR(a.point.p0, kP0, 1e-12);
  EXPECT_NEAR(a.point.p1, kP1, 1e-12);
  EXPECT_NEAR(a.point.p2, kP2, 1e-12);
}

TEST(Fit, MultiStartAgrees) {
  const std::vector<FitPoint> starts = multistart_points();
  ASSERT_EQ(starts.size(), 16U);
  for (const FitPoint& s : starts) {
    EXPECT_GE(s.u, 0.3);
    EXPECT_LE(s.u, 0.5);
    for (double p : {s.p0, s.p1, s.p2}) {
      EXPECT_GE(p, 0.3);
      EXPECT_LE(p, 0.7);
    }
  }
  const std::vector<SolveAttempt> attempts = multi_start(starts);
  ASSERT_EQ(attempts.size(), 16U);
  for (const SolveAttempt& a : attempts) {
    ASSERT_TRUE(a.converged);
    ASSERT_TRUE(a.admissible);
    EXPECT_NEAR(a.point.u, attempts.front().point.u, 1e-8);
    EXPECT_NEAR(a.point.p0, attempts.front().point.p0, 1e-8);
    EXPECT_NEAR(a.point.p1, attempts.front().point.p1, 1e-8);
    EXPECT_NEAR(a.point.p2, attempts.front().point.p2, 1e-8);
  }
}

TEST(Fit, SolveReturnsAdmissibleRootWithConsistentTotalProbability) {
  const FitSolution s = solve();
  EXPECT_TRUE(s.admissible);
  EXPECT_LT(std::abs(s.residuals[1]), 1e-10);
  EXPECT_LT(std::abs(s.gamma - closed_form().gamma), 2e-6);
  EXPECT_GT(s.iterations, 0);
}

TEST(Fit, SolveFromFarStartFailsWithDiagnostics) {
  const FitPoint far{0.95, 0.05, 0.95, 0.05};
  const SolveAttempt a = newton(far);
  EXPECT_TRUE(a.converged);
  EXPECT_FALSE(a.admissible);
  EXPECT_NEAR(a.point.u, 0.5, 1e-6);
  EXPECT_THROW(
      {
        try {
          solve(far);
        } catch (const NumericError& e) {
          const std::string msg = e.what();
          EXPECT_NE(msg.find("start (0.95, 0.05, 0.95, 0.05)"), std::string::npos) << msg;
          EXPECT_NE(msg.find("inadmissible"), std::string::npos) << msg;
          throw;
        }
      },
      NumericError);
}

TEST(Fit, ArratiaSteelePoint) {
  const FitSolution s = arratia_steele();
  EXPECT_NEAR(s.point.u, std::sqrt(2.0) - 1.0, 1e-12);
  EXPECT_NEAR(s.gamma, 2.0 * (std::sqrt(2.0) - 1.0), 1e-12);
  EXPECT_NEAR(s.aux.r1, 0.75, 1e-14);
  EXPECT_LT(std::abs(s.residuals[0]), 1e-15);
  EXPECT_LT(std::abs(s.residuals[1]), 1e-15);
  const long double u = std::sqrt(2.0L) - 1;
  const oracle::FitResiduals o = oracle::fit_residuals(u, 0.5L, 0.5L, 0.5L);
  for (int i = 2; i < 5; ++i) {
    EXPECT_NEAR(s.residuals[i], static_cast<double>(o.e[i]), 1e-14);
    EXPECT_GT(std::abs(s.residuals[i]), 1e-3);
  }
  EXPECT_NEAR(std::abs(s.residuals[2]), static_cast<double>((17 - 12 * std::sqrt(2.0L)) / 4), 1e-14);
  EXPECT_TRUE(s.exceeds_upper_bound);
}

TEST(Fit, AuxiliaryProbabilities) {
  const AuxProbs a = aux(0.4, 0.3, 0.6, 0.5);
  EXPECT_NEAR(a.q0, 0.6 * 0.3 + 0.4 * 0.6, 1e-15);
  EXPECT_NEAR(a.q1, 0.6 * 0.5 + 0.4 * 0.3, 1e-15);
  EXPECT_NEAR(a.r1, 1 - 0.16 * 0.4 / 0.36, 1e-15);
  EXPECT_THROW(aux(1.0, 0.5, 0.5, 0.5), InputError);
  EXPECT_THROW(aux(0.5, 1.5, 0.5, 0.5), InputError);
  EXPECT_THROW(residuals(0.0, 0.5, 0.5, 0.5), InputError);
}

TEST(Fit, AdmissibilityFlagsOutOfRangeAuxiliaries) {
  EXPECT_TRUE(admissible({0.4, 0.5, 0.5, 0.5}));
  EXPECT_LT(aux(0.6, 0.5, 0.0, 0.5).r1, 0.0);
  EXPECT_FALSE(admissible({0.6, 0.5, 0.0, 0.5}));
}
