#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cslab {

// Local fit of model B to the string-comparison model. Main variables are
// the even-sublattice hole/particle marginal u and the model B rate p2 with
// pseudo-rates p0 = p3 and p1. Bars are complements: z-bar = 1 - z.
//
// Equations (u-bar = 1 - u):
//   E1  time invariance    u^2 = u-bar^2 (1 - p2)
//   E2  total probability  u-bar^2 p2 + 2 u u-bar p0 + u^2 p1 = 1/2
//   E3  link for p2        u-bar^2 p2 = 2 u^2 q0 q0-bar + 2 u-bar^2 u p2 (r0 q0 + r0-bar q0-bar)
//                                       + u-bar^4 r1 p2^2
//   E4  link for p0        u u-bar p0 = u u-bar q1-bar (r0-bar q0 + r0 q0-bar)
//                                       + u^2 u-bar p0 (r0 q0 + r0-bar q0-bar)
//                                       + u u-bar^3 r1 p0 p2 + u-bar^3 r1-bar q1-bar p2
//   E5  link for p1        u^2 p1 = u^2 u-bar^2 r1 p0 p3 + 2 u u-bar^2 r1-bar p0 q1-bar
//                                    + u-bar^2 r1 q1-bar^2
// Each residual is left-hand side minus right-hand side.

/// Literature bounds on the constant, used only to flag reports.
inline constexpr double kGammaLowerBound = 0.788071;
inline constexpr double kGammaUpperBound = 0.826280;

struct FitPoint {
  double u = 0.0;
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;

  friend bool operator==(const FitPoint&, const FitPoint&) = default;
};

/// Cell-type probabilities conditioned on one entry site (q) and, for the
/// reversed process, on the exit pair (r).
struct AuxProbs {
  double q0 = 0.0;  // u-bar p0 + u p1
  double q1 = 0.0;  // u-bar p2 + u p3
  double r0 = 0.0;  // p0
  double r1 = 0.0;  // 1 - u^2 (1 - p1) / u-bar^2
  double r2 = 0.0;  // always 0
  double r3 = 0.0;  // p3
};

using Residuals = std::array<double, 5>;

struct FitSolution {
  FitPoint point;
  double gamma = 0.0;  // 2u
  AuxProbs aux;
  Residuals residuals{};
  std::string method;
  bool admissible = false;
  int iterations = 0;
  /// gamma above the best known upper bound on the constant.
  bool exceeds_upper_bound = false;
};

/// Throws InputError when an input leaves [0, 1] or u == 1.
AuxProbs aux(double u, double p0, double p1, double p2);

/// E1..E5 at the given point. Inputs must lie in the open interval (0, 1).
Residuals residuals(double u, double p0, double p1, double p2);

/// True when every main and auxiliary variable lies in [0, 1].
bool admissible(const FitPoint& x);

struct SolveAttempt {
  FitPoint start;
  FitPoint point;
  int iterations = 0;
  bool converged = false;
  bool admissible = false;
  double residual_inf = 0.0;  // max |E1|, |E3|, |E4|, |E5|
};

/// Damped Newton on (E1, E3, E4, E5) with a central-difference Jacobian
/// (relative step 1e-7). Each step is halved until the 2-norm of the
/// residual decreases, at most 40 times.
SolveAttempt newton(const FitPoint& start);

/// Default start (sqrt 2 - 1, 1/2, 1/2, 1/2).
FitPoint default_start();

/// 16 starts: u in {0.35, 0.45}, each p in {0.4, 0.6}; inside
/// [0.3, 0.5] x [0.3, 0.7]^3.
std::vector<FitPoint> multistart_points();

/// Runs newton() from every start. Results are ordered with converged
/// admissible points first, then lexicographically by (u, p0, p1, p2).
std::vector<SolveAttempt> multi_start(std::span<const FitPoint> starts);

/// Admissible root of the system. With a start, one Newton run from it;
/// otherwise the default start, falling back to multi_start(). Throws
/// NumericError with per-start diagnostics when nothing admissible converges.
FitSolution solve(std::optional<FitPoint> start = std::nullopt);

/// The admissible root in radicals:
///   u  = sqrt(7/3) - sqrt((23 - 5 sqrt 21) / 6) - 1
///   p0 = p3 = -8/3 + 49/6 u - u^2 - 1/2 u^3
///   p1 = 29/2 - 51 u + 75/2 u^2 + 9 u^3
///   p2 = -2/3 + 34/3 u - 19 u^2 - 4 u^3
FitSolution closed_form();

/// Model B(1/2): u = sqrt 2 - 1, every rate 1/2.
FitSolution arratia_steele();

/// Builds a solution record (aux, residuals, gamma, flags) for any point.
FitSolution evaluate(const FitPoint& x, std::string method);

}  // namespace cslab
