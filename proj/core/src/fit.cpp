#include "cslab/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>
#include <utility>

#include "cslab/errors.hpp"

namespace cslab {

namespace {

constexpr double kRelativeStep = 1e-7;
constexpr int kMaxHalvings = 40;
constexpr int kMaxIterations = 100;
constexpr double kConvergedResidual = 1e-13;

using Vec4 = Eigen::Vector4d;

AuxProbs aux_unchecked(double u, double p0, double p1, double p2) {
  const double ub = 1.0 - u;
  const double p3 = p0;
  AuxProbs a;
  a.q0 = ub * p0 + u * p1;
  a.q1 = ub * p2 + u * p3;
  a.r0 = p0;
  a.r3 = p3;
  a.r2 = 0.0;
  a.r1 = 1.0 - u * u * (1.0 - p1) / (ub * ub);
  return a;
}

Residuals residuals_unchecked(double u, double p0, double p1, double p2) {
  const double ub = 1.0 - u;
  const double p3 = p0;
  const AuxProbs a = aux_unchecked(u, p0, p1, p2);
  const double q0 = a.q0, q1 = a.q1, r0 = a.r0, r1 = a.r1;
  const double q0b = 1.0 - q0, q1b = 1.0 - q1, r0b = 1.0 - r0, r1b = 1.0 - r1;
  const double r2b = 1.0 - a.r2;
  const double u2 = u * u, ub2 = ub * ub, ub3 = ub2 * ub, ub4 = ub2 * ub2;

  Residuals e{};
  e[0] = u2 - ub2 * (1.0 - p2);
  e[1] = ub2 * p2 + 2.0 * u * ub * p0 + u2 * p1 - 0.5;
  e[2] = ub2 * p2 - (2.0 * u2 * r2b * q0 * q0b + 2.0 * ub2 * u * p2 * (r0 * q0 + r0b * q0b) +
                     ub4 * r1 * p2 * p2);
  e[3] = u * ub * p0 - (u * ub * q1b * (r0b * q0 + r0 * q0b) + u2 * ub * p0 * (r0 * q0 + r0b * q0b) +
                        u * ub3 * r1 * p0 * p2 + ub3 * r1b * q1b * p2);
  e[4] = u2 * p1 - (u2 * ub2 * r1 * p0 * p3 + 2.0 * u * ub2 * r1b * p0 * q1b + ub2 * r1 * q1b * q1b);
  return e;
}

Vec4 to_vec(const FitPoint& x) { return {x.u, x.p0, x.p1, x.p2}; }
FitPoint to_point(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

// The square Newton system: E2 is redundant and only checked afterwards.
Vec4 square_system(const Vec4& x) {
  const Residuals e = residuals_unchecked(x[0], x[1], x[2], x[3]);
  return {e[0], e[2], e[3], e[4]};
}

Eigen::Matrix4d jacobian(const Vec4& x) {
  Eigen::Matrix4d j;
  for (int c = 0; c < 4; ++c) {
    const double h = kRelativeStep * std::max(1.0, std::abs(x[c]));
    Vec4 hi = x, lo = x;
    hi[c] += h;
    lo[c] -= h;
    j.col(c) = (square_system(hi) - square_system(lo)) / (2.0 * h);
  }
  return j;
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw InputError(std::string(name) + " = " + std::to_string(v) + " outside (0, 1)");
  }
}

bool lex_less(const FitPoint& a, const FitPoint& b) {
  return std::tie(a.u, a.p0, a.p1, a.p2) < std::tie(b.u, b.p0, b.p1, b.p2);
}

std::string describe(const SolveAttempt& a) {
  std::ostringstream os;
  os.precision(10);
  os << "start (" << a.start.u << ", " << a.start.p0 << ", " << a.start.p1 << ", " << a.start.p2
     << ") -> (" << a.point.u << ", " << a.point.p0 << ", " << a.point.p1 << ", " << a.point.p2
     << ") after " << a.iterations << " iterations, |E|inf = " << a.residual_inf
     << (a.converged ? ", converged" : ", not converged")
     << (a.admissible ? ", admissible" : ", inadmissible");
  return os.str();
}

}  // namespace

AuxProbs aux(double u, double p0, double p1, double p2) {
  const std::array<std::pair<double, const char*>, 4> inputs{
      {{u, "u"}, {p0, "p0"}, {p1, "p1"}, {p2, "p2"}}};
  for (const auto& [v, name] : inputs) {
    if (!in_unit(v)) throw InputError(std::string(name) + " = " + std::to_string(v) + " outside [0, 1]");
  }
  if (u == 1.0) throw InputError("u = 1 makes r1 undefined");
  return aux_unchecked(u, p0, p1, p2);
}

Residuals residuals(double u, double p0, double p1, double p2) {
  require_open_unit(u, "u");
  require_open_unit(p0, "p0");
  require_open_unit(p1, "p1");
  require_open_unit(p2, "p2");
  return residuals_unchecked(u, p0, p1, p2);
}

bool admissible(const FitPoint& x) {
  if (!(in_unit(x.u) && in_unit(x.p0) && in_unit(x.p1) && in_unit(x.p2)) || x.u == 1.0) return false;
  const AuxProbs a = aux_unchecked(x.u, x.p0, x.p1, x.p2);
  return in_unit(a.q0) && in_unit(a.q1) && in_unit(a.r0) && in_unit(a.r1) && in_unit(a.r2) &&
         in_unit(a.r3);
}

SolveAttempt newton(const FitPoint& start) {
  SolveAttempt out;
  out.start = start;
  Vec4 x = to_vec(start);
  Vec4 f = square_system(x);

  int it = 0;
  for (; it < kMaxIterations; ++it) {
    if (!f.allFinite() || f.lpNorm<Eigen::Infinity>() < 1e-15) break;
    const Vec4 step = jacobian(x).fullPivLu().solve(-f);
    if (!step.allFinite()) break;

    const double norm = f.norm();
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, t *= 0.5) {
      const Vec4 trial = x + t * step;
      const Vec4 ft = square_system(trial);
      if (ft.allFinite() && ft.norm() < norm) {
        x = trial;
        f = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted || (t * step).lpNorm<Eigen::Infinity>() < 1e-16) {
      ++it;
      break;
    }
  }

  out.point = to_point(x);
  out.iterations = it;
  out.residual_inf = f.allFinite() ? f.lpNorm<Eigen::Infinity>() : INFINITY;
  out.converged = out.residual_inf < kConvergedResidual;
  out.admissible = out.converged && admissible(out.point);
  return out;
}

FitPoint default_start() { return {std::sqrt(2.0) - 1.0, 0.5, 0.5, 0.5}; }

std::vector<FitPoint> multistart_points() {
  std::vector<FitPoint> pts;
  for (double u : {0.35, 0.45})
    for (double p0 : {0.4, 0.6})
      for (double p1 : {0.4, 0.6})
        for (double p2 : {0.4, 0.6}) pts.push_back({u, p0, p1, p2});
  return pts;
}

std::vector<SolveAttempt> multi_start(std::span<const FitPoint> starts) {
  std::vector<SolveAttempt> out;
  out.reserve(starts.size());
  for (const FitPoint& s : starts) out.push_back(newton(s));
  std::stable_sort(out.begin(), out.end(), [](const SolveAttempt& a, const SolveAttempt& b) {
    if (a.admissible != b.admissible) return a.admissible;
    return lex_less(a.point, b.point);
  });
  return out;
}

FitSolution evaluate(const FitPoint& x, std::string method) {
  FitSolution s;
  s.point = x;
  s.gamma = 2.0 * x.u;
  s.aux = aux_unchecked(x.u, x.p0, x.p1, x.p2);
  s.residuals = residuals_unchecked(x.u, x.p0, x.p1, x.p2);
  s.method = std::move(method);
  s.admissible = admissible(x);
  s.exceeds_upper_bound = s.gamma > kGammaUpperBound;
  return s;
}

FitSolution solve(std::optional<FitPoint> start) {
  std::vector<SolveAttempt> attempts;
  attempts.push_back(newton(start.value_or(default_start())));
  if (!attempts.front().admissible && !start) {
    const auto pts = multistart_points();
    for (SolveAttempt& a : multi_start(pts)) attempts.push_back(std::move(a));
  }
  for (const SolveAttempt& a : attempts) {
    if (a.admissible) {
      FitSolution s = evaluate(a.point, "newton");
      s.iterations = a.iterations;
      return s;
    }
  }
  std::string msg = "no admissible root found:";
  for (const SolveAttempt& a : attempts) msg += "\n  " + describe(a);
  throw NumericError(msg);
}

FitSolution closed_form() {
  const double u = std::sqrt(7.0 / 3.0) - std::sqrt((23.0 - 5.0 * std::sqrt(21.0)) / 6.0) - 1.0;
  const double u2 = u * u, u3 = u2 * u;
  FitPoint x;
  x.u = u;
  x.p0 = -8.0 / 3.0 + 49.0 / 6.0 * u - u2 - 0.5 * u3;
  x.p1 = 29.0 / 2.0 - 51.0 * u + 75.0 / 2.0 * u2 + 9.0 * u3;
  x.p2 = -2.0 / 3.0 + 34.0 / 3.0 * u - 19.0 * u2 - 4.0 * u3;
  return evaluate(x, "closed-form");
}

FitSolution arratia_steele() {
  return evaluate({std::sqrt(2.0) - 1.0, 0.5, 0.5, 0.5}, "arratia-steele");
}

}  // namespace cslab
