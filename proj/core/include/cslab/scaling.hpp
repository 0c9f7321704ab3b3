#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cslab/model_b.hpp"

namespace cslab {

/// Strictly concave flux f on [0, 1] with f(0) = f(1) = 0. The constructor
/// checks both conditions (concavity by a three-point test on a uniform
/// grid) and throws InputError when they fail.
class FluxFunction {
 public:
  using Fn = std::function<double(double)>;

  /// Without `fprime` the derivative is taken by central differences.
  explicit FluxFunction(Fn f, Fn fprime = {});

  double operator()(double y) const { return f_(y); }
  double derivative(double y) const;

  /// (f')^{-1}(slope) on [0, 1] by bisection to 1e-12; clamps to 0 or 1
  /// outside [f'(1), f'(0)].
  double inverse_derivative(double slope) const;

  /// f(y) = y (1 - y).
  static FluxFunction toy();

 private:
  Fn f_;
  Fn fprime_;
};

/// Rarefaction solution of y_t + f(y)_x = 0 from step data (1 left, 0 right).
/// Throws InputError for t <= 0.
double rarefaction_density(const FluxFunction& flux, double t, double x);

struct TransportedMass {
  double integral = 0.0;      // integral of y(1, x) over [0, f'(0)]
  double peak_density = 0.0;  // (f')^{-1}(0)
  double peak_flux = 0.0;     // f(peak_density)
  double difference = 0.0;    // integral - peak_flux
};

TransportedMass transported_mass(const FluxFunction& flux);

struct ProfileModel {
  enum class Kind { cs, b };
  Kind kind = Kind::cs;
  ModelBParams params;  // used for Kind::b

  static ProfileModel cs() { return {}; }
  static ProfileModel b(double p2) { return {Kind::b, ModelBParams{p2, 0.5, 0.5}}; }
  std::string name() const;
};

struct ProfileOptions {
  std::size_t n = 1000;  // time steps, >= 1000
  std::size_t bins = 201;
  double x_min = -1.5;
  double x_max = 1.5;
  std::size_t ensemble = 100;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct ProfileBin {
  double x = 0.0;  // bin centre
  double y_mean = 0.0;
  double y_stderr = 0.0;
  std::size_t sites = 0;  // wires per run falling in the bin
};

/// Ensemble-averaged particle density after n time steps from the step
/// initial condition, binned by x = (w + 1/2) / n so that the duality
/// w -> -1 - w maps each bin onto its mirror image.
struct DensityProfile {
  std::string model;
  std::size_t n = 0;
  std::size_t ensemble = 0;
  double t = 1.0;
  std::vector<ProfileBin> bins;
  double transported_mass = 0.0;  // mean of (particles on wires >= 0) / n
  double transported_mass_stderr = 0.0;
  double peak_density = 0.0;      // density of the centre bin(s)
  double peak_density_stderr = 0.0;
  /// Model CS only: every run satisfied crossed + LCS(a[0,n), b[0,n)) = n.
  bool mass_bookkeeping_exact = true;
};

DensityProfile empirical_profile(const ProfileModel& model, const ProfileOptions& options);

/// CSV with header "x,y_mean,y_stderr".
void write_profile_csv(std::ostream& out, const DensityProfile& profile);

}  // namespace cslab
