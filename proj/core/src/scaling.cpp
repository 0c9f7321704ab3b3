#include "cslab/scaling.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <ostream>

#include "cslab/errors.hpp"
#include "cslab/lcs.hpp"
#include "cslab/network.hpp"
#include "cslab/parallel.hpp"
#include "cslab/rng.hpp"

namespace cslab {

namespace {

constexpr double kDerivativeStep = 1e-6;
constexpr double kBisectionTolerance = 1e-12;
constexpr double kBoundaryTolerance = 1e-12;
constexpr int kConcavityGrid = 200;

}  // namespace

FluxFunction::FluxFunction(Fn f, Fn fprime) : f_(std::move(f)), fprime_(std::move(fprime)) {
  if (!f_) throw InputError("flux function is empty");
  if (std::abs(f_(0.0)) > kBoundaryTolerance || std::abs(f_(1.0)) > kBoundaryTolerance) {
    throw InputError("flux must vanish at densities 0 and 1");
  }
  const double h = 1.0 / kConcavityGrid;
  for (int i = 1; i < kConcavityGrid; ++i) {
    const double y = i * h;
    const double second = f_(y - h) - 2.0 * f_(y) + f_(y + h);
    if (!(second < 0.0)) {
      throw InputError("flux is not strictly concave near y = " + std::to_string(y));
    }
  }
}

double FluxFunction::derivative(double y) const {
  if (fprime_) return fprime_(y);
  return (f_(y + kDerivativeStep) - f_(y - kDerivativeStep)) / (2.0 * kDerivativeStep);
}

double FluxFunction::inverse_derivative(double slope) const {
  if (slope >= derivative(0.0)) return 0.0;
  if (slope <= derivative(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;  // derivative(lo) > slope > derivative(hi)
  while (hi - lo > kBisectionTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (derivative(mid) > slope) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

FluxFunction FluxFunction::toy() {
  return FluxFunction([](double y) { return y * (1.0 - y); }, [](double y) { return 1.0 - 2.0 * y; });
}

double rarefaction_density(const FluxFunction& flux, double t, double x) {
  if (!(t > 0.0)) throw InputError("rarefaction profile needs t > 0");
  if (x < flux.derivative(1.0) * t) return 1.0;
  if (x > flux.derivative(0.0) * t) return 0.0;
  return flux.inverse_derivative(x / t);
}

TransportedMass transported_mass(const FluxFunction& flux) {
  TransportedMass m;
  const double front = flux.derivative(0.0);
  if (front > 0.0) {
    auto y = [&](double x) { return rarefaction_density(flux, 1.0, x); };
    m.integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(y, 0.0, front, 10, 1e-10);
  }
  m.peak_density = flux.inverse_derivative(0.0);
  m.peak_flux = flux(m.peak_density);
  m.difference = m.integral - m.peak_flux;
  return m;
}

std::string ProfileModel::name() const {
  if (kind == Kind::cs) return "cs";
  return "b";
}

DensityProfile empirical_profile(const ProfileModel& model, const ProfileOptions& opt) {
  if (opt.n < 1000) throw InputError("empirical profile needs n >= 1000");
  if (opt.bins == 0 || !(opt.x_max > opt.x_min)) throw InputError("invalid binning");
  if (opt.ensemble == 0) throw InputError("ensemble must be non-empty");
  if (model.kind == ProfileModel::Kind::b) model.params.validate();

  const std::size_t n = opt.n;
  const auto half = static_cast<std::int64_t>(2 * n);
  const double width = (opt.x_max - opt.x_min) / static_cast<double>(opt.bins);

  // wire -> bin, fixed for every run
  std::vector<std::ptrdiff_t> bin_of(static_cast<std::size_t>(2 * half), -1);
  std::vector<std::size_t> sites(opt.bins, 0);
  for (std::int64_t w = -half; w < half; ++w) {
    const double x = (static_cast<double>(w) + 0.5) / static_cast<double>(n);
    const double pos = std::floor((x - opt.x_min) / width);
    if (pos >= 0.0 && pos < static_cast<double>(opt.bins)) {
      const auto b = static_cast<std::ptrdiff_t>(pos);
      bin_of[static_cast<std::size_t>(w + half)] = b;
      ++sites[static_cast<std::size_t>(b)];
    }
  }

  std::vector<std::vector<double>> run_density(opt.ensemble);
  std::vector<double> run_mass(opt.ensemble, 0.0);
  std::vector<char> run_exact(opt.ensemble, 1);

  parallel_for(opt.ensemble, opt.threads, [&](std::size_t r) {
    SiteSequence state;
    if (model.kind == ProfileModel::Kind::cs) {
      SplitMix64 gen(Seed{opt.seed, r});
      const BinaryString a = random_string(2 * n, gen);
      const BinaryString b = random_string(2 * n, gen);
      state = evolve_step_ic(a, b, n);
      const std::size_t crossed = state.particles_at_or_above(0);
      const std::size_t l = lcs_bitparallel(a.prefix(n), b.prefix(n)).length;
      run_exact[r] = (crossed + l == n) ? 1 : 0;
    } else {
      ModelBEvolution evo(SiteSequence::step_initial_condition(-half, half), model.params,
                          keyed_bits(opt.seed, 0x70726f66696c65ULL, r), Boundary::open);
      for (std::size_t h = 0; h < 2 * n; ++h) evo.advance();
      state = evo.state();
    }
    run_mass[r] = static_cast<double>(state.particles_at_or_above(0)) / static_cast<double>(n);

    std::vector<double> counts(opt.bins, 0.0);
    for (std::int64_t w = -half; w < half; ++w) {
      const std::ptrdiff_t b = bin_of[static_cast<std::size_t>(w + half)];
      if (b >= 0 && state.particle(w)) counts[static_cast<std::size_t>(b)] += 1.0;
    }
    for (std::size_t b = 0; b < opt.bins; ++b) {
      if (sites[b] > 0) counts[b] /= static_cast<double>(sites[b]);
    }
    run_density[r] = std::move(counts);
  });

  DensityProfile p;
  p.model = model.name();
  p.n = n;
  p.ensemble = opt.ensemble;
  p.bins.resize(opt.bins);
  const auto runs = static_cast<double>(opt.ensemble);
  auto mean_stderr = [&](auto value_of) {
    double s = 0.0, ss = 0.0;
    for (std::size_t r = 0; r < opt.ensemble; ++r) {
      const double v = value_of(r);
      s += v;
      ss += v * v;
    }
    const double mean = s / runs;
    const double var = opt.ensemble > 1 ? std::max(0.0, (ss - runs * mean * mean) / (runs - 1.0)) : 0.0;
    return std::pair{mean, std::sqrt(var / runs)};
  };

  for (std::size_t b = 0; b < opt.bins; ++b) {
    ProfileBin& bin = p.bins[b];
    bin.x = opt.x_min + (static_cast<double>(b) + 0.5) * width;
    bin.sites = sites[b];
    std::tie(bin.y_mean, bin.y_stderr) = mean_stderr([&](std::size_t r) { return run_density[r][b]; });
  }
  std::tie(p.transported_mass, p.transported_mass_stderr) =
      mean_stderr([&](std::size_t r) { return run_mass[r]; });
  for (char ok : run_exact) p.mass_bookkeeping_exact = p.mass_bookkeeping_exact && ok;

  if (opt.bins % 2 == 1) {
    const ProfileBin& c = p.bins[opt.bins / 2];
    p.peak_density = c.y_mean;
    p.peak_density_stderr = c.y_stderr;
  } else {
    const std::size_t hi = opt.bins / 2, lo = hi - 1;
    std::tie(p.peak_density, p.peak_density_stderr) = mean_stderr(
        [&](std::size_t r) { return 0.5 * (run_density[r][lo] + run_density[r][hi]); });
  }
  return p;
}

void write_profile_csv(std::ostream& out, const DensityProfile& profile) {
  const auto old_precision = out.precision(17);
  out << "x,y_mean,y_stderr\n";
  for (const ProfileBin& b : profile.bins) out << b.x << ',' << b.y_mean << ',' << b.y_stderr << '\n';
  out.precision(old_precision);
}

}  // namespace cslab
