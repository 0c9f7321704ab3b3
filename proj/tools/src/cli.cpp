#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cslab/binary_string.hpp"
#include "cslab/errors.hpp"
#include "cslab/fit.hpp"
#include "cslab/lcs.hpp"
#include "cslab/mc.hpp"
#include "cslab/model_b.hpp"
#include "cslab/scaling.hpp"
#include "cslab/verify.hpp"
#include "json_writer.hpp"

namespace cslab::cli {

namespace {

enum class Format { json, csv, text };

struct Globals {
  Format format = Format::json;
  std::string output;
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

// What a subcommand hands back: the JSON report, a CSV writer, and the
// exit code it wants.
struct Report {
  Json json;
  std::function<void(std::ostream&)> csv;
  int exit_code = kOk;
};

std::string format_name(Format f) {
  switch (f) {
    case Format::json:
      return "json";
    case Format::csv:
      return "csv";
    case Format::text:
      return "text";
  }
  return "json";
}

Json base_config(const Globals& g) {
  return Json{{"seed", g.seed}, {"threads", g.threads}, {"format", format_name(g.format)},
              {"output", g.output.empty() ? Json(nullptr) : Json(g.output)}};
}

Json fit_json(const FitSolution& s) {
  Json r;
  r["method"] = s.method;
  r["u"] = s.point.u;
  r["p0"] = s.point.p0;
  r["p1"] = s.point.p1;
  r["p2"] = s.point.p2;
  r["p3"] = s.point.p0;
  r["gamma"] = s.gamma;
  r["aux"] = Json{{"q0", s.aux.q0}, {"q1", s.aux.q1}, {"r0", s.aux.r0},
                  {"r1", s.aux.r1}, {"r2", s.aux.r2}, {"r3", s.aux.r3}};
  r["residuals"] = Json::array();
  for (double e : s.residuals) r["residuals"].push_back(e);
  r["admissible"] = s.admissible;
  r["iterations"] = s.iterations;
  r["exceeds_upper_bound"] = s.exceeds_upper_bound;
  return r;
}

void fit_csv(std::ostream& out, const FitSolution& s) {
  out << "method,u,p0,p1,p2,gamma,q0,q1,r0,r1,r2,r3,e1,e2,e3,e4,e5,admissible\n";
  out << s.method << ',' << s.point.u << ',' << s.point.p0 << ',' << s.point.p1 << ',' << s.point.p2
      << ',' << s.gamma << ',' << s.aux.q0 << ',' << s.aux.q1 << ',' << s.aux.r0 << ',' << s.aux.r1
      << ',' << s.aux.r2 << ',' << s.aux.r3;
  for (double e : s.residuals) out << ',' << e;
  out << ',' << (s.admissible ? "true" : "false") << '\n';
}

Json gamma_json(const GammaEstimate& g) {
  return Json{{"n", g.n},         {"trials", g.trials},   {"mean", g.mean},
              {"stderr", g.stderr_}, {"alexander_gap", g.alexander_gap},
              {"upper", g.mean + g.alexander_gap}, {"engine", std::string(to_string(g.engine))}};
}

Json pair_json(const PairStats& p) {
  Json r = Json::array();
  static const char* const labels[4] = {"hole,hole", "hole,particle", "particle,hole", "particle,particle"};
  for (int i = 0; i < 4; ++i) {
    r.push_back(Json{{"pair", labels[i]},
                     {"observed", p.observed[i]},
                     {"expected", p.expected[i]},
                     {"stderr", p.stderr_[i]}});
  }
  return r;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::string s = to_json_string(v);
  s.pop_back();
  return s;
}

void write_text(std::ostream& out, const Json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const Json& v = it.value();
    if (v.is_object()) {
      write_text(out, v, key);
    } else if (v.is_array() && (v.empty() || v.front().is_primitive())) {
      out << key << ':';
      for (const Json& e : v) out << ' ' << scalar_text(e);
      out << '\n';
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) write_text(out, v[i], key + "[" + std::to_string(i) + "]");
    } else {
      out << key << ": " << scalar_text(v) << '\n';
    }
  }
}

int exit_for(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return kInputError;
  if (dynamic_cast<const NumericError*>(&e)) return kNumericError;
  if (dynamic_cast<const InvariantError*>(&e)) return kInvariantError;
  return kNumericError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cslab: LCS transposition networks, model B and the fitted constant"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  Globals g;
  std::string format_text = "json";
  app.add_option("--format", format_text, "report format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output,-o", g.output, "write the report to this file instead of stdout");
  app.add_option("--threads", g.threads, "worker cap, 0 = all hardware threads; results do not depend on it");
  app.add_option("--seed", g.seed, "master seed (default: $CSLAB_SEED, else 0)")->envname("CSLAB_SEED");

  std::function<Report()> command;

  // lcs
  auto* lcs_cmd = app.add_subcommand("lcs", "LCS length of two binary strings (0/1, or O/I for O=0, I=1)");
  std::string a_text, b_text, engine_name = "bitparallel";
  lcs_cmd->add_option("--a", a_text, "first string")->required();
  lcs_cmd->add_option("--b", b_text, "second string")->required();
  lcs_cmd->add_option("--engine", engine_name, "dp, bitparallel or bruteforce");
  lcs_cmd->callback([&] {
    command = [&] {
      const LcsEngine engine = parse_engine(engine_name);
      const BinaryString a = BinaryString::parse(a_text);
      const BinaryString b = BinaryString::parse(b_text);
      const LcsResult r = lcs(a, b, engine);
      Report rep;
      Json cfg = base_config(g);
      cfg["a"] = a.to_string();
      cfg["b"] = b.to_string();
      cfg["engine"] = std::string(to_string(engine));
      rep.json = Json{{"command", "lcs"}, {"config", cfg}, {"lcs", r.length},
                      {"engine", std::string(to_string(engine))}};
      rep.csv = [=](std::ostream& o) {
        o << "a_length,b_length,engine,lcs\n" << a.size() << ',' << b.size() << ',' << to_string(engine) << ','
          << r.length << '\n';
      };
      return rep;
    };
  });

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "fitted model B parameters");
  std::string fit_mode = "solve";
  fit_cmd->add_option("--mode", fit_mode, "solve, closed-form or arratia-steele")
      ->check(CLI::IsMember({"solve", "closed-form", "arratia-steele"}));
  fit_cmd->callback([&] {
    command = [&] {
      FitSolution s;
      Json extra;
      if (fit_mode == "solve") {
        s = solve();
        const FitSolution cf = closed_form();
        extra = Json{{"gamma_closed_form", cf.gamma}, {"gamma_difference", std::abs(s.gamma - cf.gamma)}};
      } else if (fit_mode == "closed-form") {
        s = closed_form();
      } else {
        s = arratia_steele();
      }
      Report rep;
      Json cfg = base_config(g);
      cfg["mode"] = fit_mode;
      rep.json = Json{{"command", "fit"}, {"config", cfg}};
      rep.json.update(fit_json(s));
      if (!extra.is_null()) rep.json.update(extra);
      rep.json["bounds"] = Json{{"lower", kGammaLowerBound}, {"upper", kGammaUpperBound}};
      rep.csv = [s](std::ostream& o) { fit_csv(o, s); };
      if (fit_mode == "solve" && !s.admissible) rep.exit_code = kNumericError;
      return rep;
    };
  });

  // gamma
  auto* gamma_cmd = app.add_subcommand("gamma", "Monte Carlo estimate of E L_n / n");
  std::vector<std::size_t> n_list{1000};
  std::size_t trials = 100;
  double alexander_c = 1.0;
  std::string gamma_engine = "bitparallel";
  bool exact = false;
  gamma_cmd->add_option("--n", n_list, "string length; several values give a convergence table")
      ->delimiter(',');
  gamma_cmd->add_option("--trials", trials, "independent string pairs per n");
  gamma_cmd->add_option("--engine", gamma_engine, "dp or bitparallel");
  gamma_cmd->add_option("--c", alexander_c, "constant of the c sqrt(log n / n) envelope");
  gamma_cmd->add_flag("--exact", exact, "also enumerate all pairs exactly (n <= 12)");
  gamma_cmd->callback([&] {
    command = [&] {
      const LcsEngine engine = parse_engine(gamma_engine);
      const ConvergenceTable table = convergence_table(n_list, trials, g.seed, alexander_c, engine, g.threads);
      Report rep;
      Json cfg = base_config(g);
      cfg["n"] = n_list;
      cfg["trials"] = trials;
      cfg["engine"] = std::string(to_string(engine));
      cfg["c"] = alexander_c;
      cfg["exact"] = exact;
      Json rows = Json::array();
      std::vector<GammaEstimate> estimates;
      for (const ConvergenceRow& row : table.rows) {
        Json r = gamma_json(row.estimate);
        if (exact) {
          const ExactMean e = exact_small_n(row.estimate.n);
          r["exact_mean"] = e.mean;
          r["exact_z"] = row.estimate.stderr_ > 0.0 ? (row.estimate.mean - e.mean) / row.estimate.stderr_ : 0.0;
        }
        rows.push_back(r);
        estimates.push_back(row.estimate);
      }
      rep.json = Json{{"command", "gamma"}, {"config", cfg}, {"estimates", rows}};
      rep.json["diagnostics"] = Json{{"monotone_within_2se", table.monotone_within_2se},
                                     {"reference", table.reference},
                                     {"largest_brackets_reference", table.largest_brackets_reference}};
      rep.csv = [estimates](std::ostream& o) { write_gamma_csv(o, estimates); };
      return rep;
    };
  });

  // simulate-b
  auto* b_cmd = app.add_subcommand("simulate-b", "model B on a ring from the stationary measure");
  double p2 = 0.5, p0 = 0.5, p1 = 0.5;
  std::size_t L = 10000, steps = 10000, burn_in = 1000;
  b_cmd->add_option("--p2", p2, "rate")->check(CLI::Range(0.0, 1.0));
  b_cmd->add_option("--p0", p0, "pseudo-rate p0 = p3 (does not change the dynamics)")
      ->check(CLI::Range(0.0, 1.0));
  b_cmd->add_option("--p1", p1, "pseudo-rate p1 (does not change the dynamics)")
      ->check(CLI::Range(0.0, 1.0));
  b_cmd->add_option("--L", L, "ring size (even)");
  b_cmd->add_option("--steps", steps, "measured half-steps");
  b_cmd->add_option("--burn-in", burn_in, "discarded half-steps");
  b_cmd->callback([&] {
    command = [&] {
      ModelBParams{p2, p0, p1}.validate();
      const InvarianceReport r = invariance_test(p2, L, burn_in, steps, g.seed);
      const double f = r.swap_rate;
      Report rep;
      Json cfg = base_config(g);
      cfg["p2"] = p2;
      cfg["p0"] = p0;
      cfg["p1"] = p1;
      cfg["L"] = L;
      cfg["steps"] = steps;
      cfg["burn_in"] = burn_in;
      rep.json = Json{{"command", "simulate-b"}, {"config", cfg}};
      rep.json["u_theory"] = r.theory.u;
      rep.json["even_density"] = r.even_density;
      rep.json["even_density_stderr"] = r.even_density_stderr;
      rep.json["odd_density"] = r.odd_density;
      rep.json["odd_density_stderr"] = r.odd_density_stderr;
      rep.json["f"] = f;
      rep.json["f_stderr"] = r.swap_rate_stderr;
      rep.json["f_theory"] = r.swap_rate_expected;
      rep.json["fbar"] = 1.0 - f;
      rep.json["gamma_proxy"] = 2.0 * r.even_density;
      rep.json["total_swaps"] = r.total_swaps;
      rep.json["active_pairs"] = pair_json(r.active);
      rep.json["seam_pairs"] = pair_json(r.seam);
      const std::vector<SeriesRow> series = r.series;
      rep.csv = [series](std::ostream& o) { write_series_csv(o, series); };
      return rep;
    };
  });

  // profile
  auto* prof_cmd = app.add_subcommand("profile", "ensemble density profile from the step initial condition");
  std::string model_name = "cs";
  double prof_p2 = 0.5;
  ProfileOptions popt;
  prof_cmd->add_option("--model", model_name, "cs or b")->check(CLI::IsMember({"cs", "b"}));
  prof_cmd->add_option("--p2", prof_p2, "model B rate")->check(CLI::Range(0.0, 1.0));
  prof_cmd->add_option("--n", popt.n, "time steps (>= 1000)");
  prof_cmd->add_option("--bins", popt.bins, "number of x bins");
  prof_cmd->add_option("--ensemble", popt.ensemble, "independent runs");
  prof_cmd->add_option("--x-min", popt.x_min, "left edge of the binned range");
  prof_cmd->add_option("--x-max", popt.x_max, "right edge of the binned range");
  prof_cmd->callback([&] {
    command = [&] {
      popt.seed = g.seed;
      popt.threads = g.threads;
      const ProfileModel model = model_name == "cs" ? ProfileModel::cs() : ProfileModel::b(prof_p2);
      const DensityProfile p = empirical_profile(model, popt);
      Report rep;
      Json cfg = base_config(g);
      cfg["model"] = model_name;
      if (model_name == "b") cfg["p2"] = prof_p2;
      cfg["n"] = popt.n;
      cfg["bins"] = popt.bins;
      cfg["ensemble"] = popt.ensemble;
      cfg["x_min"] = popt.x_min;
      cfg["x_max"] = popt.x_max;
      rep.json = Json{{"command", "profile"}, {"config", cfg}};
      rep.json["t"] = p.t;
      rep.json["transported_mass"] = p.transported_mass;
      rep.json["transported_mass_stderr"] = p.transported_mass_stderr;
      rep.json["peak_density"] = p.peak_density;
      rep.json["peak_density_stderr"] = p.peak_density_stderr;
      if (model_name == "cs") rep.json["mass_bookkeeping_exact"] = p.mass_bookkeeping_exact;
      Json bins = Json::array();
      for (const ProfileBin& b : p.bins) {
        bins.push_back(Json{{"x", b.x}, {"y_mean", b.y_mean}, {"y_stderr", b.y_stderr}});
      }
      rep.json["bins"] = bins;
      rep.csv = [p](std::ostream& o) { write_profile_csv(o, p); };
      if (model_name == "cs" && !p.mass_bookkeeping_exact) rep.exit_code = kInvariantError;
      return rep;
    };
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run an invariant suite; exits 4 on any failure");
  std::string suite_name = "exact";
  verify_cmd->add_option("--suite", suite_name, "exact");
  verify_cmd->callback([&] {
    command = [&] {
      const std::vector<CheckResult> results = run_suite(parse_suite(suite_name), g.seed);
      Report rep;
      Json cfg = base_config(g);
      cfg["suite"] = suite_name;
      Json checks = Json::array();
      for (const CheckResult& c : results) {
        checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      }
      const bool ok = all_passed(results);
      rep.json = Json{{"command", "verify"}, {"config", cfg}, {"passed", ok}, {"checks", checks}};
      rep.csv = [results](std::ostream& o) {
        o << "name,passed,detail\n";
        for (const CheckResult& c : results) o << c.name << ',' << (c.passed ? "true" : "false") << ",\"" << c.detail << "\"\n";
      };
      rep.exit_code = ok ? kOk : kInvariantError;
      return rep;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  g.format = format_text == "csv" ? Format::csv : format_text == "text" ? Format::text : Format::json;

  Report rep;
  try {
    rep = command();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e);
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!g.output.empty()) {
    file.open(g.output);
    if (!file) {
      err << "error: cannot open " << g.output << " for writing\n";
      return kInputError;
    }
    sink = &file;
  }
  switch (g.format) {
    case Format::json:
      write_json(*sink, rep.json);
      break;
    case Format::csv: {
      const auto old_precision = sink->precision(17);
      rep.csv(*sink);
      sink->precision(old_precision);
      break;
    }
    case Format::text:
      write_text(*sink, rep.json);
      break;
  }
  return rep.exit_code;
}

}  // namespace cslab::cli
