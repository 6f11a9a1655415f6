#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "jpm/analytic.hpp"
#include "jpm/pulses.hpp"
#include "jpm/rate.hpp"
#include "jpm/sweep.hpp"

namespace jpm::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kDefaultResetRatio = 100.0;  // gamma_res = 100 gamma_1 for rate-model commands

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ordered_json quantity(double v, const char* unit) {
  ordered_json j;
  j["value"] = std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
  j["unit"] = unit;
  return j;
}

// Rates at the command line are in GHz, read as 1/ns; f0 is an ordinary frequency in GHz.
struct DetectorOpts {
  double gamma_tl = 1.0;
  double gamma_0 = 0.0;
  double gamma_1 = 1.0;
  double gamma_rel = 0.0;
  std::optional<double> gamma_res;
  double f0 = 5.0;

  DetectorParams params(double default_res) const {
    DetectorParams p;
    p.gamma_tl = gamma_tl;
    p.gamma_0 = gamma_0;
    p.gamma_1 = gamma_1;
    p.gamma_rel = gamma_rel;
    p.gamma_res = gamma_res.value_or(default_res);
    p.omega_0 = angular_from_ghz(f0);
    p.validate();
    return p;
  }
  // Single-event dynamics: gamma_res defaults to 0.
  DetectorParams dynamics() const { return params(0.0); }
  // Rate-model figures of merit: gamma_res defaults to 100 gamma_1.
  DetectorParams counting() const { return params(kDefaultResetRatio * gamma_1); }
};

struct DriveOpts {
  std::string kind = "continuous";
  double alpha_sq = 0.0;
  double kappa = 1.0;
  double sigma = 1.0;
  double t0 = 0.0;
  bool printed_prefactor = false;
  std::string envelope_file;
  std::optional<double> fs;

  DriveSpec drive(const DetectorParams& p) const {
    const double omega_s = fs ? angular_from_ghz(*fs) : p.omega_0;
    DriveSpec d;
    if (kind == "continuous") {
      d = DriveSpec::continuous(alpha_sq, omega_s);
    } else if (kind == "exp") {
      d = DriveSpec::exponential(alpha_sq, kappa, omega_s);
    } else if (kind == "gaussian") {
      d = DriveSpec::gaussian(alpha_sq, sigma, omega_s, t0, printed_prefactor);
    } else {
      if (envelope_file.empty()) {
        throw InvalidParameter("--drive tabulated needs --envelope-file");
      }
      d.shape = read_tabulated_csv(envelope_file);
      d.alpha_sq = alpha_sq;
      d.omega_s = omega_s;
    }
    d.validate();
    return d;
  }
};

struct IntegratorOpts {
  std::string method = "rk45";
  double rtol = 1e-8;
  double atol = 1e-10;
  double max_step = 0.0;
  double rk4_step = 1e-3;

  IntegratorConfig config() const {
    IntegratorConfig c;
    c.method = method == "rk4" ? ode::Method::Rk4 : ode::Method::Rk45;
    c.rel_tol = rtol;
    c.abs_tol = atol;
    c.max_step = max_step;
    c.fixed_step = rk4_step;
    if (!(rtol > 0.0) || !(atol > 0.0)) {
      throw InvalidParameter("--rtol and --atol must be > 0");
    }
    return c;
  }
};

void add_detector(CLI::App* sub, DetectorOpts& o, const char* res_note) {
  sub->add_option("--gamma-tl", o.gamma_tl, "Coupling to the transmission line [GHz]")
      ->capture_default_str();
  sub->add_option("--gamma-0", o.gamma_0, "Dark tunnelling rate [GHz]")->capture_default_str();
  sub->add_option("--gamma-1", o.gamma_1, "Measurement tunnelling rate [GHz]")->capture_default_str();
  sub->add_option("--gamma-rel", o.gamma_rel, "Intrinsic relaxation rate [GHz]")->capture_default_str();
  sub->add_option("--gamma-res", o.gamma_res, std::string("Reset rate [GHz]; ") + res_note);
  sub->add_option("--f0", o.f0, "Transition frequency omega_0 / 2 pi [GHz]")->capture_default_str();
}

void add_drive(CLI::App* sub, DriveOpts& o) {
  sub->add_option("--drive", o.kind, "Drive kind")
      ->check(CLI::IsMember({"continuous", "exp", "gaussian", "tabulated"}))
      ->capture_default_str();
  sub->add_option("--alpha-sq", o.alpha_sq,
                  "|alpha|^2: flux amplitude (continuous) or mean photon number (pulses)")
      ->capture_default_str();
  sub->add_option("--kappa", o.kappa, "Exponential pulse decay rate [GHz]")->capture_default_str();
  sub->add_option("--sigma", o.sigma, "Gaussian pulse width parameter [GHz]")->capture_default_str();
  sub->add_option("--t0", o.t0, "Gaussian pulse centre [ns]; 0 selects 6/(sigma sqrt 2)")
      ->capture_default_str();
  sub->add_flag("--printed-prefactor", o.printed_prefactor,
                "Keep the printed Gaussian prefactor instead of renormalizing");
  sub->add_option("--envelope-file", o.envelope_file, "Two-column CSV (t [ns], f) for --drive tabulated");
  sub->add_option("--fs", o.fs, "Signal frequency [GHz]; must equal --f0 (default)");
}

void add_integrator(CLI::App* sub, IntegratorOpts& o) {
  sub->add_option("--method", o.method, "Integrator")
      ->check(CLI::IsMember({"rk45", "rk4"}))
      ->capture_default_str();
  sub->add_option("--rtol", o.rtol, "Relative tolerance (rk45)")->capture_default_str();
  sub->add_option("--atol", o.atol, "Absolute tolerance (rk45)")->capture_default_str();
  sub->add_option("--max-step", o.max_step, "Largest step [ns]; 0 chooses automatically")
      ->capture_default_str();
  sub->add_option("--rk4-step", o.rk4_step, "Fixed step [ns] (rk4)")->capture_default_str();
}

// Writes to the file when a path is given, to `fallback` otherwise.
template <class Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) {
    throw InvalidParameter("cannot open output file " + path);
  }
  fn(file);
}

Axis parse_axis(const std::string& text) {
  // param:scale:min:max:points
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    parts.push_back(item);
  }
  if (parts.size() != 5) {
    throw InvalidParameter("axis '" + text + "' must read param:scale:min:max:points");
  }
  Axis a;
  a.param = parse_sweep_param(parts[0]);
  a.scale = parse_axis_scale(parts[1]);
  try {
    a.min = std::stod(parts[2]);
    a.max = std::stod(parts[3]);
    const long n = std::stol(parts[4]);
    if (n < 1) {
      throw InvalidParameter("axis '" + text + "' needs at least one point");
    }
    a.points = static_cast<std::size_t>(n);
  } catch (const std::logic_error&) {
    throw InvalidParameter("axis '" + text + "' has a malformed number");
  }
  a.validate();
  return a;
}

bool rate_objective(Objective o) { return o != Objective::PmAtTm; }

}  // namespace

CompareResult compare_regimes(const DetectorParams& p, double alpha_sq, double t_end,
                              std::size_t samples, const IntegratorConfig& cfg) {
  IntegratorConfig c = cfg;
  c.t_end = t_end;
  c.samples = samples;
  c.times.clear();
  const Trajectory traj = integrate(p, DriveSpec::continuous(alpha_sq, p.omega_0), c);
  CompareResult r;
  r.times = traj.times;
  double prev = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double mf = traj.states[i].pm;
    const double rate = closed_form_p1_pm(p, alpha_sq, traj.times[i]).pm;
    r.pm_meanfield.push_back(mf);
    r.pm_rate.push_back(rate);
    const double gap = mf - rate;
    r.max_gap = std::max(r.max_gap, std::abs(gap));
    r.mean_gap += std::abs(gap);
    if (std::abs(gap) > 1e-9) {
      if (prev != 0.0 && (gap > 0.0) != (prev > 0.0)) {
        ++r.crossings;
      }
      prev = gap;
    }
  }
  r.mean_gap /= static_cast<double>(traj.times.size());
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Josephson photomultiplier simulation and rate-matching toolkit", "jpmsim"};
  app.set_config("--config", "", "Read options from a key = value file ([subcommand] sections); "
                 "command-line flags take precedence");
  app.allow_config_extras(false);
  app.require_subcommand(1);
  app.footer("Rates are given in GHz (read as 1/ns), times in ns. Exit codes: 0 success, "
             "2 invalid arguments or parameters, 3 integration failure.");

  // simulate
  DetectorOpts sim_det;
  DriveOpts sim_drive;
  IntegratorOpts sim_int;
  std::optional<double> sim_t_end;
  std::size_t sim_samples = 501;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Integrate the mean-field dynamics; write t,v,p0,p1,pm,R");
  add_detector(simulate, sim_det, "must be 0 here");
  add_drive(simulate, sim_drive);
  add_integrator(simulate, sim_int);
  simulate->add_option("--t-end", sim_t_end,
                       "End time [ns]; continuous default 10, pulses default support end + 10/gamma_1");
  simulate->add_option("--samples", sim_samples, "Uniform output samples")->capture_default_str();
  simulate->add_option("-o,--output", sim_out, "Trajectory CSV path (stdout if omitted)");

  // sweep
  DetectorOpts sw_det;
  DriveOpts sw_drive;
  IntegratorOpts sw_int;
  std::string sw_axis1;
  std::string sw_axis2;
  std::string sw_objective = "pm_at_tm";
  double sw_t_m = 10.0;
  unsigned sw_threads = 0;
  std::string sw_format = "csv";
  std::string sw_out;
  auto* sweep = app.add_subcommand("sweep", "Evaluate an objective on a 1-D or 2-D parameter grid");
  add_detector(sweep, sw_det, "default 0 for pm_at_tm, 100*gamma_1 for rate-model objectives");
  add_drive(sweep, sw_drive);
  add_integrator(sweep, sw_int);
  sweep->add_option("--axis1", sw_axis1, "param:scale:min:max:points, scale lin|log")->required();
  sweep->add_option("--axis2", sw_axis2, "Optional second axis, same form");
  sweep->add_option("--objective", sw_objective, "Objective")
      ->check(CLI::IsMember({"pm_at_tm", "eta", "eta_finite_n", "steady_pm"}))
      ->capture_default_str();
  sweep->add_option("--t-m", sw_t_m, "Measurement time [ns] for pm_at_tm")->capture_default_str();
  sweep->add_option("--threads", sw_threads, "Worker threads; 0 uses all cores")->capture_default_str();
  sweep->add_option("--format", sw_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sweep->add_option("-o,--output", sw_out, "Output path (stdout if omitted)");

  // optimize
  DetectorOpts opt_det;
  DriveOpts opt_drive;
  IntegratorOpts opt_int;
  std::vector<double> opt_photons;
  double opt_t_m = 10.0;
  GammaTlSearch opt_search;
  std::string opt_out;
  auto* optimize = app.add_subcommand("optimize", "Find the gamma_tl maximizing pm(t_m)");
  add_detector(optimize, opt_det, "must be 0 here");
  add_drive(optimize, opt_drive);
  add_integrator(optimize, opt_int);
  optimize->add_option("--photons", opt_photons,
                       "Photons delivered (flux * t_m, or the pulse photon number); overrides --alpha-sq");
  optimize->add_option("--t-m", opt_t_m, "Measurement time [ns]")->capture_default_str();
  optimize->add_option("--lo-ratio", opt_search.lo_ratio, "Bracket start, in units of gamma_1")
      ->capture_default_str();
  optimize->add_option("--hi-ratio", opt_search.hi_ratio, "Bracket end, in units of gamma_1")
      ->capture_default_str();
  optimize->add_option("--grid-points", opt_search.grid_points, "Log grid points before refinement")
      ->capture_default_str();
  optimize->add_option("-o,--output", opt_out, "JSON output path (stdout if omitted)");

  // efficiency
  DetectorOpts eff_det;
  double eff_flux = 0.0;
  bool eff_ideal = false;
  std::string eff_out;
  auto* eff = app.add_subcommand("efficiency", "Detection efficiency report (JSON)");
  add_detector(eff, eff_det, "default 100*gamma_1");
  eff->add_option("--flux", eff_flux, "Photon flux [1/ns] for the bright count rate")->capture_default_str();
  eff->add_flag("--ideal", eff_ideal, "Set gamma_0 = gamma_rel = 0");
  eff->add_option("-o,--output", eff_out, "JSON output path (stdout if omitted)");

  // nep
  DetectorOpts nep_det;
  bool nep_matched = false;
  std::string nep_out;
  auto* nep_cmd = app.add_subcommand("nep", "Noise-equivalent power [W/sqrt(Hz)] (JSON)");
  add_detector(nep_cmd, nep_det, "default 100*gamma_1");
  nep_cmd->add_flag("--matched", nep_matched, "Use the matched coupling instead of --gamma-tl");
  nep_cmd->add_option("-o,--output", nep_out, "JSON output path (stdout if omitted)");

  // match
  DetectorOpts match_det;
  auto* match = app.add_subcommand("match", "Matched coupling sqrt((g1 + grel)(g1 + grel + g0)) (JSON)");
  add_detector(match, match_det, "unused");

  // analytic
  auto* analytic = app.add_subcommand("analytic", "Laplace-domain solutions");
  analytic->require_subcommand(1);
  DetectorOpts pol_det;
  double pol_alpha = 0.1;
  std::optional<double> pol_t_end;
  std::size_t pol_samples = 201;
  std::string pol_out;
  auto* poles = analytic->add_subcommand("poles", "Poles and residues of Pm(s) for a continuous drive");
  add_detector(poles, pol_det, "must be 0 here");
  poles->add_option("--alpha-sq", pol_alpha, "Flux amplitude |alpha|^2")->capture_default_str();
  poles->add_option("--t-end", pol_t_end, "Also write the residue reconstruction t,pm on [0, t_end]");
  poles->add_option("--samples", pol_samples, "Reconstruction samples")->capture_default_str();
  poles->add_option("-o,--output", pol_out, "Reconstruction CSV path (stdout if omitted)");
  DetectorOpts es_det;
  double es_alpha = 0.1;
  double es_kappa = 5.0;
  int es_order = kDefaultSeriesOrder;
  auto* exp_steady = analytic->add_subcommand("exp-steady", "Stationary pm after an exponential pulse");
  add_detector(exp_steady, es_det, "must be 0 here");
  exp_steady->add_option("--alpha-sq", es_alpha, "Mean photon number")->capture_default_str();
  exp_steady->add_option("--kappa", es_kappa, "Pulse decay rate [GHz]")->capture_default_str();
  exp_steady->add_option("--order", es_order, "Series order (1-12)")
      ->check(CLI::Range(1, kMaxSeriesOrder))
      ->capture_default_str();

  // compare
  DetectorOpts cmp_det;
  IntegratorOpts cmp_int;
  double cmp_alpha = 0.1;
  double cmp_t_end = 10.0;
  std::size_t cmp_samples = 1001;
  std::string cmp_out;
  auto* compare = app.add_subcommand("compare", "Mean-field against rate-model pm(t) for a continuous drive");
  add_detector(compare, cmp_det, "must be 0 here");
  add_integrator(compare, cmp_int);
  compare->add_option("--alpha-sq", cmp_alpha, "Flux amplitude |alpha|^2")->capture_default_str();
  compare->add_option("--t-end", cmp_t_end, "End time [ns]")->capture_default_str();
  compare->add_option("--samples", cmp_samples, "Grid points")->capture_default_str();
  compare->add_option("-o,--output", cmp_out, "CSV path t,pm_meanfield,pm_rate (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) {
      const DetectorParams p = sim_det.dynamics();
      const DriveSpec d = sim_drive.drive(p);
      IntegratorConfig c = sim_int.config();
      c.samples = sim_samples;
      if (sim_t_end) {
        c.t_end = *sim_t_end;
      } else if (!d.is_pulse()) {
        c.t_end = 10.0;
      }
      const Trajectory traj = integrate(p, d, c);
      char line[160];
      std::snprintf(line, sizeof line, "pm(t_end) = %.9f at t_end = %.6g ns\n", traj.final_state().pm,
                    traj.times.back());
      emit(sim_out, out, [&](std::ostream& os) { write_trajectory_csv(os, traj); });
      (sim_out.empty() ? err : out) << line;
    } else if (*sweep) {
      SweepSpec spec;
      spec.objective = parse_objective(sw_objective);
      spec.params = rate_objective(spec.objective) ? sw_det.counting() : sw_det.dynamics();
      spec.drive = sw_drive.drive(spec.params);
      spec.axis1 = parse_axis(sw_axis1);
      if (!sw_axis2.empty()) {
        spec.axis2 = parse_axis(sw_axis2);
      }
      spec.t_m = sw_t_m;
      spec.integrator = sw_int.config();
      spec.threads = sw_threads;
      const SweepResult r = run_sweep(spec);
      emit(sw_out, out, [&](std::ostream& os) {
        if (sw_format == "json") {
          os << sweep_to_json(r) << '\n';
        } else {
          write_sweep_csv(os, r);
        }
      });
      if (r.failures() > 0) {
        err << r.failures() << " of " << r.values.size() << " cells failed\n";
      }
    } else if (*optimize) {
      const DetectorParams p = opt_det.dynamics();
      const DriveSpec base = opt_drive.drive(p);
      const IntegratorConfig c = opt_int.config();
      std::vector<double> alphas;
      if (opt_photons.empty()) {
        alphas.push_back(base.alpha_sq);
      }
      for (double n : opt_photons) {
        alphas.push_back(base.is_pulse() ? n : alpha_sq_for_photons(n, p.omega_0, opt_t_m));
      }
      ordered_json results = ordered_json::array();
      for (double a : alphas) {
        DriveSpec d = base;
        d.alpha_sq = a;
        const OptimizeResult r = optimize_gamma_tl(d, p, opt_t_m, c, opt_search);
        ordered_json row;
        row["alpha_sq"] = a;
        row["photons"] = photon_number(d, opt_t_m);
        row["gamma_tl_max"] = quantity(r.x, "1/ns");
        row["ratio"] = r.x / p.gamma_1;
        row["pm_at_tm"] = r.value;
        row["grid_gamma_tl"] = quantity(r.grid_x, "1/ns");
        row["grid_cell_ratio"] = r.cell_ratio;
        row["at_boundary"] = r.at_boundary;
        results.push_back(row);
      }
      ordered_json j;
      j["t_m"] = quantity(opt_t_m, "ns");
      j["gamma_1"] = quantity(p.gamma_1, "1/ns");
      j["results"] = results;
      emit(opt_out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    } else if (*eff) {
      if (eff_ideal) {
        eff_det.gamma_0 = 0.0;
        eff_det.gamma_rel = 0.0;
      }
      const EfficiencyReport r = efficiency_report(eff_det.counting(), eff_flux);
      emit(eff_out, out, [&](std::ostream& os) { os << to_json(r) << '\n'; });
    } else if (*nep_cmd) {
      DetectorParams p = nep_det.counting();
      if (nep_matched) {
        p.gamma_tl = matching_gamma_tl(p);
      }
      const double eta = efficiency(p);
      const NepResult n = nep(p, eta);
      ordered_json j;
      j["nep"] = quantity(n.value, "W/sqrt(Hz)");
      j["out_of_range"] = !n.finite;
      j["eta"] = quantity(eta, "dimensionless");
      j["gamma_tl"] = quantity(p.gamma_tl, "1/ns");
      j["gamma_res"] = quantity(p.gamma_res, "1/ns");
      emit(nep_out, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    } else if (*match) {
      const DetectorParams p = match_det.counting();
      ordered_json j;
      j["gamma_tl_max"] = quantity(matching_gamma_tl(p), "1/ns");
      out << j.dump(2) << '\n';
    } else if (*poles) {
      const DetectorParams p = pol_det.dynamics();
      const PoleSet set = continuous_pm_poles(p, pol_alpha);
      ordered_json j;
      j["rabi_frequency"] = quantity(rabi_frequency(p, DriveSpec::continuous(pol_alpha, p.omega_0)), "rad/ns");
      ordered_json list = ordered_json::array();
      for (std::size_t i = 0; i < set.poles.size(); ++i) {
        list.push_back({{"pole", {set.poles[i].real(), set.poles[i].imag()}},
                        {"residue", {set.residues[i].real(), set.residues[i].imag()}}});
      }
      j["poles"] = list;
      j["degenerate"] = set.degenerate;
      const double s = 1e-15 * std::max(1.0, gamma_tilde(p));
      j["stationary_limit"] = (Complex(s) * laplace_pm(p, pol_alpha, Complex(s))).real();
      if (pol_t_end) {
        if (!(*pol_t_end > 0.0) || pol_samples < 2) {
          throw InvalidParameter("--t-end must be > 0 and --samples >= 2");
        }
        emit(pol_out, out, [&](std::ostream& os) {
          os << "t,pm\n";
          for (std::size_t i = 0; i < pol_samples; ++i) {
            const double t = *pol_t_end * static_cast<double>(i) / static_cast<double>(pol_samples - 1);
            os << fmt(t) << ',' << fmt(reconstruct_pm(set, t).real()) << '\n';
          }
        });
        (pol_out.empty() ? err : out) << j.dump(2) << '\n';
      } else {
        out << j.dump(2) << '\n';
      }
    } else if (*exp_steady) {
      const DetectorParams p = es_det.dynamics();
      const SeriesResult s = exp_pulse_steady_state(p, es_alpha, es_kappa, es_order);
      ordered_json j;
      j["rabi_over_kappa"] = exp_pulse_rabi0(p, es_alpha, es_kappa) / es_kappa;
      j["leading"] = exp_pulse_leading(p, es_alpha, es_kappa);
      j["fifth_order"] = exp_pulse_fifth_order(p, es_alpha, es_kappa);
      j["series"] = {{"order", es_order},
                     {"value", s.value},
                     {"partial_sums", s.partial_sums},
                     {"converged", s.converged},
                     {"diverged_at", s.diverged_at}};
      out << j.dump(2) << '\n';
    } else if (*compare) {
      const DetectorParams p = cmp_det.dynamics();
      const CompareResult r = compare_regimes(p, cmp_alpha, cmp_t_end, cmp_samples, cmp_int.config());
      emit(cmp_out, out, [&](std::ostream& os) {
        os << "t,pm_meanfield,pm_rate\n";
        for (std::size_t i = 0; i < r.times.size(); ++i) {
          os << fmt(r.times[i]) << ',' << fmt(r.pm_meanfield[i]) << ',' << fmt(r.pm_rate[i]) << '\n';
        }
      });
      char line[160];
      std::snprintf(line, sizeof line, "max_gap = %.6g, mean_gap = %.6g, crossings = %d\n", r.max_gap,
                    r.mean_gap, r.crossings);
      (cmp_out.empty() ? err : out) << line;
    }
  } catch (const IntegrationError& e) {
    err << "integration failed: " << e.what() << '\n';
    return kExitIntegration;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("jpmsim");
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace jpm::cli
