#include "jpm/meanfield.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace jpm {

namespace {

void require_meanfield_regime(const DetectorParams& p) {
  p.validate();
  if (p.gamma_0 != 0.0) {
    throw InvalidParameter("mean-field dynamics neglect dark counts: gamma_0 must be 0");
  }
  if (p.gamma_res != 0.0) {
    throw InvalidParameter("mean-field dynamics model a single event: gamma_res must be 0");
  }
}

std::vector<double> sample_grid(const IntegratorConfig& cfg, double t_end) {
  if (!cfg.times.empty()) {
    for (std::size_t i = 1; i < cfg.times.size(); ++i) {
      if (!(cfg.times[i] > cfg.times[i - 1])) {
        throw InvalidParameter("sample times must be strictly increasing");
      }
    }
    if (cfg.times.front() < 0.0) {
      throw InvalidParameter("sample times must be >= 0");
    }
    return cfg.times;
  }
  if (cfg.samples < 2) {
    throw InvalidParameter("at least two samples are required");
  }
  std::vector<double> grid(cfg.samples);
  const double n = static_cast<double>(cfg.samples - 1);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    grid[i] = t_end * static_cast<double>(i) / n;
  }
  grid.back() = t_end;
  return grid;
}

}  // namespace

double rabi_frequency(const DetectorParams& p, const DriveSpec& d) {
  if (d.is_pulse()) {
    throw InvalidParameter("pulsed drives have a time-dependent Rabi frequency");
  }
  return std::sqrt(2.0 * d.alpha_sq * p.gamma_tl * p.omega_0 / std::numbers::pi);
}

double rabi_frequency_t(const DetectorParams& p, const DriveSpec& d, double t) {
  return RabiProfile(p, d)(t);
}

RabiProfile::RabiProfile(const DetectorParams& p, const DriveSpec& d) {
  if (d.is_pulse()) {
    envelope_ = Envelope::from_drive(d);
    amplitude_ = std::sqrt(2.0 * d.alpha_sq * p.gamma_tl / std::numbers::pi);
  } else {
    amplitude_ = rabi_frequency(p, d);
  }
}

double RabiProfile::operator()(double t) const {
  return envelope_ ? amplitude_ * (*envelope_)(t) : amplitude_;
}

ode::Vec<4> meanfield_rhs(const DetectorParams& p, double rabi, const ode::Vec<4>& y) {
  const double gt = gamma_tilde(p);
  const auto [v, p0, p1, pm] = y;
  (void)pm;
  return {-0.5 * gt * v + rabi * (p0 - p1),
          (p.gamma_tl + p.gamma_rel) * p1 - 0.5 * rabi * v,
          -gt * p1 + 0.5 * rabi * v,
          p.gamma_1 * p1};
}

double default_t_end(const DetectorParams& p, const DriveSpec& d) {
  if (!d.is_pulse()) {
    throw InvalidParameter("a continuous drive needs an explicit t_end");
  }
  if (!(p.gamma_1 > 0.0)) {
    throw InvalidParameter("default pulse window needs gamma_1 > 0");
  }
  return Envelope::from_drive(d).support_end() + 10.0 / p.gamma_1;
}

Trajectory integrate(const DetectorParams& p, const DriveSpec& d, const IntegratorConfig& cfg,
                     const MeanFieldState& initial) {
  require_meanfield_regime(p);
  d.validate();
  require_resonant(p, d);

  const RabiProfile rabi(p, d);
  double t_end = 0.0;
  if (cfg.t_end) {
    t_end = *cfg.t_end;
  } else if (!cfg.times.empty()) {
    t_end = cfg.times.back();
  } else {
    t_end = default_t_end(p, d);
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw InvalidParameter("t_end must be > 0");
  }

  ode::Options opt;
  opt.method = cfg.method;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = cfg.abs_tol;
  opt.fixed_step = cfg.fixed_step;
  if (cfg.max_step > 0.0) {
    opt.max_step = cfg.max_step;
  } else if (rabi.envelope()) {
    // Keep the adaptive controller from stepping over a pulse that starts late.
    const auto& env = *rabi.envelope();
    opt.max_step = (env.support_end() - env.support_begin()) / 50.0;
  }

  Trajectory traj;
  traj.drive = d;
  traj.params = p;
  traj.times = sample_grid(cfg, t_end);
  traj.states.resize(traj.times.size());

  const bool conserving = true;  // gamma_0 = gamma_res = 0 is enforced above
  auto rhs = [&](double t, const ode::Vec<4>& y) { return meanfield_rhs(p, rabi(t), y); };
  auto on_step = [&](double t, const ode::Vec<4>& y) {
    if (!cfg.check_invariants) {
      return;
    }
    const MeanFieldState s{y[0], y[1], y[2], y[3]};
    if (!within_simplex(s)) {
      throw IntegrationError("occupation probability left [-1e-6, 1+1e-6]", t);
    }
    if (conserving && std::abs(s.p0 + s.p1 + s.pm - 1.0) > kSimplexTolerance &&
        std::abs(initial.p0 + initial.p1 + initial.pm - 1.0) <= kSimplexTolerance) {
      throw IntegrationError("probability conservation violated beyond 1e-6", t);
    }
  };
  auto on_sample = [&](std::size_t i, double, const ode::Vec<4>& y) {
    traj.states[i] = MeanFieldState{y[0], y[1], y[2], y[3]};
  };

  const ode::Vec<4> y0{initial.v, initial.p0, initial.p1, initial.pm};
  traj.stats = ode::integrate<4>(rhs, y0, 0.0, traj.times, opt, on_step, on_sample);
  return traj;
}

double reflection_coefficient(const DetectorParams& p, double p0, double p1) {
  const double gt = gamma_tilde(p);
  if (!(gt > 0.0)) {
    throw InvalidParameter("reflection coefficient needs gamma_tilde > 0");
  }
  return -1.0 + 2.0 * p.gamma_tl / gt * (p0 - p1);
}

std::vector<double> reflection_series(const Trajectory& traj) {
  std::vector<double> r;
  r.reserve(traj.states.size());
  for (const auto& s : traj.states) {
    r.push_back(reflection_coefficient(traj.params, s.p0, s.p1));
  }
  return r;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const auto refl = reflection_series(traj);
  out << "t,v,p0,p1,pm,R\n";
  char buf[256];
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& s = traj.states[i];
    std::snprintf(buf, sizeof buf, "%.10g,%.12g,%.12g,%.12g,%.12g,%.12g\n", traj.times[i], s.v, s.p0,
                  s.p1, s.pm, refl[i]);
    out << buf;
  }
}

}  // namespace jpm
