#pragma once

// Mean-field dynamics of the detector driven through the transmission line,
// reduced to the real state (v, p0, p1, pm):
//
//   dv/dt  = -(gt/2) v + wR(t) (p0 - p1)
//   dp0/dt = (gamma_tl + gamma_rel) p1 - wR(t) v / 2
//   dp1/dt = -gt p1 + wR(t) v / 2
//   dpm/dt = gamma_1 p1
//
// with gt = gamma_tilde. Single measurement event and no dark counts:
// gamma_0 and gamma_res must be zero.

#include <iosfwd>
#include <optional>
#include <vector>

#include "jpm/core.hpp"
#include "jpm/ode.hpp"
#include "jpm/pulses.hpp"

namespace jpm {

using ode::IntegrationError;

struct IntegratorConfig {
  ode::Method method = ode::Method::Rk45;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 0.0;    // 0: no limit (pulses get a default from the envelope width)
  double fixed_step = 1e-3; // RK4 step [ns]
  /// End time [ns]. Required for continuous drives; pulses default to the
  /// envelope support end plus 10/gamma_1.
  std::optional<double> t_end;
  std::size_t samples = 501;      // uniform grid on [0, t_end] when `times` is empty
  std::vector<double> times;      // explicit sample grid
  bool check_invariants = true;   // simplex bounds and conservation at every accepted step
};

struct Trajectory {
  std::vector<double> times;
  std::vector<MeanFieldState> states;
  DriveSpec drive;
  DetectorParams params;
  ode::Stats stats;

  const MeanFieldState& final_state() const { return states.back(); }
};

/// sqrt(2 alpha_sq gamma_tl omega_0 / pi) for a continuous drive. Throws for
/// pulses, whose Rabi frequency depends on time.
double rabi_frequency(const DetectorParams& p, const DriveSpec& d);

/// f(t) sqrt(2 alpha_sq gamma_tl / pi) for pulses; the constant for continuous drives.
double rabi_frequency_t(const DetectorParams& p, const DriveSpec& d, double t);

/// Time-dependent Rabi frequency with the envelope built once.
class RabiProfile {
 public:
  RabiProfile(const DetectorParams& p, const DriveSpec& d);
  double operator()(double t) const;
  const std::optional<Envelope>& envelope() const { return envelope_; }

 private:
  double amplitude_ = 0.0;
  std::optional<Envelope> envelope_;
};

/// Right-hand side of the reduced mean-field system.
ode::Vec<4> meanfield_rhs(const DetectorParams& p, double rabi, const ode::Vec<4>& y);

/// Default integration window [ns] for a drive: the pulse support plus 10/gamma_1.
double default_t_end(const DetectorParams& p, const DriveSpec& d);

/// Integrates from `initial` (ground state by default). Throws InvalidParameter
/// for inadmissible inputs and IntegrationError (carrying the failure time) on
/// step underflow or a simplex/conservation breach beyond 1e-6.
Trajectory integrate(const DetectorParams& p, const DriveSpec& d, const IntegratorConfig& cfg,
                     const MeanFieldState& initial = MeanFieldState::ground());

/// Reflection coefficient -1 + (2 gamma_tl / gamma_tilde)(p0 - p1).
double reflection_coefficient(const DetectorParams& p, double p0, double p1);
std::vector<double> reflection_series(const Trajectory& traj);

/// CSV with header t,v,p0,p1,pm,R.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace jpm
