#pragma once

// Parameter grids over the detector and drive, evaluated cell by cell on a
// worker pool, plus 1-D maximization over log gamma_tl.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jpm/core.hpp"
#include "jpm/meanfield.hpp"

namespace jpm {

enum class SweepParam { GammaTl, Gamma1, Gamma0, GammaRel, GammaRes, AlphaSq, Kappa, Sigma, TMeas };
enum class AxisScale { Linear, Log };
enum class Objective { PmAtTm, Eta, EtaFiniteN, SteadyPm };

std::string to_string(SweepParam p);
std::string to_string(AxisScale s);
std::string to_string(Objective o);
/// Throw InvalidParameter for names outside the vocabulary.
SweepParam parse_sweep_param(std::string_view name);
AxisScale parse_axis_scale(std::string_view name);
Objective parse_objective(std::string_view name);

struct Axis {
  SweepParam param = SweepParam::GammaTl;
  AxisScale scale = AxisScale::Log;
  double min = 0.1;
  double max = 10.0;
  std::size_t points = 2;

  /// Throws unless points >= 2 and min < max, or points == 1 and min == max.
  /// Log axes need min > 0.
  void validate() const;
  std::vector<double> values() const;
};

struct SweepSpec {
  Axis axis1;
  std::optional<Axis> axis2;
  Objective objective = Objective::PmAtTm;
  DetectorParams params;
  DriveSpec drive;
  double t_m = 10.0;  // [ns], used by pm_at_tm
  IntegratorConfig integrator;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Applies one coordinate to the baseline. kappa and sigma require the
/// matching pulse kind.
void apply_param(SweepParam param, double value, DetectorParams& p, DriveSpec& d, double& t_m);

/// Objective at one point. pm_at_tm integrates the mean-field model to t_m;
/// the rate-model objectives use the flux alpha_sq omega_0 / 2 pi of a
/// continuous drive.
double evaluate_objective(Objective obj, const DetectorParams& p, const DriveSpec& d, double t_m,
                          const IntegratorConfig& cfg);

struct SweepResult {
  Objective objective = Objective::PmAtTm;
  SweepParam param1 = SweepParam::GammaTl;
  std::optional<SweepParam> param2;
  std::vector<double> axis1;
  std::vector<double> axis2;    // empty for a 1-D sweep
  std::vector<double> values;   // row-major [i1 * n2 + i2]; NaN where the cell failed
  std::vector<std::string> errors;  // same layout; empty string for success

  std::size_t cols() const { return axis2.empty() ? 1 : axis2.size(); }
  double at(std::size_t i1, std::size_t i2 = 0) const { return values[i1 * cols() + i2]; }
  std::size_t failures() const;
};

/// Evaluates every cell. A failing cell records its message and the sweep
/// continues. Results are independent of the thread count.
SweepResult run_sweep(const SweepSpec& spec);

/// Long-format CSV: axis1,axis2,objective (axis1,objective for 1-D).
void write_sweep_csv(std::ostream& out, const SweepResult& r);
std::string sweep_to_json(const SweepResult& r, int indent = 2);

struct OptimizeResult {
  double x = 0.0;
  double value = 0.0;
  double grid_x = 0.0;     // best grid point
  double grid_value = 0.0;
  double cell_ratio = 1.0; // ratio between neighbouring grid points
  bool at_boundary = false;  // maximum on the bracket edge: no interior optimum found
  std::size_t evaluations = 0;
};

/// Maximizes f on [lo, hi] over log x: grid scan, then golden section on the
/// two cells around the best grid point to relative tolerance rel_tol.
OptimizeResult maximize_log(const std::function<double(double)>& f, double lo, double hi,
                            std::size_t grid_points = 200, double rel_tol = 1e-3);

struct GammaTlSearch {
  double lo_ratio = 1e-2;  // bracket in units of gamma_1
  double hi_ratio = 1e2;
  std::size_t grid_points = 400;
  double rel_tol = 1e-3;
};

/// gamma_tl maximizing the mean-field pm(t_m).
OptimizeResult optimize_gamma_tl(const DriveSpec& drive, const DetectorParams& p, double t_m,
                                 const IntegratorConfig& cfg = {}, const GammaTlSearch& search = {});

/// pm(t_m) for each alpha_sq of a continuous drive, at the baseline gamma_tl
/// or re-optimized per point.
std::vector<double> saturation_curve(const DetectorParams& p, double t_m,
                                     const std::vector<double>& alpha_grid, bool optimize_per_point,
                                     const IntegratorConfig& cfg = {});

}  // namespace jpm
