#include "jpm/sweep.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "jpm/rate.hpp"

namespace jpm {

namespace {

struct ParamName {
  SweepParam param;
  const char* name;
};

constexpr std::array<ParamName, 9> kParamNames = {{
    {SweepParam::GammaTl, "gamma_tl"},
    {SweepParam::Gamma1, "gamma_1"},
    {SweepParam::Gamma0, "gamma_0"},
    {SweepParam::GammaRel, "gamma_rel"},
    {SweepParam::GammaRes, "gamma_res"},
    {SweepParam::AlphaSq, "alpha_sq"},
    {SweepParam::Kappa, "kappa"},
    {SweepParam::Sigma, "sigma"},
    {SweepParam::TMeas, "t_m"},
}};

constexpr std::array<const char*, 4> kObjectiveNames = {"pm_at_tm", "eta", "eta_finite_n",
                                                        "steady_pm"};

std::string format_number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string to_string(SweepParam p) {
  for (const auto& entry : kParamNames) {
    if (entry.param == p) {
      return entry.name;
    }
  }
  return "unknown";
}

std::string to_string(AxisScale s) { return s == AxisScale::Log ? "log" : "lin"; }

std::string to_string(Objective o) { return kObjectiveNames[static_cast<std::size_t>(o)]; }

SweepParam parse_sweep_param(std::string_view name) {
  for (const auto& entry : kParamNames) {
    if (name == entry.name) {
      return entry.param;
    }
  }
  throw InvalidParameter("unknown sweep parameter '" + std::string(name) +
                         "' (expected gamma_tl, gamma_1, gamma_0, gamma_rel, gamma_res, alpha_sq, "
                         "kappa, sigma or t_m)");
}

AxisScale parse_axis_scale(std::string_view name) {
  if (name == "log") {
    return AxisScale::Log;
  }
  if (name == "lin" || name == "linear") {
    return AxisScale::Linear;
  }
  throw InvalidParameter("unknown axis scale '" + std::string(name) + "' (expected lin or log)");
}

Objective parse_objective(std::string_view name) {
  for (std::size_t i = 0; i < kObjectiveNames.size(); ++i) {
    if (name == kObjectiveNames[i]) {
      return static_cast<Objective>(i);
    }
  }
  throw InvalidParameter("unknown objective '" + std::string(name) +
                         "' (expected pm_at_tm, eta, eta_finite_n or steady_pm)");
}

void Axis::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw InvalidParameter("axis bounds must be finite");
  }
  if (points == 0) {
    throw InvalidParameter("axis needs at least one point");
  }
  if (points == 1 ? min != max : !(min < max)) {
    throw InvalidParameter("axis needs min < max (or a single point with min == max)");
  }
  if (scale == AxisScale::Log && !(min > 0.0)) {
    throw InvalidParameter("log axis needs min > 0");
  }
}

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = min;
    return v;
  }
  const double n = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / n;
    v[i] = scale == AxisScale::Log ? std::exp(std::log(min) + u * (std::log(max) - std::log(min)))
                                   : min + u * (max - min);
  }
  v.front() = min;
  v.back() = max;
  return v;
}

void apply_param(SweepParam param, double value, DetectorParams& p, DriveSpec& d, double& t_m) {
  switch (param) {
    case SweepParam::GammaTl: p.gamma_tl = value; break;
    case SweepParam::Gamma1: p.gamma_1 = value; break;
    case SweepParam::Gamma0: p.gamma_0 = value; break;
    case SweepParam::GammaRel: p.gamma_rel = value; break;
    case SweepParam::GammaRes: p.gamma_res = value; break;
    case SweepParam::AlphaSq: d.alpha_sq = value; break;
    case SweepParam::TMeas: t_m = value; break;
    case SweepParam::Kappa:
      if (auto* e = std::get_if<ExponentialPulse>(&d.shape)) {
        e->kappa = value;
        break;
      }
      throw InvalidParameter("kappa axis needs an exponential drive");
    case SweepParam::Sigma:
      if (auto* g = std::get_if<GaussianPulse>(&d.shape)) {
        g->sigma = value;
        break;
      }
      throw InvalidParameter("sigma axis needs a Gaussian drive");
  }
}

double evaluate_objective(Objective obj, const DetectorParams& p, const DriveSpec& d, double t_m,
                          const IntegratorConfig& cfg) {
  switch (obj) {
    case Objective::PmAtTm: {
      if (!(t_m > 0.0)) {
        throw InvalidParameter("pm_at_tm needs t_m > 0");
      }
      if (d.alpha_sq == 0.0) {
        return 0.0;
      }
      IntegratorConfig c = cfg;
      c.t_end = t_m;
      c.times.clear();
      c.samples = 2;
      return integrate(p, d, c).final_state().pm;
    }
    case Objective::Eta:
      return efficiency(p);
    case Objective::EtaFiniteN:
    case Objective::SteadyPm: {
      if (d.is_pulse()) {
        throw InvalidParameter("rate-model objectives need a continuous drive");
      }
      const double flux = photon_flux(d.alpha_sq, p.omega_0);
      return obj == Objective::SteadyPm ? steady_state(p, flux).pm : efficiency_finite(p, flux);
    }
  }
  throw InvalidParameter("unknown objective");
}

std::size_t SweepResult::failures() const {
  std::size_t n = 0;
  for (const auto& e : errors) {
    n += e.empty() ? 0 : 1;
  }
  return n;
}

SweepResult run_sweep(const SweepSpec& spec) {
  SweepResult r;
  r.objective = spec.objective;
  r.param1 = spec.axis1.param;
  r.axis1 = spec.axis1.values();
  if (spec.axis2) {
    if (spec.axis2->param == spec.axis1.param) {
      throw InvalidParameter("the two sweep axes must vary different parameters");
    }
    r.param2 = spec.axis2->param;
    r.axis2 = spec.axis2->values();
  }
  const std::size_t cols = r.cols();
  const std::size_t total = r.axis1.size() * cols;
  r.values.assign(total, std::numeric_limits<double>::quiet_NaN());
  r.errors.assign(total, std::string());

  auto eval_cell = [&](std::size_t idx) {
    DetectorParams p = spec.params;
    DriveSpec d = spec.drive;
    double t_m = spec.t_m;
    try {
      apply_param(spec.axis1.param, r.axis1[idx / cols], p, d, t_m);
      if (spec.axis2) {
        apply_param(spec.axis2->param, r.axis2[idx % cols], p, d, t_m);
      }
      r.values[idx] = evaluate_objective(spec.objective, p, d, t_m, spec.integrator);
    } catch (const std::exception& e) {
      r.errors[idx] = e.what();
    }
  };

  unsigned threads = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(total)));
  if (threads == 1) {
    for (std::size_t i = 0; i < total; ++i) {
      eval_cell(i);
    }
    return r;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
          eval_cell(i);
        }
      });
    }
  }
  return r;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  const bool two_d = !r.axis2.empty();
  out << (two_d ? "axis1,axis2,objective\n" : "axis1,objective\n");
  for (std::size_t i = 0; i < r.axis1.size(); ++i) {
    for (std::size_t j = 0; j < r.cols(); ++j) {
      out << format_number(r.axis1[i]) << ',';
      if (two_d) {
        out << format_number(r.axis2[j]) << ',';
      }
      out << format_number(r.at(i, j)) << '\n';
    }
  }
}

std::string sweep_to_json(const SweepResult& r, int indent) {
  using nlohmann::ordered_json;
  auto num = [](double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };
  ordered_json j;
  j["objective"] = to_string(r.objective);
  j["axis1"] = {{"param", to_string(r.param1)}, {"values", r.axis1}};
  if (r.param2) {
    j["axis2"] = {{"param", to_string(*r.param2)}, {"values", r.axis2}};
  }
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < r.axis1.size(); ++i) {
    if (r.axis2.empty()) {
      rows.push_back(num(r.at(i)));
      continue;
    }
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < r.cols(); ++k) {
      row.push_back(num(r.at(i, k)));
    }
    rows.push_back(row);
  }
  j["values"] = rows;
  ordered_json errs = ordered_json::array();
  for (std::size_t idx = 0; idx < r.errors.size(); ++idx) {
    if (!r.errors[idx].empty()) {
      errs.push_back({{"i", idx / r.cols()}, {"j", idx % r.cols()}, {"message", r.errors[idx]}});
    }
  }
  j["errors"] = errs;
  return j.dump(indent);
}

OptimizeResult maximize_log(const std::function<double(double)>& f, double lo, double hi,
                            std::size_t grid_points, double rel_tol) {
  if (!(lo > 0.0) || !(hi > lo) || grid_points < 3 || !(rel_tol > 0.0)) {
    throw InvalidParameter("maximize_log needs 0 < lo < hi, >= 3 grid points and rel_tol > 0");
  }
  OptimizeResult res;
  const double a0 = std::log(lo);
  const double step = (std::log(hi) - a0) / static_cast<double>(grid_points - 1);
  res.cell_ratio = std::exp(step);
  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double v = f(std::exp(a0 + step * static_cast<double>(i)));
    ++res.evaluations;
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  res.grid_x = std::exp(a0 + step * static_cast<double>(best));
  res.grid_value = best_val;
  res.x = res.grid_x;
  res.value = best_val;
  if (best == 0 || best + 1 == grid_points) {
    res.at_boundary = true;
    return res;
  }

  // Golden section on ln x over the two cells around the best grid point.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = a0 + step * static_cast<double>(best - 1);
  double b = a0 + step * static_cast<double>(best + 1);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(std::exp(c));
  double fd = f(std::exp(d));
  res.evaluations += 2;
  while (b - a > 0.5 * rel_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(std::exp(d));
    }
    ++res.evaluations;
  }
  const double x = fc >= fd ? c : d;
  const double fx = std::max(fc, fd);
  if (fx >= best_val) {
    res.x = std::exp(x);
    res.value = fx;
  }
  return res;
}

OptimizeResult optimize_gamma_tl(const DriveSpec& drive, const DetectorParams& p, double t_m,
                                 const IntegratorConfig& cfg, const GammaTlSearch& search) {
  if (!(p.gamma_1 > 0.0)) {
    throw InvalidParameter("gamma_tl search is bracketed in units of gamma_1 > 0");
  }
  auto objective = [&](double g_tl) {
    DetectorParams q = p;
    q.gamma_tl = g_tl;
    return evaluate_objective(Objective::PmAtTm, q, drive, t_m, cfg);
  };
  return maximize_log(objective, search.lo_ratio * p.gamma_1, search.hi_ratio * p.gamma_1,
                      search.grid_points, search.rel_tol);
}

std::vector<double> saturation_curve(const DetectorParams& p, double t_m,
                                     const std::vector<double>& alpha_grid, bool optimize_per_point,
                                     const IntegratorConfig& cfg) {
  std::vector<double> out;
  out.reserve(alpha_grid.size());
  for (double a : alpha_grid) {
    const DriveSpec d = DriveSpec::continuous(a, p.omega_0);
    if (a == 0.0) {
      out.push_back(0.0);
      continue;
    }
    if (optimize_per_point) {
      GammaTlSearch search;
      search.grid_points = 200;
      out.push_back(optimize_gamma_tl(d, p, t_m, cfg, search).value);
    } else {
      out.push_back(evaluate_objective(Objective::PmAtTm, p, d, t_m, cfg));
    }
  }
  return out;
}

}  // namespace jpm
