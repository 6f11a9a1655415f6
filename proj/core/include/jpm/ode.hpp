#pragma once

// Explicit Runge-Kutta integrators for small fixed-size systems: adaptive
// Dormand-Prince 5(4) and classical fixed-step RK4. Steps are clipped so that
// every requested sample time is hit exactly.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace jpm::ode {

template <std::size_t N>
using Vec = std::array<double, N>;

enum class Method { Rk45, Rk4 };

struct Options {
  Method method = Method::Rk45;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0 selects an automatic first step
  double fixed_step = 1e-3;   // RK4 only
  std::size_t max_steps = 100'000'000;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

/// Step-size underflow, step budget exhaustion or an observer-reported breach.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time);
  double time() const { return time_; }

 private:
  double time_;
};

namespace detail {

template <std::size_t N>
Vec<N> axpy(const Vec<N>& y, double h, std::initializer_list<std::pair<double, const Vec<N>*>> terms) {
  Vec<N> out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) {
      continue;
    }
    for (std::size_t i = 0; i < N; ++i) {
      out[i] += h * c * (*k)[i];
    }
  }
  return out;
}

template <std::size_t N>
double error_norm(const Vec<N>& err, const Vec<N>& y0, const Vec<N>& y1, const Options& opt) {
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / scale;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(N));
}

template <std::size_t N, class Rhs>
double initial_step(const Rhs& rhs, double t, const Vec<N>& y, const Vec<N>& f0, const Options& opt) {
  double d0 = 0.0;
  double d1 = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sc = opt.abs_tol + opt.rel_tol * std::abs(y[i]);
    d0 += (y[i] / sc) * (y[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / N);
  d1 = std::sqrt(d1 / N);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, opt.max_step);
  const Vec<N> y1 = axpy<N>(y, h0, {{1.0, &f0}});
  const Vec<N> f1 = rhs(t + h0, y1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sc = opt.abs_tol + opt.rel_tol * std::abs(y[i]);
    const double r = (f1[i] - f0[i]) / sc;
    d2 += r * r;
  }
  d2 = std::sqrt(d2 / N) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, opt.max_step});
}

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 through every time in `samples`
/// (ascending, all >= t0). `on_step(t, y)` runs after each accepted step and
/// may throw; `on_sample(index, t, y)` runs when a sample time is reached.
template <std::size_t N, class Rhs, class OnStep, class OnSample>
Stats integrate(const Rhs& rhs, Vec<N> y, double t0, std::span<const double> samples,
                const Options& opt, OnStep&& on_step, OnSample&& on_sample) {
  if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0)) {
    throw std::invalid_argument("integrator tolerances must be > 0");
  }
  Stats stats;
  double t = t0;
  std::size_t next = 0;
  while (next < samples.size() && samples[next] <= t0) {
    on_sample(next, t0, y);
    ++next;
  }
  if (next == samples.size()) {
    return stats;
  }

  if (opt.method == Method::Rk4) {
    if (!(opt.fixed_step > 0.0)) {
      throw std::invalid_argument("RK4 step must be > 0");
    }
    while (next < samples.size()) {
      const double target = samples[next];
      while (t < target) {
        double h = std::min(opt.fixed_step, target - t);
        if (target - (t + h) < 1e-12 * opt.fixed_step) {
          h = target - t;
        }
        const Vec<N> k1 = rhs(t, y);
        const Vec<N> k2 = rhs(t + 0.5 * h, detail::axpy<N>(y, 0.5 * h, {{1.0, &k1}}));
        const Vec<N> k3 = rhs(t + 0.5 * h, detail::axpy<N>(y, 0.5 * h, {{1.0, &k2}}));
        const Vec<N> k4 = rhs(t + h, detail::axpy<N>(y, h, {{1.0, &k3}}));
        y = detail::axpy<N>(y, h / 6.0, {{1.0, &k1}, {2.0, &k2}, {2.0, &k3}, {1.0, &k4}});
        t = (h == target - t) ? target : t + h;
        stats.rhs_evals += 4;
        ++stats.accepted;
        on_step(t, y);
        if (stats.accepted > opt.max_steps) {
          throw IntegrationError("step budget exhausted", t);
        }
      }
      on_sample(next, t, y);
      ++next;
    }
    return stats;
  }

  // Dormand-Prince 5(4), FSAL.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Vec<N> k1 = rhs(t, y);
  ++stats.rhs_evals;
  double h = opt.initial_step > 0.0 ? opt.initial_step : detail::initial_step<N>(rhs, t, y, k1, opt);
  stats.rhs_evals += 1;

  while (next < samples.size()) {
    const double target = samples[next];
    bool hit_target = false;
    double h_try = std::min(h, opt.max_step);
    if (t + h_try >= target || target - (t + h_try) < 1e-12 * std::max(1.0, std::abs(target))) {
      h_try = target - t;
      hit_target = true;
    }
    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h_try < h_min) {
      throw IntegrationError("step size underflow", t);
    }

    const Vec<N> k2 = rhs(t + c2 * h_try, detail::axpy<N>(y, h_try, {{a21, &k1}}));
    const Vec<N> k3 = rhs(t + c3 * h_try, detail::axpy<N>(y, h_try, {{a31, &k1}, {a32, &k2}}));
    const Vec<N> k4 =
        rhs(t + c4 * h_try, detail::axpy<N>(y, h_try, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec<N> k5 = rhs(t + c5 * h_try,
                          detail::axpy<N>(y, h_try, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec<N> k6 = rhs(t + h_try, detail::axpy<N>(y, h_try, {{a61, &k1},
                                                                {a62, &k2},
                                                                {a63, &k3},
                                                                {a64, &k4},
                                                                {a65, &k5}}));
    const Vec<N> y_new =
        detail::axpy<N>(y, h_try, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Vec<N> k7 = rhs(t + h_try, y_new);
    stats.rhs_evals += 6;

    Vec<N> err{};
    for (std::size_t i = 0; i < N; ++i) {
      err[i] = h_try * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }
    const double en = detail::error_norm<N>(err, y, y_new, opt);
    if (!std::isfinite(en)) {
      throw IntegrationError("non-finite state", t);
    }

    if (en <= 1.0) {
      t = hit_target ? target : t + h_try;
      y = y_new;
      k1 = k7;
      ++stats.accepted;
      on_step(t, y);
      const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      // Keep the pre-clip step when the clip to a sample time shrank it.
      h = hit_target ? std::max(h, h_try * factor) : h_try * factor;
      if (hit_target) {
        on_sample(next, t, y);
        ++next;
        while (next < samples.size() && samples[next] <= t) {
          on_sample(next, t, y);
          ++next;
        }
      }
    } else {
      ++stats.rejected;
      h = h_try * std::clamp(0.9 * std::pow(en, -0.2), 0.2, 1.0);
    }
    if (stats.accepted + stats.rejected > opt.max_steps) {
      throw IntegrationError("step budget exhausted", t);
    }
  }
  return stats;
}

}  // namespace jpm::ode
