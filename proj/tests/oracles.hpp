#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    return left + right + diff / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature; the interval is pre-split into `pieces`.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                      int pieces = 64) {
  double total = 0.0;
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    const double lo = a + i * h;
    const double hi = lo + h;
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = h / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(f, lo, hi, fa, fm, fb, whole, tol / pieces, 40);
  }
  return total;
}

/// Argmax of f over a log grid of n points on [lo, hi].
inline double grid_argmax_log(const std::function<double(double)>& f, double lo, double hi, int n) {
  double best_x = lo;
  double best = -INFINITY;
  for (int i = 0; i < n; ++i) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

/// Classical fixed-step RK4 for y' = f(y) (autonomous), returning samples at
/// multiples of `every` steps.
template <std::size_t N, class F>
std::vector<std::array<double, N>> rk4(F f, std::array<double, N> y, double h, std::size_t steps,
                                       std::size_t every) {
  std::vector<std::array<double, N>> out{y};
  for (std::size_t s = 1; s <= steps; ++s) {
    auto add = [](const std::array<double, N>& a, const std::array<double, N>& k, double c) {
      std::array<double, N> r{};
      for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + c * k[i];
      return r;
    };
    const auto k1 = f(y);
    const auto k2 = f(add(y, k1, 0.5 * h));
    const auto k3 = f(add(y, k2, 0.5 * h));
    const auto k4 = f(add(y, k3, h));
    for (std::size_t i = 0; i < N; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (s % every == 0) {
      out.push_back(y);
    }
  }
  return out;
}

/// Deterministic log-uniform draws.
struct LogUniform {
  std::mt19937_64 rng;
  explicit LogUniform(unsigned seed) : rng(seed) {}
  double operator()(double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
  }
};

}  // namespace oracle
