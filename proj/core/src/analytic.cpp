#include "jpm/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace jpm {

namespace {

constexpr double kDegenerateSeparation = 1e-9;

void require_single_event(const DetectorParams& p) {
  p.validate();
  if (p.gamma_0 != 0.0 || p.gamma_rel != 0.0 || p.gamma_res != 0.0) {
    throw InvalidParameter("Laplace solutions need gamma_0 = gamma_rel = gamma_res = 0");
  }
}

double continuous_rabi_sq(const DetectorParams& p, double alpha_sq) {
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq)) {
    throw InvalidParameter("alpha_sq must be finite and >= 0");
  }
  return 2.0 * alpha_sq * p.gamma_tl * p.omega_0 / std::numbers::pi;
}

// Monic cubic s^3 + c2 s^2 + c1 s + c0.
struct Cubic {
  double c2, c1, c0;
  Complex operator()(Complex s) const { return ((s + c2) * s + c1) * s + c0; }
  Complex derivative(Complex s) const { return (3.0 * s + 2.0 * c2) * s + c1; }
};

Complex polish(const Cubic& q, Complex r) {
  for (int i = 0; i < 8; ++i) {
    const Complex d = q.derivative(r);
    if (d == Complex(0.0)) {
      break;
    }
    const Complex step = q(r) / d;
    r -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) {
      break;
    }
  }
  return r;
}

std::array<Complex, 3> cubic_roots(const Cubic& q) {
  Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
  companion(0, 0) = -q.c2;
  companion(0, 1) = -q.c1;
  companion(0, 2) = -q.c0;
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("cubic root solve failed");
  }
  std::array<Complex, 3> r;
  for (int i = 0; i < 3; ++i) {
    r[static_cast<std::size_t>(i)] = polish(q, solver.eigenvalues()(i));
  }
  // Real coefficients: one root is always real and the other two are real or a conjugate pair.
  std::sort(r.begin(), r.end(),
            [](const Complex& a, const Complex& b) { return std::abs(a.imag()) < std::abs(b.imag()); });
  r[0] = Complex(r[0].real(), 0.0);
  if (std::abs(r[1].imag()) > 0.0 || std::abs(r[2].imag()) > 0.0) {
    const Complex mid = 0.5 * (r[1] + std::conj(r[2]));
    const bool pair = std::abs(mid.imag()) > 1e-12 * std::abs(mid);
    if (pair) {
      r[1] = mid.imag() > 0.0 ? mid : std::conj(mid);
      r[2] = std::conj(r[1]);
    } else {
      r[1] = Complex(r[1].real(), 0.0);
      r[2] = Complex(r[2].real(), 0.0);
    }
  }
  return r;
}

struct PulseConstants {
  double w2;      // Rabi frequency squared at t = 0
  double lambda;  // amplitude decay rate
  double gt;
};

PulseConstants pulse_constants(const DetectorParams& p, double alpha_sq, double kappa) {
  require_single_event(p);
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw InvalidParameter("kappa must be > 0");
  }
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq)) {
    throw InvalidParameter("alpha_sq must be finite and >= 0");
  }
  if (!(p.gamma_1 > 0.0)) {
    throw InvalidParameter("the pulsed steady state needs gamma_1 > 0");
  }
  return {2.0 * alpha_sq * kappa * p.gamma_tl / std::numbers::pi, 0.5 * kappa, gamma_tilde(p)};
}

}  // namespace

PoleSet continuous_pm_poles(const DetectorParams& p, double alpha_sq) {
  require_single_event(p);
  const double w2 = continuous_rabi_sq(p, alpha_sq);
  if (!(w2 > 0.0) || !(p.gamma_1 > 0.0)) {
    throw InvalidParameter("pole expansion needs alpha_sq > 0, gamma_tl > 0 and gamma_1 > 0");
  }
  const double gt = gamma_tilde(p);
  const Cubic q{1.5 * gt, 0.5 * gt * gt + w2, 0.5 * w2 * p.gamma_1};
  const auto roots = cubic_roots(q);

  PoleSet set;
  set.poles = {Complex(0.0), roots[0], roots[1], roots[2]};
  for (std::size_t i = 0; i < set.poles.size(); ++i) {
    for (std::size_t j = i + 1; j < set.poles.size(); ++j) {
      const double scale = std::max({std::abs(set.poles[i]), std::abs(set.poles[j]), 1e-300});
      if (std::abs(set.poles[i] - set.poles[j]) <= kDegenerateSeparation * scale) {
        set.degenerate = true;
      }
    }
  }
  const double num = 0.5 * p.gamma_1 * w2;
  set.residues = {Complex(1.0)};
  for (const Complex& r : roots) {
    set.residues.push_back(num / (r * q.derivative(r)));
  }
  return set;
}

Complex laplace_pm(const DetectorParams& p, double alpha_sq, Complex s) {
  require_single_event(p);
  const double w2 = continuous_rabi_sq(p, alpha_sq);
  const double gt = gamma_tilde(p);
  const double g1 = p.gamma_1;
  const Complex shifted = s + 0.5 * gt;
  const Complex bracket = s * s / g1 + gt * s / g1 + (0.5 * w2) / shifted * (2.0 * s / g1 + 1.0);
  return (0.5 * w2) / (s * shifted * bracket);
}

Complex reconstruct_pm(const PoleSet& set, double t) {
  Complex sum(0.0);
  for (std::size_t i = 0; i < set.poles.size(); ++i) {
    sum += set.residues[i] * std::exp(set.poles[i] * t);
  }
  return sum;
}

double exp_pulse_rabi0(const DetectorParams& p, double alpha_sq, double kappa) {
  return std::sqrt(pulse_constants(p, alpha_sq, kappa).w2);
}

double exp_pulse_leading(const DetectorParams& p, double alpha_sq, double kappa) {
  const auto c = pulse_constants(p, alpha_sq, kappa);
  return c.w2 / (4.0 * c.lambda * (c.lambda + 0.5 * c.gt) * (1.0 + p.gamma_tl / p.gamma_1));
}

double exp_pulse_fifth_order(const DetectorParams& p, double alpha_sq, double kappa) {
  const auto c = pulse_constants(p, alpha_sq, kappa);
  return exp_pulse_leading(p, alpha_sq, kappa) * (1.0 - c.w2 / (16.0 * c.lambda * c.lambda));
}

double exp_pulse_memory_residue(const DetectorParams& p, double alpha_sq, double kappa) {
  const auto c = pulse_constants(p, alpha_sq, kappa);
  return 0.5 * c.w2 * (1.0 + 4.0 * c.lambda / p.gamma_1) /
         ((c.lambda + 0.5 * c.gt) * (1.0 + p.gamma_tl / p.gamma_1));
}

std::vector<double> exp_pulse_pm_taylor(const DetectorParams& p, double alpha_sq, double kappa,
                                        int order) {
  const auto c = pulse_constants(p, alpha_sq, kappa);
  if (order < 0) {
    throw InvalidParameter("series order must be >= 0");
  }
  const auto n = static_cast<std::size_t>(order) + 1;
  // Taylor coefficients of w(t) = w0 e^{-lambda t}.
  std::vector<double> w(n);
  w[0] = std::sqrt(c.w2);
  for (std::size_t k = 1; k < n; ++k) {
    w[k] = -w[k - 1] * c.lambda / static_cast<double>(k);
  }
  std::vector<double> v(n, 0.0), p0(n, 0.0), p1(n, 0.0), pm(n, 0.0);
  p0[0] = 1.0;
  const double g_down = p.gamma_tl;  // gamma_rel = 0 here
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double w_diff = 0.0;  // [w (p0 - p1)]_k
    double w_v = 0.0;     // [w v]_k
    for (std::size_t j = 0; j <= k; ++j) {
      w_diff += w[j] * (p0[k - j] - p1[k - j]);
      w_v += w[j] * v[k - j];
    }
    const double kp1 = static_cast<double>(k + 1);
    v[k + 1] = (-0.5 * c.gt * v[k] + w_diff) / kp1;
    p0[k + 1] = (g_down * p1[k] - 0.5 * w_v) / kp1;
    p1[k + 1] = (-c.gt * p1[k] + 0.5 * w_v) / kp1;
    pm[k + 1] = p.gamma_1 * p1[k] / kp1;
  }
  return pm;
}

SeriesResult exp_pulse_steady_state(const DetectorParams& p, double alpha_sq, double kappa,
                                    int order) {
  if (order < 1 || order > kMaxSeriesOrder) {
    throw InvalidParameter("series order must be in 1..12");
  }
  const auto c = pulse_constants(p, alpha_sq, kappa);
  const double lead = exp_pulse_leading(p, alpha_sq, kappa);
  const double a1 = exp_pulse_memory_residue(p, alpha_sq, kappa);
  const auto taylor = exp_pulse_pm_taylor(p, alpha_sq, kappa, order);

  SeriesResult res;
  double sum = lead;
  double prev_term = 0.0;
  double factorial = 1.0;
  double inv_pow = 1.0 / (2.0 * c.lambda);
  for (int l = 0; l <= order; ++l) {
    if (l > 0) {
      factorial *= l;
      inv_pow /= 2.0 * c.lambda;
    }
    const double term = a1 * factorial * taylor[static_cast<std::size_t>(l)] * inv_pow;
    sum -= term;
    res.partial_sums.push_back(sum);
    if (res.converged) {
      const bool out_of_range = sum < 0.0 || sum > 1.0;
      const bool growing =
          prev_term != 0.0 && term != 0.0 && std::abs(term) > kSeriesGrowthLimit * std::abs(prev_term);
      if (out_of_range || growing) {
        res.converged = false;
        res.diverged_at = l;
      }
    }
    prev_term = term;
  }
  res.value = sum;
  return res;
}

}  // namespace jpm
