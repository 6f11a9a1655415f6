#pragma once

// Drive envelopes f(t) [1/sqrt(ns)], normalized so that the integral of |f|^2
// over t >= 0 is one. Envelopes are immutable after construction.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "jpm/core.hpp"

namespace jpm {

class Envelope {
 public:
  /// sqrt(kappa) exp(-kappa t / 2); support [0, 40/kappa].
  static Envelope exponential(double kappa);

  /// (8 pi sigma^2)^(1/4) exp(-sigma^2 (t - t0)^2), renormalized numerically
  /// unless printed_prefactor is set. t0 <= 0 selects default_gaussian_t0(sigma);
  /// an explicit t0 must leave the support t0 +- 6/(sigma sqrt 2) inside t >= 0.
  static Envelope gaussian(double sigma, double t0 = 0.0, bool printed_prefactor = false);

  /// Piecewise-linear envelope through (times[i], values[i]), rescaled so that
  /// its exact squared integral is one. Zero outside [times.front(), times.back()].
  static Envelope tabulated(std::vector<double> times, std::vector<double> values);

  /// Envelope of a pulsed drive; throws InvalidParameter for ContinuousDrive.
  static Envelope from_drive(const DriveSpec& drive);

  DriveKind kind() const { return kind_; }
  double norm_constant() const { return norm_; }
  double support_begin() const { return support_begin_; }
  double support_end() const { return support_end_; }
  double peak_time() const;

  /// c * f_raw(t); zero for t < 0.
  double operator()(double t) const;
  double evaluate(double t) const { return (*this)(t); }

  /// The printed shape before the normalization constant is applied.
  double raw(double t) const;

  /// Composite Gauss-Legendre quadrature of |f|^2 over the effective support.
  double squared_integral() const;

 private:
  Envelope() = default;

  DriveKind kind_ = DriveKind::Exponential;
  double rate_ = 1.0;  // kappa or sigma
  double t0_ = 0.0;
  double norm_ = 1.0;
  double support_begin_ = 0.0;
  double support_end_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
};

/// 6/(sigma sqrt 2): the pulse at t = 0 is below 1e-7 of its peak.
double default_gaussian_t0(double sigma);

/// Half-width 6/(sigma sqrt 2) of the Gaussian effective support.
double gaussian_half_width(double sigma);

/// Composite 5-point Gauss-Legendre rule on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels);

/// Two-column CSV (t, f), optional header line, '#' comments allowed.
TabulatedPulse read_tabulated_csv(std::istream& in);
TabulatedPulse read_tabulated_csv(const std::filesystem::path& path);

}  // namespace jpm
