#pragma once

// Parameter and state types shared by every module, plus the unit and
// photon-flux conventions.
//
// Internal units: rates in 1/ns, angular frequencies in rad/ns, times in ns.
// A rate quoted as "1 GHz" is 1/ns; an ordinary frequency f [GHz] maps to the
// angular frequency 2*pi*f rad/ns.

#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace jpm {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHbar = 1.054571817e-34;  // J*s
inline constexpr double kPerNsToPerS = 1.0e9;

/// Angular frequency [rad/ns] of an ordinary frequency given in GHz.
constexpr double angular_from_ghz(double f_ghz) { return kTwoPi * f_ghz; }

/// Thrown for parameters outside a function's admissible domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Detector rates [1/ns] and transition frequency [rad/ns].
struct DetectorParams {
  double gamma_tl = 0.0;   // coupling to the transmission line
  double gamma_0 = 0.0;    // dark tunnelling |0> -> |m>
  double gamma_1 = 0.0;    // measurement tunnelling |1> -> |m>
  double gamma_rel = 0.0;  // intrinsic relaxation |1> -> |0>
  double gamma_res = 0.0;  // reset |m> -> |0>
  double omega_0 = kTwoPi * 5.0;

  /// Throws InvalidParameter unless all rates are >= 0 (and finite) and omega_0 > 0.
  void validate() const;
};

/// gamma_TL + gamma_0 + gamma_1 + gamma_rel.
double gamma_tilde(const DetectorParams& p);

struct ContinuousDrive {};

/// Spontaneous-emission pulse, f(t) = sqrt(kappa) exp(-kappa t / 2).
struct ExponentialPulse {
  double kappa = 1.0;
};

/// Gaussian pulse centred at t0. A t0 <= 0 selects the default 6/(sigma*sqrt(2)).
/// printed_prefactor keeps the printed prefactor (8 pi sigma^2)^(1/4), whose
/// squared integral is 2*pi instead of 1.
struct GaussianPulse {
  double sigma = 1.0;
  double t0 = 0.0;
  bool printed_prefactor = false;
};

/// Samples of f(t) on a strictly increasing grid, linearly interpolated.
struct TabulatedPulse {
  std::vector<double> times;
  std::vector<double> values;
};

using DriveShape = std::variant<ContinuousDrive, ExponentialPulse, GaussianPulse, TabulatedPulse>;

enum class DriveKind { Continuous, Exponential, Gaussian, Tabulated };

struct DriveSpec {
  DriveShape shape = ContinuousDrive{};
  double alpha_sq = 0.0;  // |alpha|^2: flux amplitude (continuous) or mean photon number (pulses)
  double omega_s = kTwoPi * 5.0;

  DriveKind kind() const { return static_cast<DriveKind>(shape.index()); }
  bool is_pulse() const { return kind() != DriveKind::Continuous; }

  /// Throws InvalidParameter on negative amplitude or nonpositive shape parameters.
  void validate() const;

  static DriveSpec continuous(double alpha_sq, double omega_s);
  static DriveSpec exponential(double alpha_sq, double kappa, double omega_s);
  static DriveSpec gaussian(double alpha_sq, double sigma, double omega_s, double t0 = 0.0,
                            bool printed_prefactor = false);
};

std::string to_string(DriveKind kind);

/// Only omega_s == omega_0 is supported; throws InvalidParameter otherwise.
void require_resonant(const DetectorParams& p, const DriveSpec& d);

/// Mean-field state after eliminating the decoupled real part of <sigma^->:
/// v = i(<sigma^-> - <sigma^+>) and the three occupation probabilities.
struct MeanFieldState {
  double v = 0.0;
  double p0 = 1.0;
  double p1 = 0.0;
  double pm = 0.0;

  static constexpr MeanFieldState ground() { return {}; }
};

inline constexpr double kSimplexTolerance = 1e-6;

/// True when every probability lies in [-kSimplexTolerance, 1 + kSimplexTolerance].
bool within_simplex(const MeanFieldState& s, double eps = kSimplexTolerance);

/// Photon flux <a_in^dag a_in> = alpha_sq * omega_0 / (2 pi) [photons/ns].
double photon_flux(double alpha_sq, double omega_0);

/// Photons delivered: flux * t_m for a continuous drive, alpha_sq for a pulse.
double photon_number(const DriveSpec& drive, double t_m);

/// Inverse of photon_number for a continuous drive.
double alpha_sq_for_photons(double photons, double omega_0, double t_m);

}  // namespace jpm
