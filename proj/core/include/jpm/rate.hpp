#pragma once

// Incoherent rate model for (p0, p1, pm) under a continuous drive of photon
// flux phi [1/ns]. The excitation rate is a = 4 gamma_tl phi / gamma_tilde.

#include <array>
#include <string>

#include "jpm/core.hpp"

namespace jpm {

struct RateState {
  double p0 = 1.0;
  double p1 = 0.0;
  double pm = 0.0;
};

/// Absorption (and stimulated emission) rate 4 gamma_tl phi / gamma_tilde [1/ns].
double excitation_rate(const DetectorParams& p, double flux);

/// Time derivative of the occupation probabilities. The three components sum
/// to zero identically.
RateState rate_rhs(const DetectorParams& p, double flux, const RateState& s);

struct ClosedFormPoint {
  double p1 = 0.0;
  double pm = 0.0;
};

/// Rate-model dynamics from the ground state for gamma_0 = gamma_res = 0,
/// with phi = alpha_sq * omega_0 / 2 pi:
///   p1(t) = (a/G) e^{-b t} sinh(G t)
///   pm(t) = 1 - e^{-b t} (cosh(G t) + (b/G) sinh(G t))
/// where b = a + (gamma_tl + gamma_1 + gamma_rel)/2 and G = sqrt(b^2 - a gamma_1).
ClosedFormPoint closed_form_p1_pm(const DetectorParams& p, double alpha_sq, double t);
ClosedFormPoint closed_form_p1_pm_flux(const DetectorParams& p, double flux, double t);

/// Decay constants (b, G) of the closed form.
struct ClosedFormRates {
  double beta = 0.0;
  double big_gamma = 0.0;
};
ClosedFormRates closed_form_rates(const DetectorParams& p, double flux);

/// Stationary state for gamma_res > 0. Exact fixed point of rate_rhs; throws
/// InvalidParameter for gamma_res = 0 (use closed_form_p1_pm instead).
RateState steady_state(const DetectorParams& p, double flux);

/// Stationary state with the stimulated-emission term of the p1 denominator
/// dropped, p0 = (1 - p1)/(1 + gamma_0/gamma_res). Agrees with steady_state at
/// zero flux and to first order in the flux.
RateState steady_state_printed(const DetectorParams& p, double flux);

struct CountRates {
  double count = 0.0;   // gamma_1 p1 + gamma_0 p0
  double dark = 0.0;    // gamma_0 / (1 + gamma_0/gamma_res)
  double bright = 0.0;  // count - dark
};
CountRates count_rates(const DetectorParams& p, double flux);

/// Low-excitation detection efficiency; requires gamma_res > 0.
double efficiency(const DetectorParams& p);

/// Bright count rate per incident photon at finite flux.
double efficiency_finite(const DetectorParams& p, double flux);

/// sqrt((gamma_1 + gamma_rel)(gamma_1 + gamma_rel + gamma_0)): the coupling
/// that maximizes efficiency() for the remaining rates.
double matching_gamma_tl(const DetectorParams& p);

/// 4(gamma_0 + gamma_1)/(gamma_0 + 2(gamma_1 + gamma_rel) + 2 gamma_tl^max),
/// the matched efficiency for gamma_res >> gamma_1.
double eta_max(const DetectorParams& p);

/// efficiency(gamma_tl) / efficiency(gamma_tl^max); independent of gamma_res.
double eta_loss(const DetectorParams& p);

/// efficiency at the matched coupling with the actual gamma_res.
double eta_det(const DetectorParams& p);

inline constexpr double kEtaMaxResetRatio = 10.0;  // gamma_res >= 10 gamma_1 for eta_max

struct NepResult {
  double value = 0.0;  // W/sqrt(Hz); +inf when out of range
  bool finite = true;
};

/// (hbar omega_0 / eta) sqrt(2 gamma_0) in SI units.
NepResult nep(const DetectorParams& p, double eta);
NepResult nep(const DetectorParams& p);

struct EfficiencyReport {
  DetectorParams params;
  double eta = 0.0;
  double eta_loss = 0.0;
  double eta_det = 0.0;
  double eta_max = 0.0;
  double gamma_tl_max = 0.0;
  double gamma_dark = 0.0;
  double gamma_bright = 0.0;  // at the evaluation flux
  double flux = 0.0;
  NepResult nep;
  bool eta_above_one = false;
  bool eta_max_regime = false;  // gamma_res >= 10 gamma_1
};

/// Builds the report; gamma_bright is evaluated at `flux` (default: none).
EfficiencyReport efficiency_report(const DetectorParams& p, double flux = 0.0);

/// JSON object with a {"value", "unit"} pair per quantity plus flags.
std::string to_json(const EfficiencyReport& r, int indent = 2);

}  // namespace jpm
