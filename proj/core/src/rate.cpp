#include "jpm/rate.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

namespace jpm {

namespace {

void require_flux(double flux) {
  if (!(flux >= 0.0) || !std::isfinite(flux)) {
    throw InvalidParameter("photon flux must be finite and >= 0");
  }
}

void require_reset(const DetectorParams& p) {
  if (!(p.gamma_res > 0.0)) {
    throw InvalidParameter(
        "stationary state needs gamma_res > 0; for gamma_res = 0 use closed_form_p1_pm");
  }
}

}  // namespace

double excitation_rate(const DetectorParams& p, double flux) {
  require_flux(flux);
  if (flux == 0.0 || p.gamma_tl == 0.0) {
    return 0.0;
  }
  const double gt = gamma_tilde(p);
  return 4.0 * p.gamma_tl * flux / gt;
}

RateState rate_rhs(const DetectorParams& p, double flux, const RateState& s) {
  const double a = excitation_rate(p, flux);
  const double up = a * s.p0;
  const double down = (a + p.gamma_tl + p.gamma_rel) * s.p1;
  const double dark = p.gamma_0 * s.p0;
  const double meas = p.gamma_1 * s.p1;
  const double reset = p.gamma_res * s.pm;
  return {-up - dark + down + reset, up - down - meas, dark + meas - reset};
}

ClosedFormRates closed_form_rates(const DetectorParams& p, double flux) {
  const double a = excitation_rate(p, flux);
  const double c = p.gamma_tl + p.gamma_1 + p.gamma_rel;
  const double beta = a + 0.5 * c;
  // b^2 - a g1 = a^2 + a (g_tl + g_rel) + c^2/4 > 0 whenever b > 0.
  const double g2 = a * a + a * (p.gamma_tl + p.gamma_rel) + 0.25 * c * c;
  return {beta, std::sqrt(g2)};
}

ClosedFormPoint closed_form_p1_pm_flux(const DetectorParams& p, double flux, double t) {
  p.validate();
  if (p.gamma_0 != 0.0 || p.gamma_res != 0.0) {
    throw InvalidParameter("closed-form rate dynamics need gamma_0 = 0 and gamma_res = 0");
  }
  if (!(t >= 0.0)) {
    throw InvalidParameter("t must be >= 0");
  }
  if (!(gamma_tilde(p) > 0.0)) {
    throw InvalidParameter("closed-form rate dynamics need gamma_tilde > 0");
  }
  const double a = excitation_rate(p, flux);
  if (a == 0.0 || t == 0.0) {
    return {0.0, 0.0};
  }
  const auto [beta, g] = closed_form_rates(p, flux);
  // e^{-bt} sinh(Gt) and e^{-bt} cosh(Gt) without overflow or cancellation.
  const double slow = std::exp((g - beta) * t);
  const double fast = std::exp(-(g + beta) * t);
  const double gt2 = 2.0 * g * t;
  const double esinh = gt2 < 1.0 ? 0.5 * fast * std::expm1(gt2) : 0.5 * (slow - fast);
  const double ecosh = 0.5 * (slow + fast);
  return {a / g * esinh, 1.0 - ecosh - beta / g * esinh};
}

ClosedFormPoint closed_form_p1_pm(const DetectorParams& p, double alpha_sq, double t) {
  return closed_form_p1_pm_flux(p, photon_flux(alpha_sq, p.omega_0), t);
}

RateState steady_state(const DetectorParams& p, double flux) {
  p.validate();
  require_reset(p);
  const double a = excitation_rate(p, flux);
  const double c = p.gamma_tl + p.gamma_1 + p.gamma_rel;
  const double r0 = 1.0 + p.gamma_0 / p.gamma_res;
  const double r1 = 1.0 + p.gamma_1 / p.gamma_res;
  const double denom = (a + c) * r0 + a * r1;
  const double p1 = denom > 0.0 ? a / denom : 0.0;
  const double p0 = (1.0 - p1 * r1) / r0;
  return {p0, p1, 1.0 - p0 - p1};
}

RateState steady_state_printed(const DetectorParams& p, double flux) {
  p.validate();
  require_reset(p);
  const double a = excitation_rate(p, flux);
  const double c = p.gamma_tl + p.gamma_1 + p.gamma_rel;
  const double r0 = 1.0 + p.gamma_0 / p.gamma_res;
  const double r1 = 1.0 + p.gamma_1 / p.gamma_res;
  const double denom = c * r0 + a * r1;
  const double p1 = denom > 0.0 ? a / denom : 0.0;
  const double p0 = (1.0 - p1) / r0;
  return {p0, p1, 1.0 - p0 - p1};
}

CountRates count_rates(const DetectorParams& p, double flux) {
  const RateState s = steady_state(p, flux);
  CountRates r;
  r.count = p.gamma_1 * s.p1 + p.gamma_0 * s.p0;
  r.dark = p.gamma_0 / (1.0 + p.gamma_0 / p.gamma_res);
  r.bright = r.count - r.dark;
  return r;
}

double efficiency(const DetectorParams& p) {
  p.validate();
  require_reset(p);
  const double g0 = p.gamma_0;
  const double g1 = p.gamma_1;
  const double gr = p.gamma_res;
  const double num = 4.0 * p.gamma_tl * gr * (g1 * (g0 + gr) + g0 * (g1 + gr));
  const double den = (p.gamma_tl + g1 + p.gamma_rel) * (p.gamma_tl + g1 + g0 + p.gamma_rel) *
                     (g0 + gr) * (g0 + gr);
  if (den == 0.0) {
    throw InvalidParameter("efficiency undefined: all rates vanish");
  }
  return num / den;
}

double efficiency_finite(const DetectorParams& p, double flux) {
  if (!(flux > 0.0)) {
    throw InvalidParameter("finite-flux efficiency needs flux > 0");
  }
  return count_rates(p, flux).bright / flux;
}

double matching_gamma_tl(const DetectorParams& p) {
  p.validate();
  const double a = p.gamma_1 + p.gamma_rel;
  return std::sqrt(a * (a + p.gamma_0));
}

double eta_max(const DetectorParams& p) {
  const double m = matching_gamma_tl(p);
  const double a = p.gamma_1 + p.gamma_rel;
  const double den = p.gamma_0 + 2.0 * a + 2.0 * m;
  if (den == 0.0) {
    throw InvalidParameter("eta_max undefined: gamma_0, gamma_1 and gamma_rel all vanish");
  }
  return 4.0 * (p.gamma_0 + p.gamma_1) / den;
}

double eta_loss(const DetectorParams& p) {
  const double m = matching_gamma_tl(p);
  const double a = p.gamma_1 + p.gamma_rel;
  const double den = (p.gamma_tl + a) * (p.gamma_tl + a + p.gamma_0);
  if (den == 0.0) {
    throw InvalidParameter("eta_loss undefined: all rates vanish");
  }
  return p.gamma_tl * (p.gamma_0 + 2.0 * a + 2.0 * m) / den;
}

double eta_det(const DetectorParams& p) {
  DetectorParams matched = p;
  matched.gamma_tl = matching_gamma_tl(p);
  return efficiency(matched);
}

NepResult nep(const DetectorParams& p, double eta) {
  p.validate();
  if (p.gamma_0 == 0.0) {
    return {0.0, true};
  }
  if (!(eta > 0.0)) {
    return {std::numeric_limits<double>::infinity(), false};
  }
  const double omega_si = p.omega_0 * kPerNsToPerS;
  const double gamma0_si = p.gamma_0 * kPerNsToPerS;
  return {kHbar * omega_si / eta * std::sqrt(2.0 * gamma0_si), true};
}

NepResult nep(const DetectorParams& p) { return nep(p, efficiency(p)); }

EfficiencyReport efficiency_report(const DetectorParams& p, double flux) {
  EfficiencyReport r;
  r.params = p;
  r.eta = efficiency(p);
  r.eta_loss = eta_loss(p);
  r.eta_det = eta_det(p);
  r.eta_max = eta_max(p);
  r.gamma_tl_max = matching_gamma_tl(p);
  r.flux = flux;
  const CountRates c = count_rates(p, flux);
  r.gamma_dark = c.dark;
  r.gamma_bright = c.bright;
  r.nep = nep(p, r.eta);
  r.eta_above_one = r.eta > 1.0;
  r.eta_max_regime = p.gamma_res >= kEtaMaxResetRatio * p.gamma_1;
  return r;
}

std::string to_json(const EfficiencyReport& r, int indent) {
  using nlohmann::ordered_json;
  auto q = [](double v, const char* unit) {
    ordered_json j;
    if (std::isfinite(v)) {
      j["value"] = v;
    } else {
      j["value"] = nullptr;  // JSON has no infinity
    }
    j["unit"] = unit;
    return j;
  };
  ordered_json params;
  params["gamma_tl"] = q(r.params.gamma_tl, "1/ns");
  params["gamma_0"] = q(r.params.gamma_0, "1/ns");
  params["gamma_1"] = q(r.params.gamma_1, "1/ns");
  params["gamma_rel"] = q(r.params.gamma_rel, "1/ns");
  params["gamma_res"] = q(r.params.gamma_res, "1/ns");
  params["omega_0"] = q(r.params.omega_0, "rad/ns");

  ordered_json j;
  j["params"] = params;
  j["eta"] = q(r.eta, "dimensionless");
  j["eta_loss"] = q(r.eta_loss, "dimensionless");
  j["eta_det"] = q(r.eta_det, "dimensionless");
  j["eta_max"] = q(r.eta_max, "dimensionless");
  j["gamma_tl_max"] = q(r.gamma_tl_max, "1/ns");
  j["gamma_dark"] = q(r.gamma_dark, "1/ns");
  j["gamma_bright"] = q(r.gamma_bright, "1/ns");
  j["flux"] = q(r.flux, "photons/ns");
  j["nep"] = q(r.nep.value, "W/sqrt(Hz)");
  j["flags"] = {{"eta_above_one", r.eta_above_one},
                {"eta_max_regime", r.eta_max_regime},
                {"nep_out_of_range", !r.nep.finite}};
  return j.dump(indent);
}

}  // namespace jpm
