#include "jpm/core.hpp"

#include <cmath>

namespace jpm {

namespace {

void require_rate(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw InvalidParameter(std::string(name) + " must be a finite rate >= 0");
  }
}

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw InvalidParameter(std::string(name) + " must be > 0");
  }
}

}  // namespace

void DetectorParams::validate() const {
  require_rate(gamma_tl, "gamma_tl");
  require_rate(gamma_0, "gamma_0");
  require_rate(gamma_1, "gamma_1");
  require_rate(gamma_rel, "gamma_rel");
  require_rate(gamma_res, "gamma_res");
  require_positive(omega_0, "omega_0");
}

double gamma_tilde(const DetectorParams& p) {
  return p.gamma_tl + p.gamma_0 + p.gamma_1 + p.gamma_rel;
}

void DriveSpec::validate() const {
  if (!std::isfinite(alpha_sq) || alpha_sq < 0.0) {
    throw InvalidParameter("alpha_sq must be >= 0");
  }
  require_positive(omega_s, "omega_s");
  switch (kind()) {
    case DriveKind::Continuous:
      break;
    case DriveKind::Exponential:
      require_positive(std::get<ExponentialPulse>(shape).kappa, "kappa");
      break;
    case DriveKind::Gaussian:
      require_positive(std::get<GaussianPulse>(shape).sigma, "sigma");
      break;
    case DriveKind::Tabulated: {
      const auto& tab = std::get<TabulatedPulse>(shape);
      if (tab.times.size() < 2 || tab.times.size() != tab.values.size()) {
        throw InvalidParameter("tabulated pulse needs >= 2 (t, f) samples");
      }
      break;
    }
  }
}

DriveSpec DriveSpec::continuous(double alpha_sq, double omega_s) {
  return DriveSpec{ContinuousDrive{}, alpha_sq, omega_s};
}

DriveSpec DriveSpec::exponential(double alpha_sq, double kappa, double omega_s) {
  return DriveSpec{ExponentialPulse{kappa}, alpha_sq, omega_s};
}

DriveSpec DriveSpec::gaussian(double alpha_sq, double sigma, double omega_s, double t0,
                              bool printed_prefactor) {
  return DriveSpec{GaussianPulse{sigma, t0, printed_prefactor}, alpha_sq, omega_s};
}

std::string to_string(DriveKind kind) {
  switch (kind) {
    case DriveKind::Continuous: return "continuous";
    case DriveKind::Exponential: return "exponential";
    case DriveKind::Gaussian: return "gaussian";
    case DriveKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

void require_resonant(const DetectorParams& p, const DriveSpec& d) {
  if (std::abs(d.omega_s - p.omega_0) > 1e-12 * p.omega_0) {
    throw InvalidParameter("detuned drives are not supported (omega_s must equal omega_0)");
  }
}

bool within_simplex(const MeanFieldState& s, double eps) {
  auto ok = [eps](double x) { return x >= -eps && x <= 1.0 + eps; };
  return ok(s.p0) && ok(s.p1) && ok(s.pm);
}

double photon_flux(double alpha_sq, double omega_0) {
  return alpha_sq * omega_0 / kTwoPi;
}

double photon_number(const DriveSpec& drive, double t_m) {
  if (t_m < 0.0) {
    throw InvalidParameter("t_m must be >= 0");
  }
  if (drive.is_pulse()) {
    return drive.alpha_sq;
  }
  return photon_flux(drive.alpha_sq, drive.omega_s) * t_m;
}

double alpha_sq_for_photons(double photons, double omega_0, double t_m) {
  if (t_m <= 0.0 || omega_0 <= 0.0) {
    throw InvalidParameter("t_m and omega_0 must be > 0");
  }
  return photons * kTwoPi / (omega_0 * t_m);
}

}  // namespace jpm
