#include "jpm/pulses.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace jpm {

namespace {

constexpr double kExpSupportFactor = 40.0;
constexpr int kNormalizationPanels = 400;

double raw_gaussian(double sigma, double t0, double t) {
  const double u = t - t0;
  return std::pow(8.0 * std::numbers::pi * sigma * sigma, 0.25) * std::exp(-sigma * sigma * u * u);
}

}  // namespace

double default_gaussian_t0(double sigma) { return gaussian_half_width(sigma); }

double gaussian_half_width(double sigma) { return 6.0 / (sigma * std::numbers::sqrt2); }

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  static constexpr std::array<double, 5> nodes = {
      0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> weights = {
      0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
      0.2369268850561891};
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double mid = a + (i + 0.5) * h;
    double panel = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      panel += weights[k] * f(mid + 0.5 * h * nodes[k]);
    }
    total += 0.5 * h * panel;
  }
  return total;
}

Envelope Envelope::exponential(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw InvalidParameter("kappa must be > 0");
  }
  Envelope env;
  env.kind_ = DriveKind::Exponential;
  env.rate_ = kappa;
  env.norm_ = 1.0;
  env.support_begin_ = 0.0;
  env.support_end_ = kExpSupportFactor / kappa;
  return env;
}

Envelope Envelope::gaussian(double sigma, double t0, bool printed_prefactor) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidParameter("sigma must be > 0");
  }
  const double half = gaussian_half_width(sigma);
  if (t0 <= 0.0) {
    t0 = default_gaussian_t0(sigma);
  } else if (t0 < half * (1.0 - 1e-12)) {
    throw InvalidParameter("t0 too small: the Gaussian support t0 - 6/(sigma sqrt 2) must be >= 0");
  }
  Envelope env;
  env.kind_ = DriveKind::Gaussian;
  env.rate_ = sigma;
  env.t0_ = t0;
  env.support_begin_ = t0 - half;
  env.support_end_ = t0 + half;
  if (printed_prefactor) {
    env.norm_ = 1.0;
  } else {
    const double mass = gauss_legendre(
        [&](double t) {
          const double f = raw_gaussian(sigma, t0, t);
          return f * f;
        },
        env.support_begin_, env.support_end_, kNormalizationPanels);
    env.norm_ = 1.0 / std::sqrt(mass);
  }
  return env;
}

Envelope Envelope::tabulated(std::vector<double> times, std::vector<double> values) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw InvalidParameter("tabulated envelope needs >= 2 (t, f) samples of equal length");
  }
  if (times.front() < 0.0) {
    throw InvalidParameter("tabulated envelope times must be >= 0");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw InvalidParameter("tabulated envelope times must be strictly increasing");
    }
  }
  // Exact integral of the squared linear interpolant.
  double mass = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double a = values[i - 1];
    const double b = values[i];
    mass += (times[i] - times[i - 1]) * (a * a + a * b + b * b) / 3.0;
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw InvalidParameter("tabulated envelope has zero or non-finite energy");
  }
  Envelope env;
  env.kind_ = DriveKind::Tabulated;
  env.norm_ = 1.0 / std::sqrt(mass);
  env.support_begin_ = times.front();
  env.support_end_ = times.back();
  env.times_ = std::move(times);
  env.values_ = std::move(values);
  return env;
}

Envelope Envelope::from_drive(const DriveSpec& drive) {
  switch (drive.kind()) {
    case DriveKind::Exponential:
      return exponential(std::get<ExponentialPulse>(drive.shape).kappa);
    case DriveKind::Gaussian: {
      const auto& g = std::get<GaussianPulse>(drive.shape);
      return gaussian(g.sigma, g.t0, g.printed_prefactor);
    }
    case DriveKind::Tabulated: {
      const auto& tab = std::get<TabulatedPulse>(drive.shape);
      return tabulated(tab.times, tab.values);
    }
    case DriveKind::Continuous:
      break;
  }
  throw InvalidParameter("a continuous drive has no envelope");
}

double Envelope::peak_time() const {
  switch (kind_) {
    case DriveKind::Exponential: return 0.0;
    case DriveKind::Gaussian: return t0_;
    default: {
      const auto it = std::max_element(values_.begin(), values_.end(),
                                       [](double a, double b) { return std::abs(a) < std::abs(b); });
      return times_[static_cast<std::size_t>(it - values_.begin())];
    }
  }
}

double Envelope::raw(double t) const {
  if (t < 0.0) {
    return 0.0;
  }
  switch (kind_) {
    case DriveKind::Exponential:
      return std::sqrt(rate_) * std::exp(-0.5 * rate_ * t);
    case DriveKind::Gaussian:
      return raw_gaussian(rate_, t0_, t);
    case DriveKind::Tabulated: {
      if (t < times_.front() || t > times_.back()) {
        return 0.0;
      }
      const auto upper = std::upper_bound(times_.begin(), times_.end(), t);
      if (upper == times_.end()) {
        return values_.back();
      }
      const auto i = static_cast<std::size_t>(upper - times_.begin());
      const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
      return values_[i - 1] + w * (values_[i] - values_[i - 1]);
    }
    case DriveKind::Continuous:
      break;
  }
  return 0.0;
}

double Envelope::operator()(double t) const { return norm_ * raw(t); }

double Envelope::squared_integral() const {
  auto sq = [this](double t) {
    const double f = (*this)(t);
    return f * f;
  };
  if (kind_ == DriveKind::Tabulated) {
    // Integrate panel by panel so the kinks sit on panel edges.
    double total = 0.0;
    for (std::size_t i = 1; i < times_.size(); ++i) {
      total += gauss_legendre(sq, times_[i - 1], times_[i], 1);
    }
    return total;
  }
  return gauss_legendre(sq, support_begin_, support_end_, 2000);
}

TabulatedPulse read_tabulated_csv(std::istream& in) {
  TabulatedPulse tab;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double t = 0.0;
    double f = 0.0;
    if (!(fields >> t >> f)) {
      if (tab.times.empty() && line_no == 1) {
        continue;  // header
      }
      throw InvalidParameter("malformed envelope CSV at line " + std::to_string(line_no));
    }
    tab.times.push_back(t);
    tab.values.push_back(f);
  }
  return tab;
}

TabulatedPulse read_tabulated_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidParameter("cannot open envelope file " + path.string());
  }
  return read_tabulated_csv(in);
}

}  // namespace jpm
