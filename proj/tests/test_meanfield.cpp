#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "jpm/analytic.hpp"
#include "jpm/meanfield.hpp"
#include "jpm/pulses.hpp"
#include "oracles.hpp"

using namespace jpm;

namespace {

DetectorParams detector(double gtl, double g1) {
  DetectorParams p;
  p.gamma_tl = gtl;
  p.gamma_1 = g1;
  return p;
}

double alpha_for_rabi(const DetectorParams& p, double wr) {
  return wr * wr * std::numbers::pi / (2.0 * p.gamma_tl * p.omega_0);
}

Trajectory run_continuous(const DetectorParams& p, double alpha_sq, double t_end, std::size_t samples) {
  IntegratorConfig c;
  c.t_end = t_end;
  c.samples = samples;
  return integrate(p, DriveSpec::continuous(alpha_sq, p.omega_0), c);
}

void check_invariants(const Trajectory& tr) {
  double prev_pm = 0.0;
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const auto& s = tr.states[i];
    CHECK(within_simplex(s));
    CHECK(std::abs(s.p0 + s.p1 + s.pm - 1.0) < 1e-6);
    // Nondecreasing up to the integrator's absolute tolerance.
    CHECK(s.pm >= prev_pm - 1e-10);
    prev_pm = s.pm;
    if (i > 0) {
      CHECK(tr.times[i] > tr.times[i - 1]);
    }
  }
}

}  // namespace

TEST_CASE("Rabi frequency") {
  DetectorParams p = detector(1.0, 1.0);
  p.omega_0 = 1.0;
  CHECK(rabi_frequency(p, DriveSpec::continuous(0.0, 1.0)) == 0.0);
  CHECK(rabi_frequency(p, DriveSpec::continuous(std::numbers::pi / 2, 1.0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(rabi_frequency(p, DriveSpec::exponential(1.0, 1.0, 1.0)), InvalidParameter);

  const double kappa = 5.0;
  const double a2 = 0.3;
  const DriveSpec pulse = DriveSpec::exponential(a2, kappa, 1.0);
  CHECK(rabi_frequency_t(p, pulse, 0.0) ==
        doctest::Approx(std::sqrt(2.0 * a2 * kappa * p.gamma_tl / std::numbers::pi)));
  CHECK(rabi_frequency_t(p, pulse, 1.0) ==
        doctest::Approx(std::sqrt(2.0 * a2 * kappa / std::numbers::pi) * std::exp(-kappa / 2)));
}

TEST_CASE("no drive leaves the detector in the ground state") {
  const Trajectory tr = run_continuous(detector(1, 1), 0.0, 20.0, 101);
  for (const auto& s : tr.states) {
    CHECK(s.pm == 0.0);
    CHECK(s.p0 == 1.0);
  }
}

TEST_CASE("continuous drive saturates the measurement probability") {
  const DetectorParams p = detector(0.7, 1.3);
  const Trajectory tr = run_continuous(p, 0.05, 200.0, 11);
  CHECK(tr.final_state().pm > 0.999);
  check_invariants(tr);
}

TEST_CASE("invariants hold for every drive kind") {
  const DetectorParams p = detector(1.0, 1.0);
  IntegratorConfig c;
  c.samples = 401;
  check_invariants(integrate(p, DriveSpec::exponential(2.0, 1.0, p.omega_0), c));
  check_invariants(integrate(p, DriveSpec::gaussian(3.0, 0.5, p.omega_0), c));
  DriveSpec tab;
  tab.shape = TabulatedPulse{{0.0, 1.0, 2.0, 4.0}, {0.0, 1.0, 1.0, 0.0}};
  tab.alpha_sq = 1.5;
  tab.omega_s = p.omega_0;
  check_invariants(integrate(p, tab, c));
  check_invariants(run_continuous(detector(0.2, 5.0), 3.0, 10.0, 401));
}

TEST_CASE("relaxation keeps probability conserved") {
  DetectorParams p = detector(1.0, 1.0);
  p.gamma_rel = 0.3;
  const Trajectory tr = run_continuous(p, 0.1, 30.0, 301);
  check_invariants(tr);
}

TEST_CASE("inadmissible inputs are rejected") {
  DetectorParams p = detector(1.0, 1.0);
  IntegratorConfig c;
  c.t_end = 1.0;
  p.gamma_0 = 0.01;
  CHECK_THROWS_AS(integrate(p, DriveSpec::continuous(0.1, p.omega_0), c), InvalidParameter);
  p.gamma_0 = 0.0;
  p.gamma_res = 1.0;
  CHECK_THROWS_AS(integrate(p, DriveSpec::continuous(0.1, p.omega_0), c), InvalidParameter);
  p.gamma_res = 0.0;
  CHECK_THROWS_AS(integrate(p, DriveSpec::continuous(0.1, p.omega_0 * 1.01), c), InvalidParameter);
  IntegratorConfig no_end;
  CHECK_THROWS_AS(integrate(p, DriveSpec::continuous(0.1, p.omega_0), no_end), InvalidParameter);
  IntegratorConfig bad_tol = c;
  bad_tol.rel_tol = 0.0;
  CHECK_THROWS(integrate(p, DriveSpec::continuous(0.1, p.omega_0), bad_tol));
}

TEST_CASE("a state outside the simplex is reported with its time") {
  const DetectorParams p = detector(1.0, 1.0);
  IntegratorConfig c;
  c.t_end = 1.0;
  const MeanFieldState bad{0.0, 1.5, -0.5, 0.0};
  try {
    integrate(p, DriveSpec::continuous(0.1, p.omega_0), c, bad);
    FAIL("expected an integration error");
  } catch (const IntegrationError& e) {
    CHECK(e.time() > 0.0);
    CHECK(std::string(e.what()).find("at t =") != std::string::npos);
  }
}

TEST_CASE("step-size underflow carries the failure time") {
  // y' = y^2 from y(0) = 1 blows up at t = 1.
  ode::Options opt;
  const double samples[] = {2.0};
  try {
    ode::integrate<1>([](double, const ode::Vec<1>& y) { return ode::Vec<1>{y[0] * y[0]}; },
                      ode::Vec<1>{1.0}, 0.0, samples, opt, [](double, const ode::Vec<1>&) {},
                      [](std::size_t, double, const ode::Vec<1>&) {});
    FAIL("expected an integration error");
  } catch (const IntegrationError& e) {
    CHECK(e.time() == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("RK4 converges at fourth order") {
  const DetectorParams p = detector(1.0, 1.0);
  const double a2 = alpha_for_rabi(p, 2.0);
  IntegratorConfig ref;
  ref.t_end = 10.0;
  ref.samples = 101;
  ref.rel_tol = 1e-13;
  ref.abs_tol = 1e-15;
  const Trajectory exact = integrate(p, DriveSpec::continuous(a2, p.omega_0), ref);
  auto max_err = [&](double h) {
    IntegratorConfig c = ref;
    c.method = ode::Method::Rk4;
    c.fixed_step = h;
    const Trajectory tr = integrate(p, DriveSpec::continuous(a2, p.omega_0), c);
    double e = 0.0;
    for (std::size_t i = 0; i < tr.states.size(); ++i) {
      e = std::max({e, std::abs(tr.states[i].pm - exact.states[i].pm),
                    std::abs(tr.states[i].p1 - exact.states[i].p1),
                    std::abs(tr.states[i].v - exact.states[i].v)});
    }
    return e;
  };
  const double coarse = max_err(0.1);
  const double fine = max_err(0.05);
  CHECK(fine < 1e-5);
  CHECK(coarse / fine >= 8.0);
}

TEST_CASE("strong drive shows Rabi oscillations before pm reaches one half") {
  const DetectorParams p = detector(1.0, 1.0);
  const Trajectory tr = run_continuous(p, alpha_for_rabi(p, 20.0), 5.0, 5001);
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < tr.states.size() && tr.states[i].pm < 0.5; ++i) {
    if (tr.states[i].p1 > tr.states[i - 1].p1 && tr.states[i].p1 >= tr.states[i + 1].p1) {
      ++maxima;
    }
  }
  CHECK(maxima >= 3);
}

TEST_CASE("reflection coefficient") {
  DetectorParams p = detector(1.0, 0.0);
  CHECK(reflection_coefficient(p, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(reflection_coefficient(p, 0.3, 0.3) == doctest::Approx(-1.0));
  CHECK(reflection_coefficient(p, 0.0, 1.0) == doctest::Approx(-3.0));
  p = detector(1.0, 1.0);
  const Trajectory tr = run_continuous(p, 0.1, 5.0, 11);
  const auto r = reflection_series(tr);
  REQUIRE(r.size() == tr.states.size());
  CHECK(r[0] == doctest::Approx(0.0));
  CHECK(r[5] == doctest::Approx(-1.0 + (tr.states[5].p0 - tr.states[5].p1)));
}

TEST_CASE("trajectory CSV") {
  const DetectorParams p = detector(1.0, 1.0);
  const Trajectory tr = run_continuous(p, 0.1, 1.0, 3);
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  const std::string s = os.str();
  CHECK(s.rfind("t,v,p0,p1,pm,R\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4);
}

TEST_CASE("explicit sample grid is honoured") {
  const DetectorParams p = detector(1.0, 1.0);
  IntegratorConfig c;
  c.times = {0.0, 0.25, 1.0, 3.0};
  const Trajectory tr = integrate(p, DriveSpec::continuous(0.1, p.omega_0), c);
  CHECK(tr.times == c.times);
  c.times = {0.0, 1.0, 1.0};
  CHECK_THROWS_AS(integrate(p, DriveSpec::continuous(0.1, p.omega_0), c), InvalidParameter);
}

TEST_CASE("pulse window defaults to the support plus a tunnelling tail") {
  const DetectorParams p = detector(1.0, 2.0);
  CHECK(default_t_end(p, DriveSpec::exponential(1.0, 4.0, p.omega_0)) == doctest::Approx(10.0 + 5.0));
  CHECK_THROWS_AS(default_t_end(p, DriveSpec::continuous(1.0, p.omega_0)), InvalidParameter);
}

TEST_CASE("weak exponential pulse matches the leading-order stationary value") {
  // Weak-drive limit of the pulsed dynamics: 2 alpha^2 gamma_tl gamma_1 / (pi gt (kappa + gt)).
  const DetectorParams p = detector(1.0, 1.0);
  const double a2 = 1e-4;
  const double kappa = 5.0;
  IntegratorConfig c;
  c.samples = 2;
  const double pm = integrate(p, DriveSpec::exponential(a2, kappa, p.omega_0), c).final_state().pm;
  const double gt = gamma_tilde(p);
  const double weak = 2.0 * a2 * p.gamma_tl * p.gamma_1 / (std::numbers::pi * gt * (kappa + gt));
  CHECK(pm == doctest::Approx(weak).epsilon(1e-4));
}

TEST_CASE("a very long Gaussian pulse acts like a continuous drive of matched flux") {
  // Flux is wR^2 / (4 gamma_tl) for both drives; match its integral up to t_m.
  const DetectorParams p = detector(1.0, 1.0);
  const double sigma = 1e-3;
  const double a2 = 0.2;
  const DriveSpec pulse = DriveSpec::gaussian(a2, sigma, p.omega_0);
  const double t_m = Envelope::gaussian(sigma).peak_time();
  IntegratorConfig c;
  c.t_end = t_m;
  c.samples = 2;
  const double pm_pulse = integrate(p, pulse, c).final_state().pm;
  const double rabi_sq = oracle::simpson(
      [&](double t) { return std::pow(rabi_frequency_t(p, pulse, t), 2); }, 0.0, t_m);
  const double a2_cont = rabi_sq / t_m * std::numbers::pi / (2.0 * p.gamma_tl * p.omega_0);
  const double pm_cont = integrate(p, DriveSpec::continuous(a2_cont, p.omega_0), c).final_state().pm;
  CHECK(pm_pulse > 0.01);
  CHECK(std::abs(pm_pulse - pm_cont) < 0.02 * pm_cont);
}

TEST_CASE("unit-normalized pulses deliver alpha_sq / 2 pi photons to the dynamics") {
  const DetectorParams p = detector(1.0, 1.0);
  const DriveSpec pulse = DriveSpec::exponential(0.3, 2.0, p.omega_0);
  const Envelope env = Envelope::from_drive(pulse);
  const double flux_integral = oracle::simpson(
      [&](double t) { return std::pow(rabi_frequency_t(p, pulse, t), 2) / (4.0 * p.gamma_tl); }, 0.0,
      env.support_end());
  CHECK(flux_integral == doctest::Approx(0.3 / (2.0 * std::numbers::pi)).epsilon(1e-6));
  CHECK(photon_number(pulse, 0.0) == 0.3);
}
