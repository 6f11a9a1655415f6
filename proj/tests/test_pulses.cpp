#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "jpm/pulses.hpp"
#include "oracles.hpp"

using namespace jpm;

namespace {

double squared_norm(const Envelope& env) {
  return oracle::simpson([&](double t) { return env(t) * env(t); }, env.support_begin(),
                         env.support_end(), 1e-13, 256);
}

}  // namespace

TEST_CASE("exponential envelope values") {
  CHECK(Envelope::exponential(1.0)(0.0) == doctest::Approx(1.0));
  CHECK(Envelope::exponential(4.0)(0.0) == doctest::Approx(2.0));
  CHECK(Envelope::exponential(4.0)(0.5) == doctest::Approx(2.0 * std::exp(-1.0)));
  CHECK(Envelope::exponential(2.0)(0.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(Envelope::exponential(2.0)(1e3) < 1e-300);
  CHECK(Envelope::exponential(2.0)(-1.0) == 0.0);
  CHECK(Envelope::exponential(0.3).support_end() == doctest::Approx(40.0 / 0.3));
  CHECK_THROWS_AS(Envelope::exponential(0.0), InvalidParameter);
  CHECK_THROWS_AS(Envelope::exponential(-1.0), InvalidParameter);
}

TEST_CASE("exponential envelope is normalized by construction") {
  const Envelope env = Envelope::exponential(0.3);
  CHECK(env.norm_constant() == 1.0);
  CHECK(std::abs(squared_norm(env) - 1.0) < 1e-6);
}

TEST_CASE("printed Gaussian prefactor carries a 2 pi excess") {
  const Envelope lit = Envelope::gaussian(1.0, 6.0, true);
  CHECK(squared_norm(lit) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-8));
  const Envelope env = Envelope::gaussian(1.0, 6.0);
  CHECK(env.norm_constant() == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-10));
  CHECK(std::abs(squared_norm(env) - 1.0) < 1e-6);
}

TEST_CASE("Gaussian envelope shape") {
  const double sigma = 1.0;
  const Envelope env = Envelope::gaussian(sigma, 6.0);
  CHECK(env(6.0 + 1.0 / sigma) == doctest::Approx(env(6.0 - 1.0 / sigma)).epsilon(1e-14));
  CHECK(env(6.0) == doctest::Approx(env.norm_constant() * std::pow(8.0 * std::numbers::pi, 0.25)));
  CHECK(env.peak_time() == 6.0);
  CHECK(env.support_begin() == doctest::Approx(6.0 - 6.0 / std::sqrt(2.0)));
  CHECK(env.support_end() == doctest::Approx(6.0 + 6.0 / std::sqrt(2.0)));
}

TEST_CASE("Gaussian default centre keeps t = 0 negligible") {
  for (double sigma : {0.01, 0.1, 1.0, 10.0}) {
    const Envelope env = Envelope::gaussian(sigma);
    CHECK(env.peak_time() == doctest::Approx(6.0 / (sigma * std::sqrt(2.0))));
    CHECK(env(0.0) < 1e-7 * env(env.peak_time()));
    CHECK(env.support_begin() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("Gaussian rejects bad parameters") {
  CHECK_THROWS_AS(Envelope::gaussian(0.0), InvalidParameter);
  CHECK_THROWS_AS(Envelope::gaussian(-2.0), InvalidParameter);
  CHECK_THROWS_AS(Envelope::gaussian(1.0, 1.0), InvalidParameter);
}

TEST_CASE("normalization holds across a log grid of shape parameters") {
  for (int i = 0; i <= 12; ++i) {
    const double rate = 0.01 * std::pow(1000.0, i / 12.0);
    CAPTURE(rate);
    CHECK(std::abs(squared_norm(Envelope::exponential(rate)) - 1.0) < 1e-6);
    CHECK(std::abs(squared_norm(Envelope::gaussian(rate)) - 1.0) < 1e-6);
    CHECK(std::abs(Envelope::gaussian(rate).squared_integral() - 1.0) < 1e-6);
  }
}

TEST_CASE("built-in envelopes are monotone away from the peak") {
  const Envelope e = Envelope::exponential(0.7);
  const Envelope g = Envelope::gaussian(0.7);
  for (int i = 1; i < 400; ++i) {
    const double t = 0.05 * i;
    CHECK(e(t) < e(t - 0.05));
    const double dt = 0.01 * i;
    CHECK(g(g.peak_time() + dt) < g(g.peak_time() + dt - 0.01));
    CHECK(g(g.peak_time() - dt) < g(g.peak_time() - dt + 0.01));
  }
}

TEST_CASE("tabulated envelope interpolates and renormalizes") {
  const Envelope env = Envelope::tabulated({1.0, 2.0, 3.0}, {0.0, 2.0, 0.0});
  // Squared triangle of height 2 over two unit panels: 2 * 4/3.
  const double c = 1.0 / std::sqrt(8.0 / 3.0);
  CHECK(env.norm_constant() == doctest::Approx(c));
  CHECK(env(1.5) == doctest::Approx(c));
  CHECK(env(2.0) == doctest::Approx(2.0 * c));
  CHECK(env(0.5) == 0.0);
  CHECK(env(3.5) == 0.0);
  CHECK(env.peak_time() == 2.0);
  CHECK(env.squared_integral() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(Envelope::tabulated({0.0, 0.0}, {1.0, 1.0}), InvalidParameter);
  CHECK_THROWS_AS(Envelope::tabulated({0.0}, {1.0}), InvalidParameter);
  CHECK_THROWS_AS(Envelope::tabulated({0.0, 1.0}, {0.0, 0.0}), InvalidParameter);
  CHECK_THROWS_AS(Envelope::tabulated({-1.0, 1.0}, {1.0, 1.0}), InvalidParameter);
}

TEST_CASE("tabulated envelope CSV reader") {
  std::istringstream in("t,f\n# comment\n0, 0\n1 1\n\n2,0\n");
  const TabulatedPulse tab = read_tabulated_csv(in);
  REQUIRE(tab.times.size() == 3);
  CHECK(tab.times[1] == 1.0);
  CHECK(tab.values[1] == 1.0);
  std::istringstream bad("0,0\nx,y\n");
  CHECK_THROWS_AS(read_tabulated_csv(bad), InvalidParameter);
  CHECK_THROWS_AS(read_tabulated_csv(std::filesystem::path("/nonexistent/envelope.csv")), InvalidParameter);
}

TEST_CASE("envelope of a drive spec") {
  CHECK(Envelope::from_drive(DriveSpec::exponential(1, 2, 1)).kind() == DriveKind::Exponential);
  CHECK_THROWS_AS(Envelope::from_drive(DriveSpec::continuous(1, 1)), InvalidParameter);
}
