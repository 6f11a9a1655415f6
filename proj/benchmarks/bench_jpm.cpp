#include <benchmark/benchmark.h>

#include "jpm/analytic.hpp"
#include "jpm/meanfield.hpp"
#include "jpm/rate.hpp"
#include "jpm/sweep.hpp"

namespace {

jpm::DetectorParams detector() {
  jpm::DetectorParams p;
  p.gamma_tl = 1.0;
  p.gamma_1 = 1.0;
  return p;
}

void BM_MeanfieldContinuous(benchmark::State& state) {
  const auto p = detector();
  const auto d = jpm::DriveSpec::continuous(static_cast<double>(state.range(0)) * 1e-2, p.omega_0);
  jpm::IntegratorConfig c;
  c.t_end = 50.0;
  c.samples = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jpm::integrate(p, d, c).final_state().pm);
  }
}
BENCHMARK(BM_MeanfieldContinuous)->Arg(1)->Arg(100)->Arg(1000);

void BM_MeanfieldExponential(benchmark::State& state) {
  const auto p = detector();
  const auto d = jpm::DriveSpec::exponential(0.2, 2.0, p.omega_0);
  jpm::IntegratorConfig c;
  c.samples = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jpm::integrate(p, d, c).final_state().pm);
  }
}
BENCHMARK(BM_MeanfieldExponential);

void BM_ClosedForm(benchmark::State& state) {
  const auto p = detector();
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(jpm::closed_form_p1_pm(p, 0.5, t));
  }
}
BENCHMARK(BM_ClosedForm);

void BM_Efficiency(benchmark::State& state) {
  auto p = detector();
  p.gamma_0 = 0.01;
  p.gamma_res = 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jpm::efficiency(p));
  }
}
BENCHMARK(BM_Efficiency);

void BM_Poles(benchmark::State& state) {
  const auto p = detector();
  for (auto _ : state) {
    benchmark::DoNotOptimize(jpm::continuous_pm_poles(p, 0.3));
  }
}
BENCHMARK(BM_Poles);

void BM_ExpSeries(benchmark::State& state) {
  const auto p = detector();
  for (auto _ : state) {
    benchmark::DoNotOptimize(jpm::exp_pulse_steady_state(p, 0.05, 5.0, 8).value);
  }
}
BENCHMARK(BM_ExpSeries);

void BM_Sweep(benchmark::State& state) {
  jpm::SweepSpec s;
  s.params = detector();
  s.drive = jpm::DriveSpec::continuous(0.01, s.params.omega_0);
  s.axis1.param = jpm::SweepParam::GammaTl;
  s.axis1.min = 0.1;
  s.axis1.max = 10.0;
  s.axis1.points = static_cast<std::size_t>(state.range(0));
  s.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jpm::run_sweep(s).values.data());
  }
}
BENCHMARK(BM_Sweep)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_OptimizeGammaTl(benchmark::State& state) {
  const auto p = detector();
  const auto d = jpm::DriveSpec::continuous(jpm::alpha_sq_for_photons(5.0, p.omega_0, 10.0), p.omega_0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jpm::optimize_gamma_tl(d, p, 10.0).x);
  }
}
BENCHMARK(BM_OptimizeGammaTl)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
