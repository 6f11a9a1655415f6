#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jpm/core.hpp"
#include "jpm/meanfield.hpp"

namespace jpm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIntegration = 3;

/// Runs the jpmsim command line in-process. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CompareResult {
  std::vector<double> times;
  std::vector<double> pm_meanfield;
  std::vector<double> pm_rate;
  double max_gap = 0.0;
  double mean_gap = 0.0;
  int crossings = 0;  // sign changes of the difference, ignoring |gap| <= 1e-9
};

/// Mean-field pm(t) against the closed-form rate-model pm(t) for a continuous
/// drive on a uniform grid over [0, t_end].
CompareResult compare_regimes(const DetectorParams& p, double alpha_sq, double t_end,
                              std::size_t samples, const IntegratorConfig& cfg = {});

}  // namespace jpm::cli
