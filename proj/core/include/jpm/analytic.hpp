#pragma once

// Laplace-domain results for the mean-field model with gamma_0 = gamma_rel =
// gamma_res = 0.
//
// Continuous drive: Pm(s) = (gamma_1 w^2 / 2) / (s Q(s)) with
//   Q(s) = s^3 + (3 gt / 2) s^2 + (gt^2 / 2 + w^2) s + w^2 gamma_1 / 2,
// so pm(t) = 1 + sum over the roots r of Q of res(r) e^{r t}.
//
// Exponential pulse with Rabi frequency w e^{-lambda t}, lambda = kappa / 2:
//   pm(inf) = L - a1 * Int_0^inf e^{-2 lambda u} pm(u) du
// with L = w^2 / (4 lambda (lambda + gt/2)(1 + gamma_tl/gamma_1)) and
// a1 = (w^2/2)(1 + 4 lambda/gamma_1) / ((lambda + gt/2)(1 + gamma_tl/gamma_1)).
// Expanding pm(u) in its Taylor series at u = 0 gives an asymptotic series in
// 1/(2 lambda).

#include <complex>
#include <vector>

#include "jpm/core.hpp"

namespace jpm {

using Complex = std::complex<double>;

struct PoleSet {
  std::vector<Complex> poles;     // poles[0] == 0
  std::vector<Complex> residues;  // residues[0] == 1
  bool degenerate = false;        // repeated roots: residues are not valid
};

/// Poles and residues of Pm(s) for a continuous drive. Requires alpha_sq > 0
/// and gamma_1 > 0 so that the pole at the origin is simple.
PoleSet continuous_pm_poles(const DetectorParams& p, double alpha_sq);

/// Pm(s) evaluated from the nested rational form.
Complex laplace_pm(const DetectorParams& p, double alpha_sq, Complex s);

/// Sum of residue * e^{pole t}; the imaginary part is round-off only.
Complex reconstruct_pm(const PoleSet& poles, double t);

/// Rabi frequency at t = 0 of the exponential pulse, sqrt(2 alpha_sq kappa gamma_tl / pi).
double exp_pulse_rabi0(const DetectorParams& p, double alpha_sq, double kappa);

/// The leading term L.
double exp_pulse_leading(const DetectorParams& p, double alpha_sq, double kappa);

/// L (1 - w^2 / (16 lambda^2)).
double exp_pulse_fifth_order(const DetectorParams& p, double alpha_sq, double kappa);

/// The memory-kernel prefactor a1.
double exp_pulse_memory_residue(const DetectorParams& p, double alpha_sq, double kappa);

/// Taylor coefficients pm_l = pm^{(l)}(0) / l! for l = 0..order of the pulsed
/// mean-field solution from the ground state, by forward recursion.
std::vector<double> exp_pulse_pm_taylor(const DetectorParams& p, double alpha_sq, double kappa,
                                        int order);

struct SeriesResult {
  double value = 0.0;                // partial sum at the requested order
  std::vector<double> partial_sums;  // index l: terms 0..l included
  bool converged = true;
  int diverged_at = -1;              // first order flagged by the detector
};

inline constexpr int kDefaultSeriesOrder = 5;
inline constexpr int kMaxSeriesOrder = 12;
inline constexpr double kSeriesGrowthLimit = 3.0;

/// L - a1 * sum_{l<=order} l! pm_l (2 lambda)^{-(l+1)}, order in 1..12.
/// Divergence is flagged when a partial sum leaves [0, 1] or, once two
/// consecutive terms are nonzero, a term exceeds kSeriesGrowthLimit times the
/// previous one in magnitude.
SeriesResult exp_pulse_steady_state(const DetectorParams& p, double alpha_sq, double kappa,
                                    int order = kDefaultSeriesOrder);

}  // namespace jpm
