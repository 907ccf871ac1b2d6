#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "ctqw/spectrum.hpp"

namespace ctqw {

using StateVector = Eigen::VectorXcd;

/// Search Hamiltonian H = gamma L - |w><w| for one (network, target) pair,
/// carried through its grouped Laplacian spectrum at the target site.
struct SearchConfig {
  double gamma = 0.0;
  int target = 0;
  GroupedSpectrum grouped;

  int n_sites() const { return grouped.n_sites; }
};

struct SpectralFunctionValue {
  double f = 0.0;
  double fprime = 0.0;
};

/// Resolvent diagonal F(E) = sum_m W_m / (gamma Lambda_m - E) over the
/// weighted groups, together with F'(E) > 0. E must stay clear of the
/// weighted poles (relative distance 1e-12).
SpectralFunctionValue spectral_function(double energy, const SearchConfig& cfg);

/// One Hamiltonian level E with F(E) = 1, its F'(E), and its overlaps
/// |<s|psi>|^2 = 1/(N E^2 F'(E)) and |<w|psi>|^2 = 1/F'(E).
struct SearchLevel {
  double energy = 0.0;
  double fprime = 0.0;
  double s_overlap = 0.0;
  double w_overlap = 0.0;
};

/// Hamiltonian eigenvalue inherited unchanged from a degenerate Laplacian
/// group; carries zero amplitude at the target.
struct SilentLevel {
  double energy = 0.0;
  int multiplicity = 0;
};

struct SearchLevels {
  std::vector<SearchLevel> levels;  // sorted by energy, one per weighted pole
  std::vector<SilentLevel> silent;

  double e0() const { return levels.front().energy; }
  double e1() const { return levels[1].energy; }
  double gap() const { return e1() - e0(); }
  int total_level_count() const;
};

/// Finds every root of F(E) = 1. Roots strictly interlace the weighted
/// poles gamma Lambda_m: one below the lowest pole (the ground level
/// E_0 < 0) and one in each open interval between consecutive poles.
/// Bisection inside each bracket, then one guarded Newton polish.
SearchLevels solve_levels(const SearchConfig& cfg);

/// Transition amplitude <w| e^{iHt} |s> from the solved levels:
///   -(1/sqrt(N)) sum_i e^{i E_i t} / (E_i F'(E_i)).
/// Silent levels contribute nothing.
std::complex<double> amplitude_spectral(const SearchConfig& cfg,
                                        const SearchLevels& levels, double t);

/// Dense-diagonalization route: builds H = gamma L - |w><w|, diagonalizes
/// once, and evaluates amplitudes and evolved states exactly. Independent
/// oracle for amplitude_spectral.
struct DirectEvolver {
  Eigen::VectorXd energies;
  Eigen::MatrixXd states;     // columns are H eigenvectors
  Eigen::VectorXd s_overlap;  // <psi_i|s>
  Eigen::VectorXd w_overlap;  // <w|psi_i>
  int n_sites = 0;
  int target = 0;

  std::complex<double> amplitude(double t) const;  // <w| e^{iHt} |s>
  StateVector evolve(double t) const;              // e^{iHt} |s>
};

DirectEvolver make_direct_evolver(const Eigen::MatrixXd& lap, double gamma,
                                  int target,
                                  int dense_limit = kDefaultDenseLimit);

/// One-shot convenience wrapper around DirectEvolver.
std::complex<double> amplitude_direct(const Eigen::MatrixXd& lap,
                                      const SearchConfig& cfg, double t);

struct OptimalPoint {
  double t_opt = 0.0;
  double p_opt = 0.0;
  bool found = false;
  std::string diagnostic;
};

/// First local maximum of the transition probability |<w|e^{iHt}|s>|^2:
/// coarse scan with step 1/(50 (E_1 - E_0)) up to t_max (default
/// 4 pi / (E_1 - E_0)), ignoring maxima below probability 1e-6, then
/// golden-section refinement.
OptimalPoint find_t_opt(const SearchConfig& cfg, const SearchLevels& levels,
                        double t_max = 0.0);

struct SweepPoint {
  double gamma = 0.0;
  double ground_overlap = 0.0;  // |<s|psi_0>|^2
  double first_overlap = 0.0;   // |<s|psi_1>|^2
  double gap = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double predictor_gamma = 0.0;  // gamma_c = I_1
  double crossing_gamma = 0.0;   // NaN when absent
  bool has_crossing = false;
  std::string diagnostic;
};

/// Logarithmic gamma grid, points_per_decade per decade, spanning
/// [center/10^decades, center*10^decades] with the center included.
std::vector<double> default_gamma_grid(double center, int points_per_decade = 40,
                                       double decades = 1.0);

/// Ground/first-excited overlap curves versus gamma. The empirical
/// critical point is the crossing |<s|psi_0>|^2 = |<s|psi_1>|^2, located
/// by linear interpolation in log(gamma) between grid neighbours; the
/// predictor gamma_c = I_1 is reported alongside.
SweepResult gamma_sweep(const GroupedSpectrum& grouped, double predictor_gamma,
                        const std::vector<double>& gammas);

/// Convenience overload: decomposes the network itself (dense route).
SweepResult gamma_sweep(const Network& net, int target,
                        const std::vector<double>& gammas,
                        int dense_limit = kDefaultDenseLimit);

/// Two-level closed-form prediction for the d_s > 4 regime:
///   E_{0,1} = -/+ I_1 / sqrt(N I_2),
///   Pi(t) = (I_1^2/I_2) sin^2(Omega t) with Omega = I_1 / sqrt(N I_2).
struct TwoLevelSolution {
  double e0_pred = 0.0;
  double e1_pred = 0.0;
  double omega = 0.0;      // Rabi angular frequency of the amplitude
  double period = 0.0;     // of the probability, pi / omega
  double amplitude = 0.0;  // peak probability I_1^2/I_2, capped at 1
  double t_opt = 0.0;      // pi / (2 omega)
  double p_opt = 0.0;
  double ds = 0.0;              // NaN when not provided
  bool regime_consistent = true;  // ds > 4 (or unknown)
};

TwoLevelSolution two_level_predict(double i1, double i2, double n_sites,
                                   double ds = std::nan(""));

/// Dimensionless level constants of the 2 < d_s < 4 regime, extracted from
/// solved levels at gamma = gamma_c: e_{0,1} = E_{0,1} / (gamma lambda_1),
/// with e_0 < 0 < e_1 < 1. Carries the regime's predicted bound exponents
/// p_opt ~ N^{1-4/ds} and t_opt/p_opt ~ N^{2/ds}; lambda_amplitude holds a
/// fitted prefactor of lambda_1 ~ Lambda N^{-2/ds} when one is available
/// from a size series.
struct SubGroverSolution {
  double e0 = 0.0;
  double e1 = 0.0;
  double lambda1 = 0.0;
  double lambda_amplitude = 0.0;  // NaN unless fitted externally
  double p_opt_exponent = 0.0;    // 1 - 4/ds
  double runtime_exponent = 0.0;  // 2/ds
  double ds = 0.0;
};

SubGroverSolution sub_grover_solve(const SearchConfig& cfg,
                                   const SearchLevels& levels, double ds,
                                   double fitted_lambda = std::nan(""));

}  // namespace ctqw
