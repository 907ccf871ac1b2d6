#pragma once

#include <string>
#include <vector>

#include "ctqw/network.hpp"
#include "ctqw/search.hpp"
#include "ctqw/spectrum.hpp"

namespace ctqw {

enum class Regime { Grover, Marginal, SubGrover, Low };

std::string regime_name(Regime r);

/// Runtime exponent of the 2 < d_s < 4 bound, 2/d_s. Evaluates to exactly
/// 1/2 at d_s = 4, matching the Grover-regime exponent at the boundary.
double sub_grover_runtime_exponent(double ds);

struct RegimeReport {
  double ds = 0.0;
  Regime regime = Regime::Grover;
  double runtime_exponent = 0.0;  // NaN for the Low regime
  bool log_correction = false;    // ln^{3/2} N factor at d_s = 4
  std::string note;
};

/// Regime by spectral dimension: Grover (d_s > 4, exponent 1/2), Marginal
/// (d_s = 4, exponent 1/2 with ln^{3/2} N), SubGrover (2 < d_s < 4,
/// exponent 2/d_s), Low (d_s <= 2, no speedup guarantee).
RegimeReport classify_regime(double ds);

enum class GammaProtocol { ZetaPredictor, SweepCrossing };
enum class TargetPolicy { Representative, ExplicitIndex };

struct SeriesProtocol {
  GammaProtocol gamma_protocol = GammaProtocol::ZetaPredictor;
  TargetPolicy target_policy = TargetPolicy::Representative;
  int explicit_target = 0;
  int dense_limit = kDefaultDenseLimit;
  double group_tol = kDefaultGroupTol;
};

struct SeriesRecord {
  long n_sites = 0;
  int size_param = 0;  // n, side length, or generation
  int target = 0;
  double ds_estimate = 0.0;  // NaN when the fit window is too small
  double ds_std_error = 0.0;
  double i1 = 0.0;
  double i2 = 0.0;
  double gamma_used = 0.0;
  double lambda1 = 0.0;
  double gap = 0.0;
  double t_opt = 0.0;
  double p_opt = 0.0;
  double runtime = 0.0;  // t_opt / p_opt
  bool ok = false;
  std::string message;
  std::string config_hash;
};

/// A family with everything fixed except the size parameter:
/// Complete -> site counts, Hypercubic -> side lengths (dim axes, periodic),
/// MkHierarchical -> generation counts (branch count b).
struct FamilyPlan {
  Family family = Family::Complete;
  int b = 0;
  int lattice_dim = 0;
  std::vector<int> size_params;
};

struct ScalingSeries {
  FamilyPlan plan;
  SeriesProtocol protocol;
  std::vector<SeriesRecord> records;  // sorted by N, one per size
};

/// Runs the per-size search pipeline: spectrum (analytic for complete and
/// periodic lattices, dense for MK), zeta values, gamma per protocol, level
/// solving, and the t_opt search. Per-size failures are recorded and the
/// series continues. Deterministic given the plan and protocol.
ScalingSeries run_series(const FamilyPlan& plan, const SeriesProtocol& protocol);

enum class SeriesQuantity { Gap, TOpt, POpt, Runtime, I1, I2, Lambda1 };

std::string quantity_name(SeriesQuantity q);
SeriesQuantity quantity_from_name(const std::string& name);

struct ScalingFit {
  double alpha = 0.0;  // slope of ln(quantity) vs ln(N)
  double std_error = 0.0;
  double amplitude = 0.0;  // exp(intercept); the Lambda prefactor for lambda_1
  int n_points = 0;
  std::string quantity;
};

/// Log-log least squares of a record quantity against N over the ok
/// records. Requires at least 3 usable sizes.
ScalingFit fit_exponent(const ScalingSeries& series, SeriesQuantity quantity);

/// Generic power-law fit y = c * x^alpha used by fit_exponent; exposed for
/// fitting quantities assembled outside a ScalingSeries.
ScalingFit fit_power_law(const std::vector<double>& x,
                         const std::vector<double>& y,
                         const std::string& quantity_label);

struct OverlapProfile {
  int level = 0;
  int site_count = 0;                // sites averaged over
  std::vector<double> mean_rescaled;  // per eigenvector index i: mean of N|<w|phi_i>|^2
};

/// Mean rescaled overlap N |<w|phi_i>|^2 versus eigenvector index i,
/// averaged over all sites w in the given hierarchy level. Requires
/// eigenvectors and a level-labelled network.
OverlapProfile overlap_profile(const Network& net, const LaplacianSpectrum& spec,
                               int level);

}  // namespace ctqw
