#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>
#include <vector>

#include "ctqw/network.hpp"

namespace ctqw {

inline constexpr int kDefaultDenseLimit = 6000;
inline constexpr double kDefaultGroupTol = 1e-8;

/// Full Laplacian spectrum, eigenvalues sorted ascending with lambda_0 = 0.
/// Eigenvectors are column-per-eigenvalue and absent for spectra obtained
/// from closed forms (analytic = true), where every site overlap is exactly
/// 1/N by translation symmetry.
struct LaplacianSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // N x N or empty
  bool analytic = false;

  int n() const { return static_cast<int>(eigenvalues.size()); }
  bool has_eigenvectors() const { return eigenvectors.size() > 0; }
  double lambda_max() const { return eigenvalues[n() - 1]; }
  /// Smallest nonzero eigenvalue.
  double lambda1() const { return eigenvalues[1]; }
};

/// Dense eigendecomposition of a Laplacian. Guarded by dense_limit; throws
/// when the matrix is larger or the solver fails to converge.
LaplacianSpectrum eigendecompose(const Eigen::MatrixXd& lap,
                                 int dense_limit = kDefaultDenseLimit);
LaplacianSpectrum eigendecompose(const Eigen::SparseMatrix<double>& lap,
                                 int dense_limit = kDefaultDenseLimit);

/// Eigenvalues-only variant (no overlap information, not groupable).
Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& lap,
                                 int dense_limit = kDefaultDenseLimit);

/// Closed-form spectrum of a periodic hypercubic lattice from its Fourier
/// modes: lambda_k = sum_j (2 - 2 cos(2 pi k_j / L_j)). Overlaps are a
/// uniform 1/N for every mode.
LaplacianSpectrum lattice_spectrum_analytic(const std::vector<int>& sides);

/// Closed-form spectrum of the complete graph K_n: {0, n x (n-1)}.
/// Site overlaps are uniform (K_n is circulant).
LaplacianSpectrum complete_spectrum_analytic(int n);

/// One cluster of (near-)degenerate eigenvalues with the total overlap
/// weight it carries at the target site.
struct SpectralGroup {
  double value = 0.0;
  double weight = 0.0;
  int multiplicity = 0;
};

/// Spectrum clustered by degenerate eigenvalue for a fixed target site w.
/// Groups whose weight falls below weight_tol are "silent": they contribute
/// inert Hamiltonian levels with zero amplitude at w.
struct GroupedSpectrum {
  int n_sites = 0;
  int target = 0;
  double weight_tol = 1e-12;
  std::vector<SpectralGroup> groups;  // sorted by value, zero-weight included

  bool is_weighted(const SpectralGroup& grp) const {
    return grp.weight > weight_tol;
  }
  int weighted_count() const;
  double total_weight() const;
};

/// Clusters eigenvalues closer than tol * lambda_max and aggregates target
/// overlaps per cluster. Requires eigenvectors unless the spectrum is
/// analytic (then every weight is multiplicity/N).
GroupedSpectrum group_by_target(const LaplacianSpectrum& spec, int target,
                                double tol = kDefaultGroupTol);

enum class ZetaRoute { SpectralSum, LogDet };

struct ZetaValue {
  int j = 0;
  double value = 0.0;
  ZetaRoute route = ZetaRoute::SpectralSum;
  double residual = 0.0;  // extrapolation convergence estimate (LogDet route)
};

/// Spectral zeta function I_j = (1/N) sum_{i>=1} lambda_i^{-j}, zero mode
/// excluded.
ZetaValue zeta_spectral(const LaplacianSpectrum& spec, int j);

/// Same quantity via the Laplacian determinant:
///   I_j = (-1)^{j-1} / ((j-1)! N) * d^j/d eps^j ln[(1/eps) det(L + eps)]
/// evaluated at eps -> 0 by central finite differences on the schedule
/// eps in {1e-2, 1e-3, 1e-4} * lambda_1 with Richardson extrapolation.
/// Supports j in {1, 2}. Throws when the extrapolation does not settle.
ZetaValue zeta_logdet(const Eigen::MatrixXd& lap, int j);

struct DsEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int n_points = 0;
};

/// Spectral dimension from the integrated eigenvalue counting function:
/// fits N(lambda) ~ lambda^{ds/2} over the lowest 10% of the nonzero
/// spectrum by log-log least squares. Requires N >= 100 and at least 8
/// distinct eigenvalues in the fit window.
DsEstimate spectral_dimension_estimate(const LaplacianSpectrum& spec);

}  // namespace ctqw
