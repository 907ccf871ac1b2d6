#include "ctqw/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ctqw {

namespace {

void check_dense_limit(Eigen::Index n, int dense_limit) {
  if (n > dense_limit)
    throw std::invalid_argument("dense eigendecomposition guard exceeded: N=" +
                                std::to_string(n) + " > " +
                                std::to_string(dense_limit));
}

void check_kernel(const Eigen::VectorXd& evals) {
  const double lmax = evals[evals.size() - 1];
  if (std::abs(evals[0]) > 1e-10 * std::max(lmax, 1.0))
    throw std::runtime_error("spectrum: lowest eigenvalue " +
                             std::to_string(evals[0]) +
                             " is not a numerical zero (disconnected input?)");
  if (evals.size() > 1 && evals[1] <= std::abs(evals[0]))
    throw std::runtime_error("spectrum: Laplacian kernel is not one-dimensional");
}

}  // namespace

LaplacianSpectrum eigendecompose(const Eigen::MatrixXd& lap, int dense_limit) {
  check_dense_limit(lap.rows(), dense_limit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed to converge");
  LaplacianSpectrum spec;
  spec.eigenvalues = solver.eigenvalues();
  spec.eigenvectors = solver.eigenvectors();
  check_kernel(spec.eigenvalues);
  return spec;
}

LaplacianSpectrum eigendecompose(const Eigen::SparseMatrix<double>& lap,
                                 int dense_limit) {
  check_dense_limit(lap.rows(), dense_limit);
  return eigendecompose(Eigen::MatrixXd(lap), dense_limit);
}

Eigen::VectorXd eigenvalues_only(const Eigen::MatrixXd& lap, int dense_limit) {
  check_dense_limit(lap.rows(), dense_limit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed to converge");
  check_kernel(solver.eigenvalues());
  return solver.eigenvalues();
}

LaplacianSpectrum lattice_spectrum_analytic(const std::vector<int>& sides) {
  if (sides.empty())
    throw std::invalid_argument("lattice spectrum needs at least one axis");
  long n = 1;
  for (int s : sides) {
    if (s < 3)
      throw std::invalid_argument(
          "analytic lattice spectrum requires periodic sides >= 3");
    n *= s;
  }
  std::vector<double> evals;
  evals.reserve(n);
  evals.push_back(0.0);
  const int d = static_cast<int>(sides.size());
  std::vector<int> k(d, 0);
  // walk all mode vectors, updating the eigenvalue sum incrementally
  std::vector<double> axis_term(d, 0.0);
  double sum = 0.0;
  for (long mode = 1; mode < n; ++mode) {
    for (int a = 0; a < d; ++a) {
      if (++k[a] < sides[a]) {
        sum -= axis_term[a];
        axis_term[a] = 2.0 - 2.0 * std::cos(2.0 * M_PI * k[a] / sides[a]);
        sum += axis_term[a];
        break;
      }
      k[a] = 0;
      sum -= axis_term[a];
      axis_term[a] = 0.0;
    }
    evals.push_back(sum);
  }
  std::sort(evals.begin(), evals.end());
  LaplacianSpectrum spec;
  spec.eigenvalues = Eigen::Map<Eigen::VectorXd>(evals.data(), evals.size());
  spec.analytic = true;
  return spec;
}

LaplacianSpectrum complete_spectrum_analytic(int n) {
  if (n < 2) throw std::invalid_argument("complete graph requires n >= 2");
  LaplacianSpectrum spec;
  spec.eigenvalues = Eigen::VectorXd::Constant(n, static_cast<double>(n));
  spec.eigenvalues[0] = 0.0;
  spec.analytic = true;
  return spec;
}

int GroupedSpectrum::weighted_count() const {
  int count = 0;
  for (const auto& grp : groups)
    if (is_weighted(grp)) ++count;
  return count;
}

double GroupedSpectrum::total_weight() const {
  double sum = 0.0;
  for (const auto& grp : groups) sum += grp.weight;
  return sum;
}

GroupedSpectrum group_by_target(const LaplacianSpectrum& spec, int target,
                                double tol) {
  const int n = spec.n();
  if (target < 0 || target >= n)
    throw std::invalid_argument("group_by_target: target site out of range");
  if (!spec.analytic && !spec.has_eigenvectors())
    throw std::invalid_argument(
        "group_by_target: eigenvectors required unless the spectrum is analytic");

  GroupedSpectrum grouped;
  grouped.n_sites = n;
  grouped.target = target;
  const double gap_tol = tol * std::max(spec.lambda_max(), 1e-300);

  int start = 0;
  double value_sum = 0.0, weight = 0.0;
  auto flush = [&](int end) {
    SpectralGroup grp;
    grp.multiplicity = end - start;
    grp.value = value_sum / grp.multiplicity;
    grp.weight = weight;
    // the kernel group is exactly zero on a connected graph
    if (std::abs(grp.value) <= gap_tol) grp.value = 0.0;
    grouped.groups.push_back(grp);
  };
  for (int i = 0; i < n; ++i) {
    if (i > start && spec.eigenvalues[i] - spec.eigenvalues[i - 1] >= gap_tol) {
      flush(i);
      start = i;
      value_sum = 0.0;
      weight = 0.0;
    }
    value_sum += spec.eigenvalues[i];
    weight += spec.analytic ? 1.0 / n
                            : spec.eigenvectors(target, i) * spec.eigenvectors(target, i);
  }
  flush(n);
  return grouped;
}

ZetaValue zeta_spectral(const LaplacianSpectrum& spec, int j) {
  if (j < 1) throw std::invalid_argument("zeta_spectral requires j >= 1");
  const int n = spec.n();
  long double sum = 0.0L;
  for (int i = 1; i < n; ++i) {
    const long double lam = spec.eigenvalues[i];
    long double term = 1.0L / lam;
    for (int p = 1; p < j; ++p) term /= lam;
    sum += term;
  }
  ZetaValue out;
  out.j = j;
  out.value = static_cast<double>(sum / n);
  out.route = ZetaRoute::SpectralSum;
  out.residual = 0.0;
  return out;
}

DsEstimate spectral_dimension_estimate(const LaplacianSpectrum& spec) {
  const int n = spec.n();
  if (n < 100)
    throw std::invalid_argument(
        "spectral_dimension_estimate requires N >= 100 for a fit window");
  const int n_nonzero = n - 1;
  const int window = std::max(8, n_nonzero / 10);
  const double run_tol = 1e-8 * std::max(spec.lambda_max(), 1e-300);

  // one point per eigenvalue in the window, so degenerate values carry
  // their multiplicity; ties take the midrank of their run
  std::vector<double> log_lambda, log_count;
  int distinct = 0;
  for (int i = 1; i <= window;) {
    int run_end = i;
    while (run_end < n - 1 &&
           spec.eigenvalues[run_end + 1] - spec.eigenvalues[run_end] < run_tol)
      ++run_end;
    ++distinct;
    const double midrank = 0.5 * (i + run_end);
    for (int t = i; t <= std::min(run_end, window); ++t) {
      log_lambda.push_back(std::log(spec.eigenvalues[t]));
      log_count.push_back(std::log(midrank));
    }
    i = run_end + 1;
  }
  const int m = static_cast<int>(log_lambda.size());
  if (distinct < 8)
    throw std::runtime_error(
        "spectral_dimension_estimate: fewer than 8 distinct eigenvalues in the "
        "fit window");

  double sx = 0, sy = 0;
  for (int i = 0; i < m; ++i) {
    sx += log_lambda[i];
    sy += log_count[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    sxx += (log_lambda[i] - mx) * (log_lambda[i] - mx);
    sxy += (log_lambda[i] - mx) * (log_count[i] - my);
  }
  const double slope = sxy / sxx;
  double ss_res = 0;
  for (int i = 0; i < m; ++i) {
    const double r = log_count[i] - my - slope * (log_lambda[i] - mx);
    ss_res += r * r;
  }
  DsEstimate est;
  est.value = 2.0 * slope;
  est.std_error = 2.0 * std::sqrt(ss_res / std::max(1, m - 2) / sxx);
  est.n_points = m;
  return est;
}

}  // namespace ctqw
