#include "ctqw/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "ctqw/parallel.hpp"

namespace ctqw {

namespace {

struct PoleSet {
  std::vector<double> position;  // gamma * Lambda_m, weighted groups only
  std::vector<double> weight;
};

PoleSet weighted_poles(const SearchConfig& cfg) {
  PoleSet poles;
  for (const auto& grp : cfg.grouped.groups) {
    if (!cfg.grouped.is_weighted(grp)) continue;
    poles.position.push_back(cfg.gamma * grp.value);
    poles.weight.push_back(grp.weight);
  }
  return poles;
}

// raw evaluation without the public pole-proximity check; the root solver
// legitimately works arbitrarily close to the poles
double f_raw(double energy, const PoleSet& poles) {
  double f = 0.0;
  for (size_t m = 0; m < poles.position.size(); ++m)
    f += poles.weight[m] / (poles.position[m] - energy);
  return f;
}

double fprime_raw(double energy, const PoleSet& poles) {
  double fp = 0.0;
  for (size_t m = 0; m < poles.position.size(); ++m) {
    const double d = poles.position[m] - energy;
    fp += poles.weight[m] / (d * d);
  }
  return fp;
}

void check_config(const SearchConfig& cfg) {
  if (!(cfg.gamma > 0.0))
    throw std::invalid_argument("search: gamma must be positive");
  if (cfg.target != cfg.grouped.target)
    throw std::invalid_argument(
        "search: grouped spectrum was built for a different target site");
  if (cfg.grouped.groups.empty())
    throw std::invalid_argument("search: empty grouped spectrum");
}

[[noreturn]] void bracket_failure(double lo, double hi) {
  std::ostringstream os;
  os << "solve_levels: bracket failure on interval [" << lo << ", " << hi << "]";
  throw std::runtime_error(os.str());
}

// F is strictly increasing between consecutive weighted poles, so plain
// bisection cannot miss; run it to floating-point exhaustion and finish
// with one guarded Newton step.
double bisect_root(const PoleSet& poles, double lo, double hi) {
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (f_raw(mid, poles) < 1.0)
      lo = mid;
    else
      hi = mid;
  }
  double root = std::abs(f_raw(lo, poles) - 1.0) <=
                        std::abs(f_raw(hi, poles) - 1.0)
                    ? lo
                    : hi;
  const double newton =
      root - (f_raw(root, poles) - 1.0) / fprime_raw(root, poles);
  if (newton > lo && newton < hi &&
      std::abs(f_raw(newton, poles) - 1.0) <
          std::abs(f_raw(root, poles) - 1.0))
    root = newton;
  return root;
}

}  // namespace

SpectralFunctionValue spectral_function(double energy, const SearchConfig& cfg) {
  check_config(cfg);
  const PoleSet poles = weighted_poles(cfg);
  const double scale =
      std::max(std::abs(poles.position.back()), std::abs(energy));
  for (size_t m = 0; m < poles.position.size(); ++m)
    if (std::abs(poles.position[m] - energy) <= 1e-12 * scale)
      throw std::runtime_error(
          "spectral_function: E coincides with weighted pole m=" +
          std::to_string(m) + " at " + std::to_string(poles.position[m]));
  return {f_raw(energy, poles), fprime_raw(energy, poles)};
}

int SearchLevels::total_level_count() const {
  int count = static_cast<int>(levels.size());
  for (const auto& s : silent) count += s.multiplicity;
  return count;
}

SearchLevels solve_levels(const SearchConfig& cfg) {
  check_config(cfg);
  const PoleSet poles = weighted_poles(cfg);
  const int n_poles = static_cast<int>(poles.position.size());
  if (n_poles < 2)
    throw std::runtime_error("solve_levels: need at least two weighted poles");
  const int n = cfg.n_sites();

  SearchLevels out;
  out.levels.reserve(n_poles);
  const double span =
      std::max(poles.position.back() - poles.position.front(), 1.0);

  // Step off a pole by at least a few ulps of its position; a relative
  // inset below one ulp would round back onto the pole. When even the ulp
  // inset leaves the bracket condition unmet, the root is closer to the
  // pole than double precision can resolve and the inset point itself is
  // the best available root (its overlap weight is negligibly small).
  auto step_off = [&](double pole, double gap, int direction,
                      bool want_below) -> std::pair<double, bool> {
    const double floor_inset =
        4.0 * std::numeric_limits<double>::epsilon() * std::abs(pole);
    double inset = std::max(1e-13 * gap, floor_inset);
    while (true) {
      const double point = pole + direction * inset;
      const double f = f_raw(point, poles);
      if (want_below ? (f < 1.0) : (f > 1.0)) return {point, true};
      if (inset <= floor_inset) return {point, false};
      inset = std::max(inset * 1e-2, floor_inset);
    }
  };

  for (int r = 0; r < n_poles; ++r) {
    double lo, hi;
    bool lo_ok = true, hi_ok = true;
    if (r == 0) {
      // ground level: F rises from 0+ to +inf on (-inf, p_0)
      std::tie(hi, hi_ok) = step_off(poles.position[0], span, -1, false);
      double width = span;
      lo = poles.position[0] - width;
      while (!(f_raw(lo, poles) < 1.0)) {
        width *= 2.0;
        lo = poles.position[0] - width;
        if (!std::isfinite(lo)) bracket_failure(lo, hi);
      }
    } else {
      const double gap = poles.position[r] - poles.position[r - 1];
      std::tie(lo, lo_ok) = step_off(poles.position[r - 1], gap, +1, true);
      std::tie(hi, hi_ok) = step_off(poles.position[r], gap, -1, false);
    }
    if (!lo_ok && !hi_ok) bracket_failure(lo, hi);

    SearchLevel level;
    if (lo_ok && hi_ok)
      level.energy = bisect_root(poles, lo, hi);
    else
      level.energy = lo_ok ? hi : lo;  // root pinned against one pole
    level.fprime = fprime_raw(level.energy, poles);
    level.s_overlap =
        1.0 / (n * level.energy * level.energy * level.fprime);
    level.w_overlap = 1.0 / level.fprime;
    out.levels.push_back(level);
  }

  for (const auto& grp : cfg.grouped.groups) {
    const int inert =
        cfg.grouped.is_weighted(grp) ? grp.multiplicity - 1 : grp.multiplicity;
    if (inert > 0)
      out.silent.push_back({cfg.gamma * grp.value, inert});
  }
  return out;
}

std::complex<double> amplitude_spectral(const SearchConfig& cfg,
                                        const SearchLevels& levels, double t) {
  std::complex<double> sum = 0.0;
  for (const auto& level : levels.levels)
    sum += std::polar(1.0, level.energy * t) / (level.energy * level.fprime);
  return -sum / std::sqrt(static_cast<double>(cfg.n_sites()));
}

std::complex<double> DirectEvolver::amplitude(double t) const {
  std::complex<double> sum = 0.0;
  for (int i = 0; i < n_sites; ++i)
    sum += w_overlap[i] * s_overlap[i] * std::polar(1.0, energies[i] * t);
  return sum;
}

StateVector DirectEvolver::evolve(double t) const {
  Eigen::VectorXcd phases(n_sites);
  for (int i = 0; i < n_sites; ++i)
    phases[i] = s_overlap[i] * std::polar(1.0, energies[i] * t);
  return states * phases;
}

DirectEvolver make_direct_evolver(const Eigen::MatrixXd& lap, double gamma,
                                  int target, int dense_limit) {
  const int n = static_cast<int>(lap.rows());
  if (n > dense_limit)
    throw std::invalid_argument("direct evolver: dense guard exceeded");
  if (target < 0 || target >= n)
    throw std::invalid_argument("direct evolver: target out of range");
  Eigen::MatrixXd h = gamma * lap;
  h(target, target) -= 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("direct evolver: eigensolver failed");
  DirectEvolver ev;
  ev.n_sites = n;
  ev.target = target;
  ev.energies = solver.eigenvalues();
  ev.states = solver.eigenvectors();
  ev.s_overlap = ev.states.colwise().sum().transpose() / std::sqrt(double(n));
  ev.w_overlap = ev.states.row(target).transpose();
  return ev;
}

std::complex<double> amplitude_direct(const Eigen::MatrixXd& lap,
                                      const SearchConfig& cfg, double t) {
  return make_direct_evolver(lap, cfg.gamma, cfg.target).amplitude(t);
}

OptimalPoint find_t_opt(const SearchConfig& cfg, const SearchLevels& levels,
                        double t_max) {
  const double gap = levels.gap();
  if (!(gap > 0.0))
    throw std::runtime_error("find_t_opt: non-positive level gap");
  if (t_max <= 0.0) t_max = 4.0 * M_PI / gap;
  const double step = 1.0 / (50.0 * gap);
  const int n_steps = std::max(4, static_cast<int>(std::ceil(t_max / step)));

  auto prob = [&](double t) {
    return std::norm(amplitude_spectral(cfg, levels, t));
  };
  std::vector<double> probs(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k) probs[k] = prob(k * step);

  constexpr double kFloor = 1e-6;
  for (int k = 1; k < n_steps; ++k) {
    if (probs[k] > probs[k - 1] && probs[k] >= probs[k + 1] &&
        probs[k] > kFloor) {
      double a = (k - 1) * step, b = (k + 1) * step;
      const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
      double c = b - invphi * (b - a), d = a + invphi * (b - a);
      double fc = prob(c), fd = prob(d);
      while (b - a > 1e-12 * std::max(1.0, b)) {
        if (fc > fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - invphi * (b - a);
          fc = prob(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + invphi * (b - a);
          fd = prob(d);
        }
      }
      OptimalPoint opt;
      opt.t_opt = 0.5 * (a + b);
      opt.p_opt = prob(opt.t_opt);
      opt.found = true;
      return opt;
    }
  }
  OptimalPoint opt;
  std::ostringstream os;
  os << "no local probability maximum above " << kFloor << " for t <= " << t_max;
  opt.diagnostic = os.str();
  return opt;
}

std::vector<double> default_gamma_grid(double center, int points_per_decade,
                                       double decades) {
  if (!(center > 0.0))
    throw std::invalid_argument("gamma grid: center must be positive");
  const int half = static_cast<int>(std::lround(points_per_decade * decades));
  std::vector<double> grid;
  grid.reserve(2 * half + 1);
  for (int i = -half; i <= half; ++i)
    grid.push_back(center *
                   std::pow(10.0, static_cast<double>(i) / points_per_decade));
  return grid;
}

SweepResult gamma_sweep(const GroupedSpectrum& grouped, double predictor_gamma,
                        const std::vector<double>& gammas) {
  SweepResult sweep;
  sweep.predictor_gamma = predictor_gamma;
  sweep.crossing_gamma = std::nan("");
  sweep.points.resize(gammas.size());
  parallel_for(static_cast<int>(gammas.size()), [&](int i) {
    SearchConfig cfg;
    cfg.gamma = gammas[i];
    cfg.target = grouped.target;
    cfg.grouped = grouped;
    const SearchLevels levels = solve_levels(cfg);
    sweep.points[i] = {gammas[i], levels.levels[0].s_overlap,
                       levels.levels[1].s_overlap, levels.gap()};
  });

  // |<s|psi_0>|^2 rises through |<s|psi_1>|^2 as gamma grows; locate the
  // sign change of the difference and interpolate linearly in log(gamma)
  for (size_t i = 0; i + 1 < sweep.points.size(); ++i) {
    const double d0 =
        sweep.points[i].ground_overlap - sweep.points[i].first_overlap;
    const double d1 =
        sweep.points[i + 1].ground_overlap - sweep.points[i + 1].first_overlap;
    if (d0 == 0.0) {
      sweep.crossing_gamma = sweep.points[i].gamma;
      sweep.has_crossing = true;
      break;
    }
    if (d0 < 0.0 && d1 >= 0.0) {
      const double x0 = std::log(sweep.points[i].gamma);
      const double x1 = std::log(sweep.points[i + 1].gamma);
      const double frac = d0 / (d0 - d1);
      sweep.crossing_gamma = std::exp(x0 + frac * (x1 - x0));
      sweep.has_crossing = true;
      break;
    }
  }
  if (!sweep.has_crossing) {
    std::ostringstream os;
    os << "no overlap crossing in [" << gammas.front() << ", " << gammas.back()
       << "]; endpoint differences "
       << sweep.points.front().ground_overlap -
              sweep.points.front().first_overlap
       << " and "
       << sweep.points.back().ground_overlap - sweep.points.back().first_overlap;
    sweep.diagnostic = os.str();
  }
  return sweep;
}

SweepResult gamma_sweep(const Network& net, int target,
                        const std::vector<double>& gammas, int dense_limit) {
  const LaplacianSpectrum spec =
      eigendecompose(laplacian_dense(net), dense_limit);
  const GroupedSpectrum grouped = group_by_target(spec, target);
  return gamma_sweep(grouped, zeta_spectral(spec, 1).value, gammas);
}

TwoLevelSolution two_level_predict(double i1, double i2, double n_sites,
                                   double ds) {
  if (!(i1 > 0.0) || !(i2 > 0.0) || !(n_sites > 1.0))
    throw std::invalid_argument("two_level_predict: need I_1, I_2 > 0, N > 1");
  TwoLevelSolution sol;
  sol.omega = i1 / std::sqrt(n_sites * i2);
  sol.e0_pred = -sol.omega;
  sol.e1_pred = sol.omega;
  sol.period = M_PI / sol.omega;
  sol.amplitude = std::min(1.0, i1 * i1 / i2);
  sol.t_opt = 0.5 * M_PI / sol.omega;
  sol.p_opt = sol.amplitude;
  sol.ds = ds;
  sol.regime_consistent = std::isnan(ds) || ds > 4.0;
  return sol;
}

SubGroverSolution sub_grover_solve(const SearchConfig& cfg,
                                   const SearchLevels& levels, double ds,
                                   double fitted_lambda) {
  if (!(ds > 2.0 && ds < 4.0))
    throw std::invalid_argument(
        "sub_grover_solve: regime mismatch, need 2 < d_s < 4");
  double lambda1 = 0.0;
  for (const auto& grp : cfg.grouped.groups)
    if (grp.value > 0.0) {
      lambda1 = grp.value;
      break;
    }
  if (!(lambda1 > 0.0))
    throw std::runtime_error("sub_grover_solve: no positive Laplacian level");
  SubGroverSolution sol;
  sol.lambda1 = lambda1;
  sol.e0 = levels.e0() / (cfg.gamma * lambda1);
  sol.e1 = levels.e1() / (cfg.gamma * lambda1);
  sol.lambda_amplitude = fitted_lambda;
  sol.p_opt_exponent = 1.0 - 4.0 / ds;
  sol.runtime_exponent = 2.0 / ds;
  sol.ds = ds;
  return sol;
}

}  // namespace ctqw
