#include "ctqw/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ctqw {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Grover: return "grover";
    case Regime::Marginal: return "marginal";
    case Regime::SubGrover: return "subgrover";
    case Regime::Low: return "low";
  }
  throw std::logic_error("unknown regime");
}

double sub_grover_runtime_exponent(double ds) { return 2.0 / ds; }

RegimeReport classify_regime(double ds) {
  if (!(ds > 0.0)) throw std::invalid_argument("classify_regime: d_s must be > 0");
  RegimeReport report;
  report.ds = ds;
  if (ds > 4.0) {
    report.regime = Regime::Grover;
    report.runtime_exponent = 0.5;
    report.note = "O(N^{1/2})";
  } else if (ds == 4.0) {
    report.regime = Regime::Marginal;
    report.runtime_exponent = 0.5;
    report.log_correction = true;
    report.note = "O(N^{1/2} ln^{3/2} N)";
  } else if (ds > 2.0) {
    report.regime = Regime::SubGrover;
    report.runtime_exponent = sub_grover_runtime_exponent(ds);
    std::ostringstream os;
    os << "bounded below by N^{" << report.runtime_exponent << "}";
    report.note = os.str();
  } else {
    report.regime = Regime::Low;
    report.runtime_exponent = std::nan("");
    report.note = "no speedup guarantee";
  }
  return report;
}

namespace {

std::string fnv1a_hex(const std::string& text) {
  unsigned long long hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << hash;
  return os.str();
}

std::string plan_config_string(const FamilyPlan& plan,
                               const SeriesProtocol& protocol, int size_param) {
  std::ostringstream os;
  os << "family=" << family_name(plan.family) << ";b=" << plan.b
     << ";dim=" << plan.lattice_dim << ";size=" << size_param << ";gamma="
     << (protocol.gamma_protocol == GammaProtocol::ZetaPredictor ? "predictor"
                                                                 : "crossing")
     << ";target="
     << (protocol.target_policy == TargetPolicy::Representative
             ? std::string("representative")
             : std::to_string(protocol.explicit_target))
     << ";tol=" << protocol.group_tol;
  return os.str();
}

}  // namespace

ScalingSeries run_series(const FamilyPlan& plan, const SeriesProtocol& protocol) {
  ScalingSeries series;
  series.plan = plan;
  series.protocol = protocol;

  for (int size_param : plan.size_params) {
    SeriesRecord rec;
    rec.size_param = size_param;
    rec.config_hash = fnv1a_hex(plan_config_string(plan, protocol, size_param));
    rec.ds_estimate = std::nan("");
    rec.ds_std_error = std::nan("");
    try {
      // pin the record size from the closed form before any heavy work so
      // failed records still carry their intended N
      switch (plan.family) {
        case Family::Complete:
          rec.n_sites = size_param;
          break;
        case Family::Hypercubic: {
          if (plan.lattice_dim < 1)
            throw std::invalid_argument("run_series: lattice_dim must be >= 1");
          long n = 1;
          for (int a = 0; a < plan.lattice_dim; ++a) n *= size_param;
          rec.n_sites = n;
          break;
        }
        case Family::MkHierarchical:
          rec.n_sites = mk_site_count(plan.b, size_param);
          break;
      }

      LaplacianSpectrum spec;
      int target = 0;
      switch (plan.family) {
        case Family::Complete:
          spec = complete_spectrum_analytic(size_param);
          break;
        case Family::Hypercubic: {
          std::vector<int> sides(plan.lattice_dim, size_param);
          spec = lattice_spectrum_analytic(sides);
          break;
        }
        case Family::MkHierarchical: {
          if (rec.n_sites > protocol.dense_limit)
            throw std::invalid_argument(
                "run_series: MK size N=" + std::to_string(rec.n_sites) +
                " exceeds the dense guard " +
                std::to_string(protocol.dense_limit));
          Network net = mk_hierarchical(plan.b, size_param);
          if (net.n_sites != mk_site_count(plan.b, size_param))
            throw std::runtime_error("run_series: MK size deviates from closed form");
          spec = eigendecompose(laplacian_dense(net), protocol.dense_limit);
          if (protocol.target_policy == TargetPolicy::Representative) {
            // first site of the top generation: typical per the overlap study
            const auto top = net.sites_at_level(net.max_level());
            target = top.front();
          } else {
            target = protocol.explicit_target;
          }
          break;
        }
      }
      if (plan.family != Family::MkHierarchical &&
          protocol.target_policy == TargetPolicy::ExplicitIndex)
        target = protocol.explicit_target;

      if (rec.n_sites != spec.n())
        throw std::runtime_error("run_series: size bookkeeping mismatch");
      rec.target = target;
      rec.lambda1 = spec.lambda1();
      rec.i1 = zeta_spectral(spec, 1).value;
      rec.i2 = zeta_spectral(spec, 2).value;

      const GroupedSpectrum grouped =
          group_by_target(spec, target, protocol.group_tol);
      double gamma = rec.i1;
      if (protocol.gamma_protocol == GammaProtocol::SweepCrossing) {
        const SweepResult sweep =
            gamma_sweep(grouped, rec.i1, default_gamma_grid(rec.i1));
        if (sweep.has_crossing)
          gamma = sweep.crossing_gamma;
        else
          rec.message = "sweep crossing not found, fell back to I_1 predictor";
      }
      rec.gamma_used = gamma;

      SearchConfig cfg;
      cfg.gamma = gamma;
      cfg.target = target;
      cfg.grouped = grouped;
      const SearchLevels levels = solve_levels(cfg);
      double s_sum = 0.0, t0_sum = 0.0;
      for (const auto& level : levels.levels) {
        s_sum += level.s_overlap;
        t0_sum += 1.0 / (level.energy * level.fprime);
      }
      if (std::abs(s_sum - 1.0) > 1e-9 || std::abs(t0_sum + 1.0) > 1e-9)
        throw std::runtime_error("run_series: level sum rules violated");
      rec.gap = levels.gap();
      const OptimalPoint opt = find_t_opt(cfg, levels);
      if (!opt.found) throw std::runtime_error("find_t_opt: " + opt.diagnostic);
      rec.t_opt = opt.t_opt;
      rec.p_opt = opt.p_opt;
      rec.runtime = opt.t_opt / opt.p_opt;

      try {
        const DsEstimate ds = spectral_dimension_estimate(spec);
        rec.ds_estimate = ds.value;
        rec.ds_std_error = ds.std_error;
      } catch (const std::exception&) {
        // fit window too small at this size; the record stays usable
      }
      rec.ok = true;
    } catch (const std::exception& ex) {
      rec.ok = false;
      rec.message = ex.what();
    }
    series.records.push_back(rec);
  }

  std::sort(series.records.begin(), series.records.end(),
            [](const SeriesRecord& a, const SeriesRecord& b) {
              return a.n_sites < b.n_sites;
            });
  for (size_t i = 0; i + 1 < series.records.size(); ++i)
    if (series.records[i].n_sites == series.records[i + 1].n_sites &&
        series.records[i].ok && series.records[i + 1].ok)
      throw std::invalid_argument("run_series: duplicate sizes in the series");
  return series;
}

std::string quantity_name(SeriesQuantity q) {
  switch (q) {
    case SeriesQuantity::Gap: return "gap";
    case SeriesQuantity::TOpt: return "t_opt";
    case SeriesQuantity::POpt: return "p_opt";
    case SeriesQuantity::Runtime: return "runtime";
    case SeriesQuantity::I1: return "i1";
    case SeriesQuantity::I2: return "i2";
    case SeriesQuantity::Lambda1: return "lambda1";
  }
  throw std::logic_error("unknown quantity");
}

SeriesQuantity quantity_from_name(const std::string& name) {
  for (SeriesQuantity q :
       {SeriesQuantity::Gap, SeriesQuantity::TOpt, SeriesQuantity::POpt,
        SeriesQuantity::Runtime, SeriesQuantity::I1, SeriesQuantity::I2,
        SeriesQuantity::Lambda1})
    if (quantity_name(q) == name) return q;
  throw std::invalid_argument("unknown series quantity: " + name);
}

ScalingFit fit_power_law(const std::vector<double>& x,
                         const std::vector<double>& y,
                         const std::string& quantity_label) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("fit_power_law: need at least 3 points");
  const int m = static_cast<int>(x.size());
  std::vector<double> lx(m), ly(m);
  for (int i = 0; i < m; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("fit_power_law: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0, my = 0;
  for (int i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_power_law: degenerate x range");
  ScalingFit fit;
  fit.alpha = sxy / sxx;
  double ss_res = 0;
  for (int i = 0; i < m; ++i) {
    const double r = ly[i] - my - fit.alpha * (lx[i] - mx);
    ss_res += r * r;
  }
  fit.std_error = m > 2 ? std::sqrt(ss_res / (m - 2) / sxx) : 0.0;
  fit.amplitude = std::exp(my - fit.alpha * mx);
  fit.n_points = m;
  fit.quantity = quantity_label;
  return fit;
}

ScalingFit fit_exponent(const ScalingSeries& series, SeriesQuantity quantity) {
  auto select = [&](const SeriesRecord& rec) {
    switch (quantity) {
      case SeriesQuantity::Gap: return rec.gap;
      case SeriesQuantity::TOpt: return rec.t_opt;
      case SeriesQuantity::POpt: return rec.p_opt;
      case SeriesQuantity::Runtime: return rec.runtime;
      case SeriesQuantity::I1: return rec.i1;
      case SeriesQuantity::I2: return rec.i2;
      case SeriesQuantity::Lambda1: return rec.lambda1;
    }
    throw std::logic_error("unknown quantity");
  };
  std::vector<double> x, y;
  for (const auto& rec : series.records) {
    if (!rec.ok) continue;
    const double value = select(rec);
    if (!std::isfinite(value) || !(value > 0.0)) continue;
    x.push_back(static_cast<double>(rec.n_sites));
    y.push_back(value);
  }
  if (x.size() < 3)
    throw std::invalid_argument(
        "fit_exponent: fewer than 3 usable records for quantity " +
        quantity_name(quantity));
  return fit_power_law(x, y, quantity_name(quantity));
}

OverlapProfile overlap_profile(const Network& net, const LaplacianSpectrum& spec,
                               int level) {
  if (!net.has_levels())
    throw std::invalid_argument("overlap_profile: network has no hierarchy levels");
  if (!spec.has_eigenvectors())
    throw std::invalid_argument("overlap_profile: eigenvectors required");
  if (level < 0 || level > net.max_level())
    throw std::invalid_argument("overlap_profile: level out of range");
  const std::vector<int> sites = net.sites_at_level(level);
  if (sites.empty())
    throw std::invalid_argument("overlap_profile: no sites at that level");

  const int n = spec.n();
  OverlapProfile profile;
  profile.level = level;
  profile.site_count = static_cast<int>(sites.size());
  profile.mean_rescaled.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int w : sites) {
      const double v = spec.eigenvectors(w, i);
      sum += v * v;
    }
    profile.mean_rescaled[i] = n * sum / sites.size();
  }
  return profile;
}

}  // namespace ctqw
