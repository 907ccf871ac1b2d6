#include "ctqw/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ctqw {

namespace {

using nlohmann::json;

json json_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

std::string sanitize_csv(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return text;
}

}  // namespace

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string spectrum_csv(const LaplacianSpectrum& spec, int target) {
  std::ostringstream os;
  const bool with_weights = target >= 0;
  os << (with_weights ? "index,eigenvalue,weight_at_w\n" : "index,eigenvalue\n");
  const int n = spec.n();
  for (int i = 0; i < n; ++i) {
    os << i << ',' << format_g17(spec.eigenvalues[i]);
    if (with_weights) {
      const double w = spec.analytic
                           ? 1.0 / n
                           : spec.eigenvectors(target, i) * spec.eigenvectors(target, i);
      os << ',' << format_g17(w);
    }
    os << '\n';
  }
  return os.str();
}

std::string zeta_report_json(int n_sites, const ZetaValue& zeta) {
  json report;
  report["N"] = n_sites;
  report["j"] = zeta.j;
  report["route"] =
      zeta.route == ZetaRoute::SpectralSum ? "spectral_sum" : "logdet";
  report["value"] = zeta.value;
  report["residual"] = zeta.residual;
  return report.dump(2) + "\n";
}

std::string search_report_json(const Network& net, const SearchConfig& cfg,
                               const SearchLevels& levels,
                               const OptimalPoint& opt, double i1, double i2) {
  const RegimeReport regime = classify_regime(net.descriptor.ds_nominal());
  json report;
  report["N"] = net.n_sites;
  report["family"] = family_name(net.descriptor.family);
  report["params"] = net.descriptor.params_string();
  report["w"] = cfg.target;
  report["gamma"] = cfg.gamma;
  report["E0"] = levels.e0();
  report["E1"] = levels.e1();
  report["gap"] = levels.gap();
  report["overlaps"] = {{"s_ground", levels.levels[0].s_overlap},
                        {"s_first", levels.levels[1].s_overlap},
                        {"w_ground", levels.levels[0].w_overlap},
                        {"w_first", levels.levels[1].w_overlap}};
  report["i1"] = i1;
  report["i2"] = i2;
  report["t_opt"] = opt.found ? json(opt.t_opt) : json(nullptr);
  report["p_opt"] = opt.found ? json(opt.p_opt) : json(nullptr);
  if (!opt.found) report["diagnostic"] = opt.diagnostic;
  report["regime"] = regime_name(regime.regime);
  const double ds = net.descriptor.ds_nominal();
  report["ds_nominal"] = std::isinf(ds) ? json("inf") : json(ds);
  return report.dump(2) + "\n";
}

std::string dynamics_csv(const SearchConfig& cfg, const SearchLevels& levels,
                         double t_max, int n_rows) {
  std::ostringstream os;
  os << "t,probability\n";
  for (int k = 0; k < n_rows; ++k) {
    const double t = t_max * k / (n_rows - 1);
    const double p = std::norm(amplitude_spectral(cfg, levels, t));
    os << format_g17(t) << ',' << format_g17(p) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << "gamma,ground_overlap,first_overlap,gap\n";
  for (const auto& pt : sweep.points)
    os << format_g17(pt.gamma) << ',' << format_g17(pt.ground_overlap) << ','
       << format_g17(pt.first_overlap) << ',' << format_g17(pt.gap) << '\n';
  return os.str();
}

std::string sweep_summary_json(const SweepResult& sweep) {
  json report;
  report["predictor_gamma"] = sweep.predictor_gamma;
  report["crossing_gamma"] =
      sweep.has_crossing ? json(sweep.crossing_gamma) : json(nullptr);
  report["has_crossing"] = sweep.has_crossing;
  report["n_points"] = sweep.points.size();
  if (!sweep.diagnostic.empty()) report["diagnostic"] = sweep.diagnostic;
  return report.dump(2) + "\n";
}

std::string series_csv(const ScalingSeries& series) {
  std::ostringstream os;
  os << "family,size_param,N,target,gamma,i1,i2,lambda1,gap,t_opt,p_opt,"
        "runtime,ds_estimate,ds_std_error,ok,config_hash,message\n";
  for (const auto& rec : series.records) {
    os << family_name(series.plan.family) << ',' << rec.size_param << ','
       << rec.n_sites << ',' << rec.target << ',' << format_g17(rec.gamma_used)
       << ',' << format_g17(rec.i1) << ',' << format_g17(rec.i2) << ','
       << format_g17(rec.lambda1) << ',' << format_g17(rec.gap) << ','
       << format_g17(rec.t_opt) << ',' << format_g17(rec.p_opt) << ','
       << format_g17(rec.runtime) << ',' << format_g17(rec.ds_estimate) << ','
       << format_g17(rec.ds_std_error) << ',' << (rec.ok ? 1 : 0) << ','
       << rec.config_hash << ',' << sanitize_csv(rec.message) << '\n';
  }
  return os.str();
}

std::string fit_report_json(const ScalingFit& fit) {
  json report;
  report["quantity"] = fit.quantity;
  report["alpha"] = fit.alpha;
  report["stderr"] = fit.std_error;
  report["n_points"] = fit.n_points;
  report["amplitude"] = json_or_null(fit.amplitude);
  return report.dump(2) + "\n";
}

std::string profile_csv(const OverlapProfile& profile,
                        const LaplacianSpectrum& spec) {
  std::ostringstream os;
  os << "i,lambda_i,mean_rescaled_overlap,level\n";
  for (size_t i = 0; i < profile.mean_rescaled.size(); ++i)
    os << i << ',' << format_g17(spec.eigenvalues[static_cast<int>(i)]) << ','
       << format_g17(profile.mean_rescaled[i]) << ',' << profile.level << '\n';
  return os.str();
}

}  // namespace ctqw
