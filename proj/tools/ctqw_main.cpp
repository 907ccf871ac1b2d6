// ctqw — spatial search by continuous-time quantum walk on lattices and
// hierarchical networks. Subcommands: gen, spectrum, zeta, search, sweep,
// scaling, profile. All outputs are plain CSV/JSON with fixed formatting so
// identical configurations reproduce identical bytes.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctqw/network.hpp"
#include "ctqw/network_io.hpp"
#include "ctqw/parallel.hpp"
#include "ctqw/report.hpp"
#include "ctqw/scaling.hpp"
#include "ctqw/search.hpp"
#include "ctqw/spectrum.hpp"

namespace {

using namespace ctqw;

int dense_limit_from_env() {
  if (const char* env = std::getenv("CTQW_DENSE_LIMIT")) {
    const int limit = std::atoi(env);
    if (limit > 0) return limit;
  }
  return kDefaultDenseLimit;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) throw CLI::ValidationError("range", "empty range " + text);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw CLI::ValidationError("list", "empty list " + text);
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

struct NetSource {
  std::string family;
  std::string input;
  int n = 0;
  int b = 0;
  int g = -1;
  std::string sides;
  bool open_boundary = false;

  void add_flags(CLI::App* cmd, bool allow_input) {
    cmd->add_option("family", family,
                    "network family: complete | lattice | mk")
        ->check(CLI::IsMember({"complete", "lattice", "mk"}));
    if (allow_input)
      cmd->add_option("--input", input, "read network from an edge-list file");
    cmd->add_option("--n", n, "complete graph: number of sites");
    cmd->add_option("--b", b, "mk: branch count (>= 2)");
    cmd->add_option("--g", g, "mk: generation count (>= 0)");
    cmd->add_option("--sides", sides, "lattice: comma-separated side lengths");
    cmd->add_flag("--open", open_boundary, "lattice: open boundaries");
  }

  Network build() const {
    if (!input.empty()) {
      Network net = read_network_file(input);
      net.validate();
      return net;
    }
    if (family == "complete") return complete_graph(n);
    if (family == "lattice") return hypercubic_lattice(parse_int_list(sides), !open_boundary);
    if (family == "mk") {
      if (g < 0) throw CLI::ValidationError("--g", "mk requires --g >= 0");
      return mk_hierarchical(b, g);
    }
    throw CLI::ValidationError("family", "specify a family or --input");
  }
};

struct Resolved {
  Network net;
  LaplacianSpectrum spec;
};

// Analytic spectra for the closed-form families, dense decomposition
// otherwise (or on request).
Resolved resolve_spectrum(const NetSource& src, bool force_dense) {
  Resolved res;
  res.net = src.build();
  const auto& d = res.net.descriptor;
  if (!force_dense && d.family == Family::Complete) {
    res.spec = complete_spectrum_analytic(res.net.n_sites);
  } else if (!force_dense && d.family == Family::Hypercubic && d.periodic) {
    res.spec = lattice_spectrum_analytic(d.sides);
  } else {
    res.spec = eigendecompose(laplacian_dense(res.net), dense_limit_from_env());
  }
  return res;
}

int default_target(const Network& net) {
  if (net.has_levels()) return net.sites_at_level(net.max_level()).front();
  return 0;
}

int cmd_gen(const NetSource& src, const std::string& output) {
  const Network net = src.build();
  std::ostringstream os;
  write_network(net, os);
  write_output(output, os.str());
  return 0;
}

int cmd_spectrum(const NetSource& src, bool force_dense, int target,
                 const std::string& output) {
  const Resolved res = resolve_spectrum(src, force_dense);
  if (target >= res.net.n_sites)
    throw CLI::ValidationError("--target", "target site out of range");
  write_output(output, spectrum_csv(res.spec, target));
  return 0;
}

int cmd_zeta(const NetSource& src, std::vector<int> js, const std::string& route,
             bool force_dense, const std::string& output) {
  std::ostringstream os;
  if (route == "logdet") {
    const Network net = src.build();
    const Eigen::MatrixXd lap = laplacian_dense(net);
    if (lap.rows() > dense_limit_from_env())
      throw std::runtime_error("zeta logdet: dense guard exceeded");
    for (int j : js) os << zeta_report_json(net.n_sites, zeta_logdet(lap, j));
  } else {
    const Resolved res = resolve_spectrum(src, force_dense);
    for (int j : js) os << zeta_report_json(res.net.n_sites, zeta_spectral(res.spec, j));
  }
  write_output(output, os.str());
  return 0;
}

int cmd_search(const NetSource& src, bool force_dense, int target,
               const std::string& gamma_text, double t_max,
               const std::string& report_path, const std::string& dynamics_path,
               int dynamics_rows) {
  const Resolved res = resolve_spectrum(src, force_dense);
  const int w = target >= 0 ? target : default_target(res.net);
  if (w >= res.net.n_sites)
    throw CLI::ValidationError("--target", "target site out of range");

  const double i1 = zeta_spectral(res.spec, 1).value;
  const double i2 = zeta_spectral(res.spec, 2).value;
  SearchConfig cfg;
  cfg.gamma = gamma_text == "auto" ? i1 : std::stod(gamma_text);
  cfg.target = w;
  cfg.grouped = group_by_target(res.spec, w);

  const SearchLevels levels = solve_levels(cfg);
  const OptimalPoint opt = find_t_opt(cfg, levels, t_max);
  write_output(report_path, search_report_json(res.net, cfg, levels, opt, i1, i2));
  if (!dynamics_path.empty()) {
    const double horizon = t_max > 0 ? t_max : 4.0 * M_PI / levels.gap();
    write_output(dynamics_path, dynamics_csv(cfg, levels, horizon, dynamics_rows));
  }
  return 0;
}

int cmd_sweep(const NetSource& src, bool force_dense, int target,
              int per_decade, double decades, const std::string& output,
              const std::string& summary_path) {
  const Resolved res = resolve_spectrum(src, force_dense);
  const int w = target >= 0 ? target : default_target(res.net);
  if (w >= res.net.n_sites)
    throw CLI::ValidationError("--target", "target site out of range");
  const double i1 = zeta_spectral(res.spec, 1).value;
  const GroupedSpectrum grouped = group_by_target(res.spec, w);
  const SweepResult sweep =
      gamma_sweep(grouped, i1, default_gamma_grid(i1, per_decade, decades));
  write_output(output, sweep_csv(sweep));
  if (summary_path.empty())
    std::cerr << sweep_summary_json(sweep);
  else
    write_output(summary_path, sweep_summary_json(sweep));
  return 0;
}

int cmd_scaling(const std::string& family_token, int b, int dim,
                const std::string& sizes_text, const std::string& protocol_name,
                const std::string& fit_quantity, const std::string& series_path,
                const std::string& fit_path) {
  FamilyPlan plan;
  std::string token = family_token;
  if (token.size() > 8 && token.rfind("lattice", 0) == 0 && token.back() == 'd') {
    plan.lattice_dim = std::stoi(token.substr(7, token.size() - 8));
    token = "lattice";
  }
  plan.family = family_from_name(token);
  plan.b = b;
  if (plan.family == Family::Hypercubic && plan.lattice_dim == 0)
    plan.lattice_dim = dim;
  plan.size_params = parse_int_list(sizes_text);

  SeriesProtocol protocol;
  protocol.gamma_protocol = protocol_name == "crossing"
                                ? GammaProtocol::SweepCrossing
                                : GammaProtocol::ZetaPredictor;
  protocol.dense_limit = dense_limit_from_env();

  const ScalingSeries series = run_series(plan, protocol);
  write_output(series_path, series_csv(series));
  if (!fit_quantity.empty()) {
    const ScalingFit fit = fit_exponent(series, quantity_from_name(fit_quantity));
    write_output(fit_path, fit_report_json(fit));
  }
  for (const auto& rec : series.records)
    if (!rec.ok)
      std::cerr << "record size_param=" << rec.size_param
                << " failed: " << rec.message << "\n";
  return 0;
}

int cmd_profile(const NetSource& src, int level, const std::string& output) {
  const Network net = src.build();
  const LaplacianSpectrum spec =
      eigendecompose(laplacian_dense(net), dense_limit_from_env());
  const OverlapProfile profile = overlap_profile(net, spec, level);
  write_output(output, profile_csv(profile, spec));

  // completeness sanity: per-site overlaps must sum to 1 before averaging
  double worst = 0.0;
  for (int w : net.sites_at_level(level)) {
    const double sum = spec.eigenvectors.row(w).squaredNorm();
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  std::cerr << "profile level " << level << ": " << profile.site_count
            << " sites, max |sum_i overlap - 1| = " << worst << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spatial search by continuous-time quantum walk"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "bound on worker threads (0 = auto)");

  NetSource gen_src;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a network edge-list file");
  gen_src.add_flags(gen, false);
  gen->add_option("-o,--output", gen_out, "output path (default stdout)");

  NetSource spec_src;
  bool spec_dense = false;
  int spec_target = -1;
  std::string spec_out;
  auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectrum CSV");
  spec_src.add_flags(spectrum, true);
  spectrum->add_flag("--dense", spec_dense, "force dense eigendecomposition");
  spectrum->add_option("--target", spec_target, "emit overlap weights at this site");
  spectrum->add_option("-o,--output", spec_out, "output path (default stdout)");

  NetSource zeta_src;
  std::vector<int> zeta_js{1, 2};
  std::string zeta_route = "spectral";
  bool zeta_dense = false;
  std::string zeta_out;
  auto* zeta = app.add_subcommand("zeta", "spectral zeta function report");
  zeta_src.add_flags(zeta, true);
  zeta->add_option("--j", zeta_js, "zeta orders (default 1 2)");
  zeta->add_option("--route", zeta_route, "spectral | logdet")
      ->check(CLI::IsMember({"spectral", "logdet"}));
  zeta->add_flag("--dense", zeta_dense, "force dense eigendecomposition");
  zeta->add_option("-o,--output", zeta_out, "output path (default stdout)");

  NetSource search_src;
  bool search_dense = false;
  int search_target = -1;
  std::string search_gamma = "auto";
  double search_tmax = 0.0;
  std::string search_report, search_dynamics;
  int search_rows = 629;
  auto* search = app.add_subcommand("search", "solve one search configuration");
  search_src.add_flags(search, true);
  search->add_flag("--dense", search_dense, "force dense eigendecomposition");
  search->add_option("--target", search_target,
                     "target site (default: representative)");
  search->add_option("--gamma", search_gamma, "hopping rate, or 'auto' for I_1");
  search->add_option("--tmax", search_tmax, "probe horizon (default 4*pi/gap)");
  search->add_option("--report", search_report, "report JSON path (default stdout)");
  search->add_option("--dynamics", search_dynamics, "dynamics CSV path");
  search->add_option("--rows", search_rows, "dynamics CSV row count");

  NetSource sweep_src;
  bool sweep_dense = false;
  int sweep_target = -1;
  int sweep_per_decade = 40;
  double sweep_decades = 1.0;
  std::string sweep_out, sweep_summary;
  auto* sweep = app.add_subcommand("sweep", "gamma sweep of the level overlaps");
  sweep_src.add_flags(sweep, true);
  sweep->add_flag("--dense", sweep_dense, "force dense eigendecomposition");
  sweep->add_option("--target", sweep_target, "target site (default: representative)");
  sweep->add_option("--per-decade", sweep_per_decade, "grid points per decade");
  sweep->add_option("--decades", sweep_decades, "decades spanned each way");
  sweep->add_option("-o,--output", sweep_out, "sweep CSV path (default stdout)");
  sweep->add_option("--summary", sweep_summary,
                    "summary JSON path (default stderr)");

  std::string scal_family, scal_sizes, scal_g, scal_L;
  int scal_b = 0, scal_dim = 0;
  std::string scal_protocol = "i1";
  std::string scal_fit, scal_series_out, scal_fit_out;
  auto* scaling = app.add_subcommand("scaling", "size series and exponent fit");
  scaling->add_option("family", scal_family,
                      "complete | mk | lattice | lattice<d>d")
      ->required();
  scaling->add_option("--sizes", scal_sizes, "complete: site counts, e.g. 64,256,1024");
  scaling->add_option("--g", scal_g, "mk: generations, e.g. 2..5");
  scaling->add_option("--L", scal_L, "lattice: side lengths, e.g. 3,4,5,6");
  scaling->add_option("--b", scal_b, "mk: branch count");
  scaling->add_option("--dim", scal_dim, "lattice: axis count");
  scaling->add_option("--protocol", scal_protocol, "gamma protocol: i1 | crossing")
      ->check(CLI::IsMember({"i1", "crossing"}));
  scaling->add_option("--fit", scal_fit,
                      "fit quantity: gap|t_opt|p_opt|runtime|i1|i2|lambda1");
  scaling->add_option("--series", scal_series_out, "series CSV path (default stdout)");
  scaling->add_option("--fit-out", scal_fit_out, "fit JSON path (default stdout)");

  NetSource prof_src;
  int prof_level = -1;
  std::string prof_out;
  auto* profile = app.add_subcommand("profile", "level-averaged overlap profile CSV");
  prof_src.add_flags(profile, true);
  profile->add_option("--level", prof_level, "hierarchy level to average over")
      ->required();
  profile->add_option("-o,--output", prof_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);
  set_worker_count(threads);

  try {
    if (gen->parsed()) return cmd_gen(gen_src, gen_out);
    if (spectrum->parsed())
      return cmd_spectrum(spec_src, spec_dense, spec_target, spec_out);
    if (zeta->parsed())
      return cmd_zeta(zeta_src, zeta_js, zeta_route, zeta_dense, zeta_out);
    if (search->parsed())
      return cmd_search(search_src, search_dense, search_target, search_gamma,
                        search_tmax, search_report, search_dynamics, search_rows);
    if (sweep->parsed())
      return cmd_sweep(sweep_src, sweep_dense, sweep_target, sweep_per_decade,
                       sweep_decades, sweep_out, sweep_summary);
    if (scaling->parsed()) {
      std::string sizes = scal_sizes;
      if (sizes.empty()) sizes = scal_g;
      if (sizes.empty()) sizes = scal_L;
      if (sizes.empty())
        throw CLI::ValidationError("--sizes", "give --sizes, --g, or --L");
      return cmd_scaling(scal_family, scal_b, scal_dim, sizes, scal_protocol,
                         scal_fit, scal_series_out, scal_fit_out);
    }
    if (profile->parsed()) return cmd_profile(prof_src, prof_level, prof_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
