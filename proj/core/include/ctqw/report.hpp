#pragma once

#include <string>
#include <vector>

#include "ctqw/scaling.hpp"
#include "ctqw/search.hpp"
#include "ctqw/spectrum.hpp"

namespace ctqw {

/// Fixed 17-significant-digit formatting used by every CSV column so that
/// identical runs produce identical bytes.
std::string format_g17(double x);

/// CSV rows (index, eigenvalue) or (index, eigenvalue, weight_at_w) when a
/// target site is given.
std::string spectrum_csv(const LaplacianSpectrum& spec, int target = -1);

/// {"N":..,"j":..,"route":..,"value":..,"residual":..}
std::string zeta_report_json(int n_sites, const ZetaValue& zeta);

/// Search report with levels, overlaps, optimum, and regime tag.
std::string search_report_json(const Network& net, const SearchConfig& cfg,
                               const SearchLevels& levels,
                               const OptimalPoint& opt, double i1, double i2);

/// CSV rows (t, probability) on a uniform grid.
std::string dynamics_csv(const SearchConfig& cfg, const SearchLevels& levels,
                         double t_max, int n_rows);

/// CSV rows (gamma, ground_overlap, first_overlap, gap).
std::string sweep_csv(const SweepResult& sweep);
std::string sweep_summary_json(const SweepResult& sweep);

/// One row per record with every SeriesRecord field.
std::string series_csv(const ScalingSeries& series);
std::string fit_report_json(const ScalingFit& fit);

/// CSV rows (i, lambda_i, mean_rescaled_overlap, level).
std::string profile_csv(const OverlapProfile& profile,
                        const LaplacianSpectrum& spec);

}  // namespace ctqw
