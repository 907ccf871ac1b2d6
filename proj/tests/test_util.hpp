#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "ctqw/network.hpp"
#include "ctqw/search.hpp"
#include "ctqw/spectrum.hpp"

namespace ctqw::testutil {

/// Random connected simple graph: random spanning tree plus Bernoulli extra
/// edges. Deterministic for a fixed seed.
inline Network random_connected_graph(int n, unsigned seed,
                                      double extra_prob = 0.1) {
  std::mt19937 rng(seed);
  Network net;
  net.n_sites = n;
  net.descriptor.family = Family::Complete;  // placeholder, tests only
  net.descriptor.n = n;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::set<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    int u = order[pick(rng)], v = order[i];
    edges.insert({std::min(u, v), std::max(u, v)});
  }
  std::bernoulli_distribution extra(extra_prob);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (extra(rng)) edges.insert({u, v});
  net.edges.assign(edges.begin(), edges.end());
  return net;
}

struct SearchSetup {
  Network net;
  Eigen::MatrixXd lap;
  LaplacianSpectrum spec;
  double i1 = 0.0;
  double i2 = 0.0;
  SearchConfig cfg;
  SearchLevels levels;
};

/// Dense pipeline up to solved levels; gamma defaults to the I_1 predictor.
inline SearchSetup setup_search(Network net, int target = 0,
                                double gamma = std::nan("")) {
  SearchSetup s;
  s.net = std::move(net);
  s.lap = laplacian_dense(s.net);
  s.spec = eigendecompose(s.lap);
  s.i1 = zeta_spectral(s.spec, 1).value;
  s.i2 = zeta_spectral(s.spec, 2).value;
  s.cfg.gamma = std::isnan(gamma) ? s.i1 : gamma;
  s.cfg.target = target;
  s.cfg.grouped = group_by_target(s.spec, target);
  s.levels = solve_levels(s.cfg);
  return s;
}

inline double sum_s_overlaps(const SearchLevels& levels) {
  double sum = 0.0;
  for (const auto& l : levels.levels) sum += l.s_overlap;
  return sum;
}

inline double sum_w_overlaps(const SearchLevels& levels) {
  double sum = 0.0;
  for (const auto& l : levels.levels) sum += l.w_overlap;
  return sum;
}

inline double t0_sum_rule(const SearchLevels& levels) {
  double sum = 0.0;
  for (const auto& l : levels.levels) sum += 1.0 / (l.energy * l.fprime);
  return sum;
}

}  // namespace ctqw::testutil
