#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <string>
#include <utility>
#include <vector>

namespace ctqw {

enum class Family { Complete, Hypercubic, MkHierarchical };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Static parameters of a network family. For Migdal-Kadanoff hierarchical
/// lattices the rescaling length l is fixed to 2, giving an effective
/// dimension d = 1 + log2(b).
struct NetworkDescriptor {
  Family family = Family::Complete;
  int n = 0;               // complete graphs
  int b = 0;               // MK branch count
  int l = 2;               // MK rescaling length (fixed)
  int g = 0;               // MK generation count
  std::vector<int> sides;  // hypercubic side lengths, one per axis
  bool periodic = true;    // hypercubic only

  /// Effective dimension: axis count for lattices, 1 + log2(b) for MK
  /// lattices, +infinity for complete graphs (mean-field limit).
  double d_nominal() const;
  /// Spectral dimension; equals d_nominal for every family built here.
  double ds_nominal() const;

  std::string params_string() const;
};

/// Undirected simple graph with optional per-site hierarchy levels.
/// Immutable after construction; safe to share across threads.
struct Network {
  int n_sites = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, no duplicates
  std::vector<int> site_level;             // empty for non-hierarchical families
  NetworkDescriptor descriptor;

  bool has_levels() const { return !site_level.empty(); }
  int max_level() const;
  std::vector<int> sites_at_level(int level) const;
  std::vector<int> degrees() const;

  /// Checks structural invariants (simple, connected, family counts).
  /// Throws std::runtime_error with a description on violation.
  void validate() const;
};

/// Complete graph K_n. Rejects n < 2.
Network complete_graph(int n);

/// Hypercubic lattice with the given side lengths. Periodic wrap requires
/// every side >= 3 so that no duplicate edges arise.
Network hypercubic_lattice(const std::vector<int>& sides, bool periodic = true);

/// Migdal-Kadanoff hierarchical lattice with b branches and g generations
/// (rescaling length l = 2). Built by inverse RG: starting from a single
/// edge between two level-0 roots, every edge {u,v} is replaced by b
/// two-edge paths u-m-v through fresh midpoints m of the current
/// generation. Site count obeys N = 2 + b/(2b-1) * ((2b)^g - 1) and edge
/// count (2b)^g. Sites are numbered in creation order so each generation
/// occupies a contiguous index range.
///
/// Emits a warning on stderr (but proceeds) when N exceeds size_guard.
Network mk_hierarchical(int b, int g, long size_guard = 50000);

/// Closed-form MK site count 2 + b/(2b-1) * ((2b)^g - 1).
long mk_site_count(int b, int g);
/// Closed-form MK edge count (2b)^g.
long mk_edge_count(int b, int g);

bool is_connected(const Network& net);

/// Graph Laplacian L = D - A. Rejects disconnected networks.
Eigen::SparseMatrix<double> laplacian(const Network& net);
Eigen::MatrixXd laplacian_dense(const Network& net);

}  // namespace ctqw
