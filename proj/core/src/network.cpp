#include "ctqw/network.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ctqw {

std::string family_name(Family f) {
  switch (f) {
    case Family::Complete: return "complete";
    case Family::Hypercubic: return "lattice";
    case Family::MkHierarchical: return "mk";
  }
  throw std::logic_error("unknown family");
}

Family family_from_name(const std::string& name) {
  if (name == "complete") return Family::Complete;
  if (name == "lattice") return Family::Hypercubic;
  if (name == "mk") return Family::MkHierarchical;
  throw std::invalid_argument("unknown family name: " + name);
}

double NetworkDescriptor::d_nominal() const {
  switch (family) {
    case Family::Complete:
      return std::numeric_limits<double>::infinity();
    case Family::Hypercubic:
      return static_cast<double>(sides.size());
    case Family::MkHierarchical:
      return 1.0 + std::log2(static_cast<double>(b));
  }
  throw std::logic_error("unknown family");
}

double NetworkDescriptor::ds_nominal() const { return d_nominal(); }

std::string NetworkDescriptor::params_string() const {
  std::ostringstream os;
  switch (family) {
    case Family::Complete:
      os << "n=" << n;
      break;
    case Family::Hypercubic: {
      os << "sides=";
      for (size_t i = 0; i < sides.size(); ++i) os << (i ? "," : "") << sides[i];
      os << " periodic=" << (periodic ? 1 : 0);
      break;
    }
    case Family::MkHierarchical:
      os << "b=" << b << " l=" << l << " g=" << g;
      break;
  }
  return os.str();
}

int Network::max_level() const {
  if (site_level.empty()) return -1;
  return *std::max_element(site_level.begin(), site_level.end());
}

std::vector<int> Network::sites_at_level(int level) const {
  std::vector<int> out;
  for (int i = 0; i < n_sites; ++i)
    if (site_level[i] == level) out.push_back(i);
  return out;
}

std::vector<int> Network::degrees() const {
  std::vector<int> deg(n_sites, 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

void Network::validate() const {
  if (n_sites < 2) throw std::runtime_error("network has fewer than 2 sites");
  for (auto [u, v] : edges) {
    if (u == v) throw std::runtime_error("self-loop on site " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n_sites || v >= n_sites)
      throw std::runtime_error("edge endpoint out of range");
  }
  auto sorted = edges;
  for (auto& e : sorted)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::runtime_error("duplicate edge");
  if (!site_level.empty() && static_cast<int>(site_level.size()) != n_sites)
    throw std::runtime_error("site_level size mismatch");
  if (!is_connected(*this)) throw std::runtime_error("network is disconnected");
  if (descriptor.family == Family::MkHierarchical) {
    if (n_sites != mk_site_count(descriptor.b, descriptor.g))
      throw std::runtime_error("MK site count does not match closed form");
    if (static_cast<long>(edges.size()) != mk_edge_count(descriptor.b, descriptor.g))
      throw std::runtime_error("MK edge count does not match closed form");
  }
}

Network complete_graph(int n) {
  if (n < 2) throw std::invalid_argument("complete_graph requires n >= 2");
  Network net;
  net.n_sites = n;
  net.edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) net.edges.emplace_back(u, v);
  net.descriptor.family = Family::Complete;
  net.descriptor.n = n;
  return net;
}

Network hypercubic_lattice(const std::vector<int>& sides, bool periodic) {
  if (sides.empty()) throw std::invalid_argument("lattice needs at least one axis");
  long n = 1;
  for (int s : sides) {
    if (s < 2) throw std::invalid_argument("lattice sides must be >= 2");
    if (periodic && s < 3)
      throw std::invalid_argument(
          "periodic lattice sides must be >= 3 (side 2 would duplicate edges)");
    n *= s;
    if (n > 100000000L) throw std::invalid_argument("lattice too large");
  }
  Network net;
  net.n_sites = static_cast<int>(n);
  const int d = static_cast<int>(sides.size());
  std::vector<long> stride(d, 1);
  for (int a = 1; a < d; ++a) stride[a] = stride[a - 1] * sides[a - 1];
  std::vector<int> coord(d, 0);
  for (long site = 0; site < n; ++site) {
    for (int a = 0; a < d; ++a) {
      int c = coord[a];
      if (c + 1 < sides[a]) {
        net.edges.emplace_back(static_cast<int>(site),
                               static_cast<int>(site + stride[a]));
      } else if (periodic) {
        // wrap edge (L-1, 0) along axis a, counted once here
        net.edges.emplace_back(static_cast<int>(site - c * stride[a]),
                               static_cast<int>(site));
      }
    }
    for (int a = 0; a < d; ++a) {
      if (++coord[a] < sides[a]) break;
      coord[a] = 0;
    }
  }
  net.descriptor.family = Family::Hypercubic;
  net.descriptor.sides = sides;
  net.descriptor.periodic = periodic;
  return net;
}

long mk_site_count(int b, int g) {
  long edges = 1, sites = 2;
  for (int k = 0; k < g; ++k) {
    sites += static_cast<long>(b) * edges;
    edges *= 2L * b;
  }
  return sites;
}

long mk_edge_count(int b, int g) {
  long edges = 1;
  for (int k = 0; k < g; ++k) edges *= 2L * b;
  return edges;
}

Network mk_hierarchical(int b, int g, long size_guard) {
  if (b < 2) throw std::invalid_argument("mk_hierarchical requires b >= 2");
  if (g < 0) throw std::invalid_argument("mk_hierarchical requires g >= 0");
  const long n_final = mk_site_count(b, g);
  if (n_final > size_guard)
    std::cerr << "warning: MK lattice b=" << b << " g=" << g << " has N="
              << n_final << " sites (guard " << size_guard << ")\n";
  if (n_final > std::numeric_limits<int>::max() / 2)
    throw std::invalid_argument("MK lattice too large to index");

  Network net;
  net.n_sites = 2;
  net.edges = {{0, 1}};
  net.site_level = {0, 0};
  for (int gen = 1; gen <= g; ++gen) {
    std::vector<std::pair<int, int>> next;
    next.reserve(net.edges.size() * 2 * b);
    for (auto [u, v] : net.edges) {
      for (int k = 0; k < b; ++k) {
        const int mid = net.n_sites++;
        net.site_level.push_back(gen);
        next.emplace_back(u, mid);
        next.emplace_back(mid, v);
      }
    }
    net.edges = std::move(next);
  }
  net.descriptor.family = Family::MkHierarchical;
  net.descriptor.b = b;
  net.descriptor.l = 2;
  net.descriptor.g = g;
  return net;
}

bool is_connected(const Network& net) {
  if (net.n_sites <= 0) return false;
  std::vector<std::vector<int>> adj(net.n_sites);
  for (auto [u, v] : net.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(net.n_sites, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == net.n_sites;
}

Eigen::SparseMatrix<double> laplacian(const Network& net) {
  if (!is_connected(net))
    throw std::invalid_argument("laplacian: network is disconnected");
  using T = Eigen::Triplet<double>;
  std::vector<T> trip;
  trip.reserve(net.edges.size() * 2 + net.n_sites);
  std::vector<double> deg(net.n_sites, 0.0);
  for (auto [u, v] : net.edges) {
    trip.emplace_back(u, v, -1.0);
    trip.emplace_back(v, u, -1.0);
    deg[u] += 1.0;
    deg[v] += 1.0;
  }
  for (int i = 0; i < net.n_sites; ++i) trip.emplace_back(i, i, deg[i]);
  Eigen::SparseMatrix<double> lap(net.n_sites, net.n_sites);
  lap.setFromTriplets(trip.begin(), trip.end());
  return lap;
}

Eigen::MatrixXd laplacian_dense(const Network& net) {
  if (!is_connected(net))
    throw std::invalid_argument("laplacian: network is disconnected");
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(net.n_sites, net.n_sites);
  for (auto [u, v] : net.edges) {
    lap(u, u) += 1.0;
    lap(v, v) += 1.0;
    lap(u, v) -= 1.0;
    lap(v, u) -= 1.0;
  }
  return lap;
}

}  // namespace ctqw
