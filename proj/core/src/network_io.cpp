#include "ctqw/network_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ctqw {

namespace {

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

NetworkDescriptor parse_descriptor(const std::string& family,
                                   const std::string& params) {
  NetworkDescriptor d;
  d.family = family_from_name(family);
  std::stringstream ss(params);
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad PARAMS token: " + tok);
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "n") d.n = std::stoi(val);
    else if (key == "b") d.b = std::stoi(val);
    else if (key == "l") d.l = std::stoi(val);
    else if (key == "g") d.g = std::stoi(val);
    else if (key == "sides") d.sides = parse_int_list(val);
    else if (key == "periodic") d.periodic = std::stoi(val) != 0;
    else throw std::runtime_error("unknown PARAMS key: " + key);
  }
  return d;
}

}  // namespace

void write_network(const Network& net, std::ostream& out) {
  out << "N " << net.n_sites << " FAMILY " << family_name(net.descriptor.family)
      << " PARAMS " << net.descriptor.params_string() << "\n";
  // run-length encode the level labels as inclusive index ranges
  std::vector<std::tuple<int, int, int>> ranges;
  if (net.has_levels()) {
    int lo = 0;
    for (int i = 1; i <= net.n_sites; ++i) {
      if (i == net.n_sites || net.site_level[i] != net.site_level[lo]) {
        ranges.emplace_back(lo, i - 1, net.site_level[lo]);
        lo = i;
      }
    }
  }
  out << "LEVELS " << ranges.size() << "\n";
  for (auto [lo, hi, lvl] : ranges) out << lo << " " << hi << " " << lvl << "\n";
  out << "EDGES " << net.edges.size() << "\n";
  for (auto [u, v] : net.edges) out << u << " " << v << "\n";
}

void write_network_file(const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_network(net, out);
}

Network read_network(std::istream& in) {
  std::string kw, family, params;
  Network net;
  if (!(in >> kw >> net.n_sites) || kw != "N")
    throw std::runtime_error("network file: expected 'N <n>' header");
  if (!(in >> kw >> family) || kw != "FAMILY")
    throw std::runtime_error("network file: expected 'FAMILY <name>'");
  if (!(in >> kw) || kw != "PARAMS")
    throw std::runtime_error("network file: expected 'PARAMS'");
  std::getline(in, params);
  net.descriptor = parse_descriptor(family, params);

  size_t n_ranges = 0;
  if (!(in >> kw >> n_ranges) || kw != "LEVELS")
    throw std::runtime_error("network file: expected 'LEVELS <k>'");
  if (n_ranges > 0) net.site_level.assign(net.n_sites, -1);
  for (size_t r = 0; r < n_ranges; ++r) {
    int lo, hi, lvl;
    if (!(in >> lo >> hi >> lvl))
      throw std::runtime_error("network file: bad LEVELS range");
    if (lo < 0 || hi >= net.n_sites || lo > hi)
      throw std::runtime_error("network file: LEVELS range out of bounds");
    for (int i = lo; i <= hi; ++i) net.site_level[i] = lvl;
  }

  size_t n_edges = 0;
  if (!(in >> kw >> n_edges) || kw != "EDGES")
    throw std::runtime_error("network file: expected 'EDGES <m>'");
  net.edges.reserve(n_edges);
  for (size_t e = 0; e < n_edges; ++e) {
    int u, v;
    if (!(in >> u >> v)) throw std::runtime_error("network file: bad edge line");
    if (u < 0 || v < 0 || u >= net.n_sites || v >= net.n_sites)
      throw std::runtime_error("network file: edge endpoint out of range");
    net.edges.emplace_back(u, v);
  }
  return net;
}

Network read_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open network file: " + path);
  return read_network(in);
}

}  // namespace ctqw
