#pragma once

#include <iosfwd>
#include <string>

#include "ctqw/network.hpp"

namespace ctqw {

/// Edge-list text format:
///
///   N <n> FAMILY <name> PARAMS <key=value ...>
///   LEVELS <k>
///   <lo> <hi> <level>     (k lines, inclusive index ranges)
///   EDGES <m>
///   <u> <v>               (m lines)
void write_network(const Network& net, std::ostream& out);
void write_network_file(const Network& net, const std::string& path);

Network read_network(std::istream& in);
Network read_network_file(const std::string& path);

}  // namespace ctqw
