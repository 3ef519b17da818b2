#pragma once

#include <iosfwd>
#include <string>

#include "spi/poset.hpp"

namespace spi {

// SPI v1 text format:
//   SPI 1
//   n <n>
//   edges <m>
//   <u> <v>           (m lines, ascending lexicographic)
//   order <i1> ... <in>
// Readers throw FormatError on malformed input, duplicate or self-loop
// edges, cycles, or an order that is not a linear extension.

PosetInstance read_spi(std::istream& in);
PosetInstance load_spi(const std::string& path);

void write_spi(std::ostream& out, const PosetInstance& inst);
void save_spi(const std::string& path, const PosetInstance& inst);

}  // namespace spi
