#include "spi/spi_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "spi/errors.hpp"

namespace spi {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

long long parse_int(const std::string& tok, const char* what) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw FormatError(std::string("expected integer for ") + what);
  }
  if (used != tok.size())
    throw FormatError(std::string("trailing characters in ") + what);
  return value;
}

std::string next_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line))
    throw FormatError(std::string("unexpected end of file before ") + what);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

PosetInstance read_spi(std::istream& in) {
  if (next_line(in, "header") != "SPI 1")
    throw FormatError("missing 'SPI 1' header");

  auto n_toks = tokens_of(next_line(in, "n line"));
  if (n_toks.size() != 2 || n_toks[0] != "n")
    throw FormatError("malformed n line");
  long long n = parse_int(n_toks[1], "n");
  if (n < 1 || n > 50'000'000) throw FormatError("n out of range");

  auto m_toks = tokens_of(next_line(in, "edges line"));
  if (m_toks.size() != 2 || m_toks[0] != "edges")
    throw FormatError("malformed edges line");
  long long m = parse_int(m_toks[1], "edge count");
  if (m < 0 || m >= n * std::max<long long>(n, 2))
    throw FormatError("edge count out of range");

  PosetInstance inst;
  inst.n = static_cast<int>(n);
  inst.cover_edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    auto toks = tokens_of(next_line(in, "edge"));
    if (toks.size() != 2) throw FormatError("malformed edge line");
    long long u = parse_int(toks[0], "edge endpoint");
    long long v = parse_int(toks[1], "edge endpoint");
    if (u < 1 || u > n || v < 1 || v > n)
      throw FormatError("edge endpoint out of range");
    inst.cover_edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }

  auto o_toks = tokens_of(next_line(in, "order line"));
  if (o_toks.size() != static_cast<std::size_t>(n) + 1 || o_toks[0] != "order")
    throw FormatError("malformed order line");
  inst.hidden_order.reserve(static_cast<std::size_t>(n));
  for (long long i = 1; i <= n; ++i) {
    long long v = parse_int(o_toks[static_cast<std::size_t>(i)], "order entry");
    if (v < 1 || v > n) throw FormatError("order entry out of range");
    inst.hidden_order.push_back(static_cast<int>(v));
  }

  std::string rest;
  while (std::getline(in, rest)) {
    if (!tokens_of(rest).empty())
      throw FormatError("unexpected content after order line");
  }

  if (auto defect = instance_defect(inst)) throw FormatError(*defect);
  return inst;
}

PosetInstance load_spi(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return read_spi(in);
}

void write_spi(std::ostream& out, const PosetInstance& inst) {
  validate_instance(inst);
  auto edges = inst.cover_edges;
  std::sort(edges.begin(), edges.end());
  out << "SPI 1\n";
  out << "n " << inst.n << "\n";
  out << "edges " << edges.size() << "\n";
  for (const auto& [u, v] : edges) out << u << " " << v << "\n";
  out << "order";
  for (int v : inst.hidden_order) out << " " << v;
  out << "\n";
}

void save_spi(const std::string& path, const PosetInstance& inst) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  write_spi(out, inst);
  out.flush();
  if (!out) throw FormatError("write failed for " + path);
}

}  // namespace spi
