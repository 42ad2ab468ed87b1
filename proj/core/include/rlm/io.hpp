#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rlm/graph.hpp"
#include "rlm/marks.hpp"

namespace rlm {

/// Shortest round-trip text for a double: 17 significant digits.
std::string format_number(double x);

/// Graph file: "n m", then m lines "x y" with x < y, 0-based, in ascending
/// lexicographic order. Anything else is a ParseError.
Graph read_graph(std::istream& in);
Graph read_graph(const std::filesystem::path& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph(const std::filesystem::path& path, const Graph& g);

/// Degree sequence: one nonnegative integer per line.
std::vector<std::size_t> read_degrees(std::istream& in);
std::vector<std::size_t> read_degrees(const std::filesystem::path& path);
void write_degrees(std::ostream& out, const std::vector<std::size_t>& degrees);

/// Mark file: a header line "# t u seed", then one "edge_id time kind" line
/// per mark with kind X (cross) or B (bar), sorted by time. Duplicate times
/// and out-of-range edge ids are ParseErrors.
struct MarkFile {
  double t = 0.0;
  double u = 0.0;
  std::uint64_t seed = 0;
  MarkConfig marks;
};

MarkFile read_marks(std::istream& in, std::size_t num_edges);
MarkFile read_marks(const std::filesystem::path& path, std::size_t num_edges);
void write_marks(std::ostream& out, const MarkFile& file);
void write_marks(const std::filesystem::path& path, const MarkFile& file);

}  // namespace rlm
