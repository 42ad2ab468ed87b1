#include "rlm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rlm/error.hpp"

namespace rlm {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  return out;
}

/// Next line that is not blank, with its 1-based number.
bool next_line(std::istream& in, std::string& line, std::size_t& number) {
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

/// Parses exactly the fields requested; trailing tokens are an error.
template <class... T>
void fields(const std::string& line, std::size_t number, T&... out) {
  std::istringstream ss(line);
  if (!(ss >> ... >> out)) fail(number, "expected " + std::to_string(sizeof...(T)) + " fields");
  std::string rest;
  if (ss >> rest) fail(number, "unexpected trailing '" + rest + "'");
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t number = 0;
  if (!next_line(in, line, number)) throw ParseError("empty graph file");
  long long n = 0;
  long long m = 0;
  fields(line, number, n, m);
  if (n < 0 || m < 0) fail(number, "negative count");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(in, line, number)) throw ParseError("expected " + std::to_string(m) + " edges");
    long long x = 0;
    long long y = 0;
    fields(line, number, x, y);
    if (x < 0 || y < 0 || x >= n || y >= n) fail(number, "vertex id out of range");
    if (x >= y) fail(number, "edge must be written with x < y");
    const Edge e{static_cast<Vertex>(x), static_cast<Vertex>(y)};
    if (!edges.empty() && !(edges.back() < e)) fail(number, "edges not in ascending order");
    edges.push_back(e);
  }
  if (next_line(in, line, number)) fail(number, "content after the last edge");
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph read_graph(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.x << ' ' << e.y << '\n';
}

void write_graph(const std::filesystem::path& path, const Graph& g) {
  auto out = open_out(path);
  write_graph(out, g);
}

std::vector<std::size_t> read_degrees(std::istream& in) {
  std::vector<std::size_t> degrees;
  std::string line;
  std::size_t number = 0;
  while (next_line(in, line, number)) {
    long long d = 0;
    fields(line, number, d);
    if (d < 0) fail(number, "negative degree");
    degrees.push_back(static_cast<std::size_t>(d));
  }
  return degrees;
}

std::vector<std::size_t> read_degrees(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_degrees(in);
}

void write_degrees(std::ostream& out, const std::vector<std::size_t>& degrees) {
  for (std::size_t d : degrees) out << d << '\n';
}

MarkFile read_marks(std::istream& in, std::size_t num_edges) {
  std::string line;
  std::size_t number = 0;
  if (!next_line(in, line, number)) throw ParseError("empty mark file");
  MarkFile file;
  {
    std::istringstream ss(line);
    std::string hash;
    if (!(ss >> hash) || hash != "#") fail(number, "expected header '# t u seed'");
    std::string rest = line.substr(line.find('#') + 1);
    fields(rest, number, file.t, file.u, file.seed);
  }
  std::vector<Mark> marks;
  double previous = -1.0;
  while (next_line(in, line, number)) {
    long long e = 0;
    double s = 0.0;
    std::string kind;
    fields(line, number, e, s, kind);
    if (e < 0 || static_cast<std::size_t>(e) >= num_edges) fail(number, "edge id out of range");
    if (!(s >= 0.0 && s < 1.0)) fail(number, "time outside [0, 1)");
    if (s == previous) fail(number, "duplicate mark time " + format_number(s));
    if (s < previous) fail(number, "marks not sorted by time");
    previous = s;
    if (kind != "X" && kind != "B") fail(number, "kind must be X or B");
    marks.push_back({static_cast<EdgeId>(e), s, kind == "X" ? MarkKind::Cross : MarkKind::Bar});
  }
  file.marks = MarkConfig(num_edges, std::move(marks));
  return file;
}

MarkFile read_marks(const std::filesystem::path& path, std::size_t num_edges) {
  auto in = open_in(path);
  return read_marks(in, num_edges);
}

void write_marks(std::ostream& out, const MarkFile& file) {
  out << "# " << format_number(file.t) << ' ' << format_number(file.u) << ' ' << file.seed << '\n';
  for (const Mark& m : file.marks.marks()) {
    out << m.edge << ' ' << format_number(m.time) << ' '
        << (m.kind == MarkKind::Cross ? 'X' : 'B') << '\n';
  }
}

void write_marks(const std::filesystem::path& path, const MarkFile& file) {
  auto out = open_out(path);
  write_marks(out, file);
}

}  // namespace rlm
