#include "chordcycles/io.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace chords {

namespace {

std::string at_line(int line_no, const std::string& message) {
  return "line " + std::to_string(line_no) + ": " + message;
}

bool only_whitespace_left(std::istringstream& ss) {
  std::string rest;
  ss >> rest;
  return rest.empty();
}

Graph load_edge_list(std::istream& in, LoadStats* stats) {
  std::vector<Edge> edges;
  Vertex max_id = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    Vertex u, v;
    if (!(ss >> u)) continue;  // blank or comment-only line
    if (!(ss >> v)) throw ParseError(at_line(line_no, "expected two vertex ids"));
    if (!only_whitespace_left(ss))
      throw ParseError(at_line(line_no, "trailing tokens after edge"));
    if (u < 0 || v < 0) throw ParseError(at_line(line_no, "negative vertex id"));
    max_id = std::max({max_id, u, v});
    edges.push_back({u, v});
  }
  if (edges.empty()) throw ParseError("no edges in input");
  return Graph(max_id + 1, edges, stats);
}

Graph load_dimacs(std::istream& in, LoadStats* stats) {
  std::vector<Edge> edges;
  int n = -1;
  long long declared_m = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      if (n >= 0) throw ParseError(at_line(line_no, "duplicate problem line"));
      std::string kind;
      if (!(ss >> kind >> n >> declared_m) || kind != "edge" || n < 0 || declared_m < 0)
        throw ParseError(at_line(line_no, "expected 'p edge <n> <m>'"));
      continue;
    }
    if (tag == "e") {
      if (n < 0) throw ParseError(at_line(line_no, "edge before problem line"));
      Vertex u, v;
      if (!(ss >> u >> v) || !only_whitespace_left(ss))
        throw ParseError(at_line(line_no, "expected 'e <u> <v>'"));
      if (u < 1 || u > n || v < 1 || v > n)
        throw ParseError(at_line(line_no, "vertex id outside 1.." + std::to_string(n)));
      edges.push_back({u - 1, v - 1});
      continue;
    }
    throw ParseError(at_line(line_no, "unknown line tag '" + tag + "'"));
  }
  if (n < 0) throw ParseError("missing 'p edge' problem line");
  return Graph(n, edges, stats);
}

}  // namespace

Graph load_graph(std::istream& in, GraphFormat format, LoadStats* stats) {
  switch (format) {
    case GraphFormat::edge_list:
      return load_edge_list(in, stats);
    case GraphFormat::dimacs:
      return load_dimacs(in, stats);
  }
  throw ParseError("unknown graph format");
}

Graph load_graph_file(const std::string& path, GraphFormat format, LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_graph(in, format, stats);
}

GraphFormat parse_format(const std::string& name) {
  if (name == "edge-list") return GraphFormat::edge_list;
  if (name == "dimacs") return GraphFormat::dimacs;
  throw ParseError("unknown format '" + name + "' (expected edge-list or dimacs)");
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

}  // namespace chords
