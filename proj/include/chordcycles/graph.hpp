#ifndef CHORDCYCLES_GRAPH_HPP
#define CHORDCYCLES_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chordcycles/errors.hpp"

namespace chords {

using Vertex = int;
using VertexList = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;  // normalized u < v

struct LoadStats {
  int dropped_self_loops = 0;
  int dropped_duplicates = 0;
};

// Simple undirected graph on vertices 0..n-1.  Adjacency lists are kept
// sorted ascending; parallel edges and self-loops are dropped at build time.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, const std::vector<Edge>& edges, LoadStats* stats = nullptr);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return edge_count_; }
  bool empty() const { return adjacency_.empty(); }

  const VertexList& neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
  bool has_edge(Vertex u, Vertex v) const;
  bool has_vertex(Vertex v) const { return v >= 0 && v < vertex_count(); }

  int min_degree() const;
  int max_degree() const;
  double average_degree() const;

  std::vector<Edge> edges() const;  // sorted, normalized

  bool operator==(const Graph& other) const = default;

 private:
  std::vector<VertexList> adjacency_;
  int edge_count_ = 0;
};

// ---- vertex set helpers (sorted unique vectors) ----

VertexList sorted_unique(VertexList xs);
bool set_contains(const VertexList& sorted_xs, Vertex v);
VertexList set_union(const VertexList& a, const VertexList& b);
VertexList set_difference(const VertexList& a, const VertexList& b);
VertexList set_intersection(const VertexList& a, const VertexList& b);

// 0/1 membership mask over the vertex range of a graph.
std::vector<char> make_mask(int n, const VertexList& xs);

// N(X): vertices outside xs with a neighbor in xs.
VertexList neighborhood(const Graph& g, const VertexList& xs);

// ---- paths and cycles ----

struct Path {
  VertexList vertices;
  int length() const { return static_cast<int>(vertices.size()) - 1; }  // edges
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
};

struct Cycle {
  VertexList vertices;  // each consecutive pair adjacent, back adjacent to front
  int length() const { return static_cast<int>(vertices.size()); }
};

struct ChordedCycle {
  Cycle cycle;
  std::vector<Edge> chords;  // normalized, sorted, between non-consecutive cycle vertices
  int chord_count() const { return static_cast<int>(chords.size()); }
};

bool is_path(const Graph& g, const Path& p);
bool is_cycle(const Graph& g, const Cycle& c);
// Checks cycle validity plus every listed chord: an edge of g between
// vertices that are non-consecutive on the cycle.
bool is_chorded_cycle(const Graph& g, const ChordedCycle& cc);

// ---- induced subgraphs ----

// Re-indexed induced subgraph together with the vertex translation maps.
struct Subgraph {
  Graph graph;
  VertexList to_parent;             // local id -> parent id, ascending
  std::vector<Vertex> from_parent;  // parent id -> local id or -1

  Vertex up(Vertex local) const { return to_parent[local]; }
  VertexList up(const VertexList& locals) const;
  Path up(const Path& p) const;
  Cycle up(const Cycle& c) const;
};

Subgraph induced_subgraph(const Graph& g, const VertexList& keep);

// ---- traversal ----

struct BfsResult {
  std::vector<int> dist;      // -1 when unreachable or blocked
  std::vector<Vertex> parent; // -1 at sources / unreached
};

BfsResult bfs(const Graph& g, const VertexList& sources, const std::vector<char>* blocked = nullptr);

// Component of v in g, optionally within the non-blocked vertices.
VertexList component_of(const Graph& g, Vertex v, const std::vector<char>* blocked = nullptr);
bool is_connected(const Graph& g);
// Largest connected component (ties: the one with the smallest vertex id).
VertexList largest_component(const Graph& g);

}  // namespace chords

#endif
