#include "chordcycles/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace chords {

Graph::Graph(int vertex_count, const std::vector<Edge>& edges, LoadStats* stats) {
  require(vertex_count >= 0, "vertex count must be non-negative");
  adjacency_.assign(vertex_count, {});
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  int self_loops = 0;
  for (auto [u, v] : edges) {
    require(u >= 0 && u < vertex_count && v >= 0 && v < vertex_count,
            "edge endpoint out of range");
    if (u == v) {
      ++self_loops;
      continue;
    }
    if (u > v) std::swap(u, v);
    normalized.push_back({u, v});
  }
  std::sort(normalized.begin(), normalized.end());
  int duplicates = 0;
  Edge last{-1, -1};
  for (const Edge& e : normalized) {
    if (e == last) {
      ++duplicates;
      continue;
    }
    last = e;
    adjacency_[e.first].push_back(e.second);
    adjacency_[e.second].push_back(e.first);
    ++edge_count_;
  }
  for (VertexList& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  if (stats != nullptr) {
    stats->dropped_self_loops = self_loops;
    stats->dropped_duplicates = duplicates;
  }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!has_vertex(u) || !has_vertex(v)) return false;
  const VertexList& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

int Graph::min_degree() const {
  int best = 0;
  for (int v = 0; v < vertex_count(); ++v)
    if (v == 0 || degree(v) < best) best = degree(v);
  return best;
}

int Graph::max_degree() const {
  int best = 0;
  for (int v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
  return best;
}

double Graph::average_degree() const {
  if (vertex_count() == 0) return 0.0;
  return 2.0 * edge_count_ / vertex_count();
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int u = 0; u < vertex_count(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

VertexList sorted_unique(VertexList xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

bool set_contains(const VertexList& sorted_xs, Vertex v) {
  return std::binary_search(sorted_xs.begin(), sorted_xs.end(), v);
}

VertexList set_union(const VertexList& a, const VertexList& b) {
  VertexList out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexList set_difference(const VertexList& a, const VertexList& b) {
  VertexList out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexList set_intersection(const VertexList& a, const VertexList& b) {
  VertexList out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<char> make_mask(int n, const VertexList& xs) {
  std::vector<char> mask(n, 0);
  for (Vertex v : xs) mask[v] = 1;
  return mask;
}

VertexList neighborhood(const Graph& g, const VertexList& xs) {
  std::vector<char> in_x = make_mask(g.vertex_count(), xs);
  std::vector<char> seen(g.vertex_count(), 0);
  VertexList out;
  for (Vertex v : xs)
    for (Vertex w : g.neighbors(v))
      if (!in_x[w] && !seen[w]) {
        seen[w] = 1;
        out.push_back(w);
      }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_path(const Graph& g, const Path& p) {
  const VertexList& vs = p.vertices;
  if (vs.empty()) return false;
  for (Vertex v : vs)
    if (!g.has_vertex(v)) return false;
  if (sorted_unique(vs).size() != vs.size()) return false;
  for (size_t i = 0; i + 1 < vs.size(); ++i)
    if (!g.has_edge(vs[i], vs[i + 1])) return false;
  return true;
}

bool is_cycle(const Graph& g, const Cycle& c) {
  const VertexList& vs = c.vertices;
  if (vs.size() < 3) return false;
  if (!is_path(g, Path{vs})) return false;
  return g.has_edge(vs.back(), vs.front());
}

bool is_chorded_cycle(const Graph& g, const ChordedCycle& cc) {
  if (!is_cycle(g, cc.cycle)) return false;
  const VertexList& vs = cc.cycle.vertices;
  const int n = static_cast<int>(vs.size());
  std::vector<int> pos(g.vertex_count(), -1);
  for (int i = 0; i < n; ++i) pos[vs[i]] = i;
  for (auto [u, v] : cc.chords) {
    if (u >= v) return false;
    if (!g.has_edge(u, v)) return false;
    if (!g.has_vertex(u) || !g.has_vertex(v)) return false;
    if (pos[u] < 0 || pos[v] < 0) return false;
    int gap = std::abs(pos[u] - pos[v]);
    if (gap == 1 || gap == n - 1) return false;  // consecutive on the cycle
  }
  return true;
}

VertexList Subgraph::up(const VertexList& locals) const {
  VertexList out;
  out.reserve(locals.size());
  for (Vertex v : locals) out.push_back(to_parent[v]);
  std::sort(out.begin(), out.end());
  return out;
}

Path Subgraph::up(const Path& p) const {
  Path out;
  out.vertices.reserve(p.vertices.size());
  for (Vertex v : p.vertices) out.vertices.push_back(to_parent[v]);
  return out;
}

Cycle Subgraph::up(const Cycle& c) const {
  Cycle out;
  out.vertices.reserve(c.vertices.size());
  for (Vertex v : c.vertices) out.vertices.push_back(to_parent[v]);
  return out;
}

Subgraph induced_subgraph(const Graph& g, const VertexList& keep) {
  Subgraph sub;
  sub.to_parent = sorted_unique(keep);
  sub.from_parent.assign(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(sub.to_parent.size()); ++i) {
    require(g.has_vertex(sub.to_parent[i]), "induced_subgraph: vertex out of range");
    sub.from_parent[sub.to_parent[i]] = i;
  }
  std::vector<Edge> edges;
  for (Vertex u : sub.to_parent)
    for (Vertex v : g.neighbors(u))
      if (u < v && sub.from_parent[v] >= 0)
        edges.push_back({sub.from_parent[u], sub.from_parent[v]});
  sub.graph = Graph(static_cast<int>(sub.to_parent.size()), edges);
  return sub;
}

BfsResult bfs(const Graph& g, const VertexList& sources, const std::vector<char>* blocked) {
  BfsResult r;
  r.dist.assign(g.vertex_count(), -1);
  r.parent.assign(g.vertex_count(), -1);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    require(g.has_vertex(s), "bfs: source out of range");
    if (blocked != nullptr && (*blocked)[s]) continue;
    if (r.dist[s] == 0) continue;
    r.dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (r.dist[w] >= 0) continue;
      if (blocked != nullptr && (*blocked)[w]) continue;
      r.dist[w] = r.dist[v] + 1;
      r.parent[w] = v;
      queue.push_back(w);
    }
  }
  return r;
}

VertexList component_of(const Graph& g, Vertex v, const std::vector<char>* blocked) {
  if (blocked != nullptr && (*blocked)[v]) return {};
  BfsResult r = bfs(g, {v}, blocked);
  VertexList out;
  for (int u = 0; u < g.vertex_count(); ++u)
    if (r.dist[u] >= 0) out.push_back(u);
  return out;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  return static_cast<int>(component_of(g, 0).size()) == g.vertex_count();
}

VertexList largest_component(const Graph& g) {
  std::vector<char> seen(g.vertex_count(), 0);
  VertexList best;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (seen[v]) continue;
    VertexList comp = component_of(g, v);
    for (Vertex u : comp) seen[u] = 1;
    if (comp.size() > best.size()) best = comp;
  }
  return best;
}

}  // namespace chords
