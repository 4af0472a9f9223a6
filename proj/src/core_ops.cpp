#include "chordcycles/core_ops.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stack>

namespace chords {

Subgraph min_degree_core(const Graph& g, int d) {
  require(d >= 0, "min_degree_core: d must be non-negative");
  const int n = g.vertex_count();
  std::vector<int> deg(n);
  std::vector<char> removed(n, 0);
  VertexList queue;
  for (int v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < d) {
      removed[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.back();
    queue.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (removed[w]) continue;
      if (--deg[w] < d) {
        removed[w] = 1;
        queue.push_back(w);
      }
    }
  }
  VertexList keep;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) keep.push_back(v);
  Subgraph core = induced_subgraph(g, keep);
  verify(core.graph.vertex_count() == 0 || core.graph.min_degree() >= d,
         "min_degree_core: peeling did not reach the degree bound");
  return core;
}

BlockCutTree block_cut_tree(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> pre(n, -1), low(n, 0);
  std::vector<Edge> edge_stack;
  int clock = 0;

  struct Frame {
    Vertex v;
    Vertex parent;
    size_t next = 0;
  };
  std::vector<VertexList> blocks;
  auto pop_block = [&](const Edge& top) {
    VertexList verts;
    while (true) {
      Edge e = edge_stack.back();
      edge_stack.pop_back();
      verts.push_back(e.first);
      verts.push_back(e.second);
      if (e == top) break;
    }
    blocks.push_back(sorted_unique(std::move(verts)));
  };

  for (int root = 0; root < n; ++root) {
    if (pre[root] >= 0 || g.degree(root) == 0) continue;
    std::stack<Frame> stack;
    stack.push({root, -1});
    pre[root] = low[root] = clock++;
    while (!stack.empty()) {
      Frame& f = stack.top();
      const VertexList& nbrs = g.neighbors(f.v);
      if (f.next < nbrs.size()) {
        Vertex w = nbrs[f.next++];
        if (w == f.parent) continue;
        if (pre[w] < 0) {
          edge_stack.push_back({f.v, w});
          pre[w] = low[w] = clock++;
          stack.push({w, f.v});
        } else if (pre[w] < pre[f.v]) {
          edge_stack.push_back({f.v, w});
          low[f.v] = std::min(low[f.v], pre[w]);
        }
      } else {
        Frame done = f;
        stack.pop();
        if (stack.empty()) continue;
        Frame& up = stack.top();
        low[up.v] = std::min(low[up.v], low[done.v]);
        if (low[done.v] >= pre[up.v]) pop_block({up.v, done.v});
      }
    }
  }

  // A vertex is a cut vertex iff it lies in at least two blocks.
  BlockCutTree t;
  t.blocks = std::move(blocks);
  std::vector<int> containing(n, 0);
  for (const VertexList& b : t.blocks)
    for (Vertex v : b) ++containing[v];
  for (int v = 0; v < n; ++v)
    if (containing[v] >= 2) t.cut_vertices.push_back(v);
  for (int i = 0; i < static_cast<int>(t.blocks.size()); ++i)
    for (Vertex v : t.blocks[i])
      if (containing[v] >= 2) t.tree_edges.push_back({i, v});
  return t;
}

ChordedCycle chords_of(const Graph& g, const Cycle& cycle) {
  require(is_cycle(g, cycle), "chords_of: not a cycle of the graph");
  const VertexList& vs = cycle.vertices;
  const int len = static_cast<int>(vs.size());
  std::vector<int> pos(g.vertex_count(), -1);
  for (int i = 0; i < len; ++i) pos[vs[i]] = i;
  ChordedCycle cc{cycle, {}};
  for (int i = 0; i < len; ++i) {
    Vertex u = vs[i];
    for (Vertex v : g.neighbors(u)) {
      if (u > v) continue;
      int j = pos[v];
      if (j < 0) continue;
      int gap = std::abs(i - j);
      if (gap == 1 || gap == len - 1) continue;
      cc.chords.push_back({u, v});
    }
  }
  std::sort(cc.chords.begin(), cc.chords.end());
  return cc;
}

namespace {

std::uint64_t pack_pair(Vertex a, Vertex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// One representative C4 (a, v1, b, v2) per vertex pair {a,b} having at least
// two common neighbors.
template <class Adjacency>
std::vector<std::array<Vertex, 4>> c4_representatives(const Adjacency& adj) {
  std::vector<std::pair<std::uint64_t, Vertex>> wedges;
  for (Vertex v = 0; v < static_cast<Vertex>(adj.size()); ++v) {
    const VertexList& nbrs = adj[v];
    for (size_t i = 0; i < nbrs.size(); ++i)
      for (size_t j = i + 1; j < nbrs.size(); ++j)
        wedges.push_back({pack_pair(nbrs[i], nbrs[j]), v});
  }
  std::sort(wedges.begin(), wedges.end());
  std::vector<std::array<Vertex, 4>> found;
  for (size_t i = 0; i + 1 < wedges.size(); ++i) {
    if (wedges[i].first != wedges[i + 1].first) continue;
    Vertex a = static_cast<Vertex>(wedges[i].first >> 32);
    Vertex b = static_cast<Vertex>(wedges[i].first & 0xffffffffu);
    found.push_back({a, wedges[i].second, b, wedges[i + 1].second});
    while (i + 1 < wedges.size() && wedges[i + 1].first == wedges[i].first) ++i;
  }
  return found;
}

std::vector<VertexList> adjacency_of(const Graph& g) {
  std::vector<VertexList> adj(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) adj[v] = g.neighbors(v);
  return adj;
}

}  // namespace

std::optional<Cycle> find_c4(const Graph& g) {
  auto reps = c4_representatives(adjacency_of(g));
  if (reps.empty()) return std::nullopt;
  const auto& r = reps.front();
  Cycle c{{r[0], r[1], r[2], r[3]}};
  verify(is_cycle(g, c), "find_c4: produced an invalid 4-cycle");
  return c;
}

bool is_c4_free(const Graph& g) { return !find_c4(g).has_value(); }

C4FreeResult extract_c4_free_subgraph(const Graph& g, double target_avg_degree) {
  std::vector<VertexList> adj = adjacency_of(g);
  auto degree = [&](Vertex v) { return static_cast<int>(adj[v].size()); };
  auto drop_edge = [&](const Edge& e) {
    auto& a = adj[e.first];
    auto& b = adj[e.second];
    a.erase(std::lower_bound(a.begin(), a.end(), e.second));
    b.erase(std::lower_bound(b.begin(), b.end(), e.first));
  };
  auto add_edge = [&](const Edge& e) {
    auto& a = adj[e.first];
    auto& b = adj[e.second];
    a.insert(std::lower_bound(a.begin(), a.end(), e.second), e.second);
    b.insert(std::lower_bound(b.begin(), b.end(), e.first), e.first);
  };

  std::vector<Edge> removed;
  while (true) {
    auto reps = c4_representatives(adj);
    if (reps.empty()) break;
    // Greedy hitting set over this round's representatives: repeatedly drop
    // the edge lying on the most of them; ties prefer high-degree endpoints
    // so low-degree vertices keep their edges.
    std::map<Edge, int> edge_hits;
    auto rep_edge = [](const std::array<Vertex, 4>& r, int k) {
      Vertex u = r[k], v = r[(k + 1) % 4];
      if (u > v) std::swap(u, v);
      return Edge{u, v};
    };
    for (const auto& r : reps)
      for (int k = 0; k < 4; ++k) ++edge_hits[rep_edge(r, k)];
    std::vector<char> dead(reps.size(), 0);
    size_t alive = reps.size();
    while (alive > 0) {
      Edge best{-1, -1};
      long long best_score = -1;
      for (const auto& [e, hits] : edge_hits) {
        if (hits <= 0) continue;
        long long score = static_cast<long long>(hits) * 1000000 +
                          std::min(degree(e.first), degree(e.second)) * 1000 +
                          std::max(degree(e.first), degree(e.second));
        if (score > best_score) {
          best_score = score;
          best = e;
        }
      }
      if (best.first < 0) break;
      for (size_t i = 0; i < reps.size(); ++i) {
        if (dead[i]) continue;
        bool uses_best = false;
        for (int k = 0; k < 4; ++k)
          if (rep_edge(reps[i], k) == best) uses_best = true;
        if (!uses_best) continue;
        dead[i] = 1;
        --alive;
        for (int k = 0; k < 4; ++k) --edge_hits[rep_edge(reps[i], k)];
      }
      edge_hits[best] = 0;
      drop_edge(best);
      removed.push_back(best);
    }
  }

  // Maximality pass: re-add any removed edge that closes no 4-cycle.  Adding
  // (u,v) creates a C4 exactly when the graph has a u-v path of length 3.
  for (const Edge& e : removed) {
    std::vector<char> adj_u(adj.size(), 0);
    for (Vertex x : adj[e.first]) adj_u[x] = 1;
    bool creates_c4 = false;
    for (Vertex w : adj[e.second]) {
      if (w == e.first) continue;
      for (Vertex x : adj[w])
        if (x != e.second && adj_u[x]) {
          creates_c4 = true;
          break;
        }
      if (creates_c4) break;
    }
    if (!creates_c4) add_edge(e);
  }

  std::vector<Edge> final_edges;
  for (Vertex u = 0; u < static_cast<Vertex>(adj.size()); ++u)
    for (Vertex v : adj[u])
      if (u < v) final_edges.push_back({u, v});
  Graph out(g.vertex_count(), final_edges);
  verify(is_c4_free(out), "extract_c4_free_subgraph: output has a 4-cycle");
  return C4FreeResult{out, out.average_degree(), g.edge_count() - out.edge_count(),
                      out.average_degree() < target_avg_degree};
}

int girth(const Graph& g) {
  int best = 0;
  for (int root = 0; root < g.vertex_count(); ++root) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<Vertex> parent(g.vertex_count(), -1);
    VertexList queue{root};
    dist[root] = 0;
    size_t head = 0;
    while (head < queue.size()) {
      Vertex v = queue[head++];
      if (best > 0 && 2 * dist[v] >= best) break;
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        } else if (w != parent[v]) {
          int len = dist[v] + dist[w] + 1;
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

}  // namespace chords
