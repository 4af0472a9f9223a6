#include "chordcycles/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include "chordcycles/cycles.hpp"
#include "chordcycles/errors.hpp"

namespace chords {

std::uint64_t graph_content_hash(const Graph& g) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(g.vertex_count()));
  for (Edge e : g.edges()) {
    mix(static_cast<std::uint64_t>(e.first));
    mix(static_cast<std::uint64_t>(e.second));
  }
  return h;
}

OracleResult oracle_max_chorded_cycle(const Graph& g, int limit_n) {
  int n = g.vertex_count();
  require(limit_n >= 0 && limit_n <= 24, "oracle_max_chorded_cycle: limit out of range");
  require(n <= limit_n, "oracle_max_chorded_cycle: graph exceeds the exhaustive size limit");
  OracleResult out;
  out.instance_hash = graph_content_hash(g);
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : g.neighbors(v)) adj[v] |= 1u << w;

  auto chords_in = [&](const VertexList& cyc) {
    int len = static_cast<int>(cyc.size());
    int chords = 0;
    for (int i = 0; i < len; ++i)
      for (int j = i + 1; j < len; ++j) {
        int gap = std::min(j - i, len - (j - i));
        if (gap >= 2 && ((adj[cyc[i]] >> cyc[j]) & 1u)) ++chords;
      }
    return chords;
  };

  VertexList path;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  VertexList best_cycle;
  int best_chords = -1;
  auto consider = [&]() {
    ++out.cycles_enumerated;
    int len = static_cast<int>(path.size());
    int chords = chords_in(path);
    auto it = out.per_length.find(len);
    if (it == out.per_length.end())
      out.per_length[len] = chords;
    else
      it->second = std::max(it->second, chords);
    bool better =
        chords > best_chords ||
        (chords == best_chords &&
         (len < static_cast<int>(best_cycle.size()) ||
          (len == static_cast<int>(best_cycle.size()) && path < best_cycle)));
    if (better) {
      best_chords = chords;
      best_cycle = path;
    }
  };
  // canonical form: the root is the smallest vertex and the second vertex is
  // below the last, so each cycle is seen exactly once
  std::function<void(Vertex, Vertex)> dfs = [&](Vertex root, Vertex v) {
    for (Vertex w : g.neighbors(v)) {
      if (w == root && path.size() >= 3 && path[1] < path.back()) consider();
      if (w <= root || used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      dfs(root, w);
      path.pop_back();
      used[w] = 0;
    }
  };
  for (Vertex r = 0; r < n; ++r) {
    path.assign(1, r);
    std::fill(used.begin(), used.end(), char(0));
    used[r] = 1;
    dfs(r, r);
  }

  if (best_chords >= 0) {
    out.max_chords = best_chords;
    ChordedCycle cc;
    cc.cycle.vertices = best_cycle;
    int len = static_cast<int>(best_cycle.size());
    for (int i = 0; i < len; ++i)
      for (int j = i + 1; j < len; ++j) {
        int gap = std::min(j - i, len - (j - i));
        if (gap >= 2 && ((adj[best_cycle[i]] >> best_cycle[j]) & 1u))
          cc.chords.push_back(make_edge(best_cycle[i], best_cycle[j]));
      }
    std::sort(cc.chords.begin(), cc.chords.end());
    out.best = std::move(cc);
  }
  return out;
}

VertexList oracle_rotation_closure(const Graph& g, const Path& start) {
  require(is_path(g, start), "oracle_rotation_closure: start is not a path");
  std::set<VertexList> seen{start.vertices};
  std::deque<VertexList> queue{start.vertices};
  std::set<Vertex> ends;
  std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
  while (!queue.empty()) {
    VertexList p = queue.front();
    queue.pop_front();
    ends.insert(p.back());
    int t = static_cast<int>(p.size()) - 1;
    for (int i = 0; i <= t; ++i) pos[p[i]] = i;
    for (Vertex w : g.neighbors(p[t])) {
      int i = pos[w];
      if (i < 0 || i > t - 2) continue;
      VertexList q(p.begin(), p.begin() + i + 1);
      q.insert(q.end(), p.rbegin(), p.rend() - (i + 1));
      if (seen.insert(q).second) queue.push_back(q);
    }
    for (int i = 0; i <= t; ++i) pos[p[i]] = -1;
    require(seen.size() <= 2000000, "oracle_rotation_closure: state space too large");
  }
  return VertexList(ends.begin(), ends.end());
}

namespace {

// prefix-precedes-extension enumeration of vertex sets up to n/2, reporting
// the first set failing the requirement
std::optional<VertexList> first_violator(
    const Graph& g, const std::function<double(int)>& required_neighbors, int min_size) {
  int n = g.vertex_count();
  require(n <= 20, "expansion oracle: graph too large for exhaustion");
  int half = n / 2;
  if (half < 1) return std::nullopt;
  VertexList s;
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  std::optional<VertexList> found;
  auto neighbor_count = [&]() {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int c = 0;
    for (Vertex v : s)
      for (Vertex w : g.neighbors(v))
        if (!in[w] && !seen[w]) {
          seen[w] = 1;
          ++c;
        }
    return c;
  };
  std::function<bool(Vertex)> rec = [&](Vertex next) {
    int size = static_cast<int>(s.size());
    if (size >= min_size && size >= 1) {
      if (static_cast<double>(neighbor_count()) < required_neighbors(size)) {
        found = s;
        return true;
      }
    }
    if (size == half) return false;
    for (Vertex v = next; v < n; ++v) {
      s.push_back(v);
      in[v] = 1;
      bool hit = rec(v + 1);
      s.pop_back();
      in[v] = 0;
      if (hit) return true;
    }
    return false;
  };
  rec(0);
  return found;
}

}  // namespace

std::optional<VertexList> oracle_alpha_expansion_witness(const Graph& g, double alpha) {
  return first_violator(
      g, [alpha](int size) { return alpha * size; }, 1);
}

std::optional<VertexList> oracle_sublinear_expansion_witness(const Graph& g, double epsilon1,
                                                             int k) {
  require(k >= 1, "oracle_sublinear_expansion_witness: k must be positive");
  auto required = [epsilon1, k](int size) {
    double x = size;
    if (x < k / 5.0) return 0.0;
    double l = std::log2(15.0 * x / k);
    return epsilon1 / (l * l) * x;
  };
  return first_violator(g, required, (k + 1) / 2);
}

}  // namespace chords
