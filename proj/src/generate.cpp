#include "chordcycles/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "chordcycles/core_ops.hpp"

namespace chords {

namespace {

Graph complete_graph(int n) {
  require(n >= 1, "complete: n must be >= 1");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, edges);
}

Graph cycle_graph(int n) {
  require(n >= 3, "cycle: n must be >= 3");
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return Graph(n, edges);
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});          // outer pentagon
    edges.push_back({5 + i, 5 + (i + 2) % 5});  // inner pentagram
    edges.push_back({i, 5 + i});                // spokes
  }
  return Graph(10, edges);
}

// Configuration model: pair degree stubs, keep the simple pairs, and re-pair
// the stubs from rejected (loop/duplicate) pairs; a final pass of random edge
// swaps clears any stubborn leftovers.
Graph random_regular(int n, int d, std::mt19937_64& rng) {
  require(n >= 1 && d >= 0 && d < n, "random-regular: need 0 <= d < n");
  require(n * d % 2 == 0, "random-regular: n*d must be even");
  std::set<Edge> edges;
  auto norm = [](Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; };

  std::vector<Vertex> stubs;
  for (int v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
  for (int round = 0; round < 200 && !stubs.empty(); ++round) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<Vertex> rejected;
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
      Vertex a = stubs[i], b = stubs[i + 1];
      if (a == b || edges.count(norm(a, b)) > 0) {
        rejected.push_back(a);
        rejected.push_back(b);
      } else {
        edges.insert(norm(a, b));
      }
    }
    stubs = std::move(rejected);
  }
  // Swap repair: trade a leftover stub pair against a random existing edge.
  std::uniform_int_distribution<size_t> any;
  int guard = 1000000;
  while (!stubs.empty() && guard-- > 0) {
    Vertex a = stubs[stubs.size() - 2], b = stubs[stubs.size() - 1];
    std::vector<Edge> pool(edges.begin(), edges.end());
    Edge e = pool[any(rng) % pool.size()];
    Vertex x = e.first, y = e.second;
    if (std::uniform_int_distribution<int>(0, 1)(rng)) std::swap(x, y);
    if (a == x || b == y || a == y || b == x) continue;
    if (edges.count(norm(a, x)) > 0 || edges.count(norm(b, y)) > 0) continue;
    edges.erase(e);
    edges.insert(norm(a, x));
    edges.insert(norm(b, y));
    stubs.pop_back();
    stubs.pop_back();
  }
  require(stubs.empty(), "random-regular: repair budget exhausted");
  Graph g(n, std::vector<Edge>(edges.begin(), edges.end()));
  verify(g.min_degree() == d && g.max_degree() == d, "random-regular: output not regular");
  return g;
}

Graph gnp_min_degree(int n, int d, std::mt19937_64& rng) {
  require(n >= 2 && d >= 1, "gnp-min-degree: need n >= 2 and d >= 1");
  double p = std::min(1.0, 1.5 * d / (n - 1));
  std::vector<Edge> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < p) edges.push_back({u, v});
  Subgraph core = min_degree_core(Graph(n, edges), d);
  require(core.graph.vertex_count() > 0,
          "gnp-min-degree: core is empty for these parameters");
  return core.graph;
}

Graph high_girth_regular(int n, int d, int target_girth, std::mt19937_64& rng) {
  require(target_girth >= 3, "high-girth-regular: girth must be >= 3");
  require(d >= 2, "high-girth-regular: need d >= 2");
  for (int attempt = 0; attempt < 20; ++attempt) {
    Graph g = random_regular(n, d, rng);
    std::set<Edge> edges;
    for (const Edge& e : g.edges()) edges.insert(e);
    auto norm = [](Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; };
    int budget = 200 * n;
    while (budget-- > 0) {
      Graph current(n, std::vector<Edge>(edges.begin(), edges.end()));
      if (girth(current) >= target_girth) return current;
      // Locate one short cycle and 2-swap one of its edges with a random
      // edge elsewhere, preserving all degrees.
      Cycle short_cycle{{}};
      {
        int best = 0;
        for (int root = 0; root < n && (best == 0 || best >= target_girth); ++root) {
          std::vector<int> dist(n, -1);
          std::vector<Vertex> parent(n, -1);
          VertexList queue{root};
          dist[root] = 0;
          size_t head = 0;
          bool found = false;
          while (head < queue.size() && !found) {
            Vertex v = queue[head++];
            for (Vertex w : current.neighbors(v)) {
              if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
              } else if (w != parent[v]) {
                VertexList side_a, side_b;
                for (Vertex t = v; t >= 0; t = parent[t]) side_a.push_back(t);
                for (Vertex t = w; t >= 0; t = parent[t]) side_b.push_back(t);
                std::reverse(side_a.begin(), side_a.end());  // root .. v
                side_b.pop_back();                           // drop root
                side_a.insert(side_a.end(), side_b.begin(), side_b.end());
                // Tree paths may meet below the root; fall back below if so.
                VertexList uniq = side_a;
                std::sort(uniq.begin(), uniq.end());
                uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
                if (uniq.size() == side_a.size() &&
                    static_cast<int>(side_a.size()) < target_girth &&
                    is_cycle(current, Cycle{side_a})) {
                  short_cycle.vertices = side_a;
                  best = static_cast<int>(side_a.size());
                  found = true;
                  break;
                }
              }
            }
          }
          if (found) break;
        }
      }
      if (short_cycle.vertices.empty()) {
        // No clean witness reconstructed; perturb a random edge instead.
        short_cycle.vertices = {0};
      }
      std::vector<Edge> pool(edges.begin(), edges.end());
      std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
      Edge on_cycle = short_cycle.vertices.size() >= 2
                          ? norm(short_cycle.vertices[0], short_cycle.vertices[1])
                          : pool[pick(rng)];
      Edge other = pool[pick(rng)];
      Vertex a = on_cycle.first, b = on_cycle.second;
      Vertex x = other.first, y = other.second;
      if (std::uniform_int_distribution<int>(0, 1)(rng)) std::swap(x, y);
      if (a == x || a == y || b == x || b == y) continue;
      if (edges.count(norm(a, x)) > 0 || edges.count(norm(b, y)) > 0) continue;
      edges.erase(on_cycle);
      edges.erase(norm(other.first, other.second));
      edges.insert(norm(a, x));
      edges.insert(norm(b, y));
    }
  }
  throw InfeasibleError("high-girth-regular: could not reach girth " +
                        std::to_string(target_girth));
}

}  // namespace

GraphKind parse_kind(const std::string& name) {
  if (name == "random-regular") return GraphKind::random_regular;
  if (name == "gnp-min-degree") return GraphKind::gnp_min_degree;
  if (name == "high-girth-regular") return GraphKind::high_girth_regular;
  if (name == "complete") return GraphKind::complete;
  if (name == "cycle") return GraphKind::cycle;
  if (name == "petersen") return GraphKind::petersen;
  throw ParseError("unknown generator kind '" + name + "'");
}

std::string kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::random_regular: return "random-regular";
    case GraphKind::gnp_min_degree: return "gnp-min-degree";
    case GraphKind::high_girth_regular: return "high-girth-regular";
    case GraphKind::complete: return "complete";
    case GraphKind::cycle: return "cycle";
    case GraphKind::petersen: return "petersen";
  }
  return "?";
}

Graph generate(GraphKind kind, const GenerateParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  switch (kind) {
    case GraphKind::complete: return complete_graph(params.n);
    case GraphKind::cycle: return cycle_graph(params.n);
    case GraphKind::petersen:
      require(params.n == 0 || params.n == 10, "petersen: n is fixed at 10");
      return petersen_graph();
    case GraphKind::random_regular: return random_regular(params.n, params.d, rng);
    case GraphKind::gnp_min_degree: return gnp_min_degree(params.n, params.d, rng);
    case GraphKind::high_girth_regular:
      return high_girth_regular(params.n, params.d, params.girth, rng);
  }
  throw InfeasibleError("unknown generator kind");
}

}  // namespace chords
