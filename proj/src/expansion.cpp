#include "chordcycles/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <queue>
#include <random>

namespace chords {

double ExpansionProfile::epsilon(double x) const {
  if (x < k / 5.0) return 0.0;
  double l = std::log2(15.0 * x / k);
  return epsilon1 / (l * l);
}

namespace {

// ---- exhaustive subset scan over up to kExactExpansionCap vertices ----

// Sequence-lexicographic order on subsets viewed as sorted vertex lists
// (a proper prefix precedes its extensions).
bool subset_lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  std::uint32_t diff = a ^ b;
  int d = std::countr_zero(diff);
  if ((a >> d) & 1u) return (b >> (d + 1)) != 0;
  return (a >> (d + 1)) == 0;
}

struct ExactScan {
  bool any_violation = false;
  std::uint32_t lex_least = 0;
  std::uint32_t largest = 0;
};

// threshold_by_size[s] is the required |N(S)| for |S| = s.
ExactScan exact_scan(const std::vector<std::uint32_t>& adj_masks, int min_size, int max_size,
                     const std::vector<double>& threshold_by_size) {
  const int a = static_cast<int>(adj_masks.size());
  ExactScan out;
  if (a == 0 || min_size > max_size) return out;
  const std::uint32_t limit = a >= 32 ? 0xffffffffu : ((1u << a) - 1);
  for (std::uint32_t mask = 1; mask <= limit; ++mask) {
    int size = std::popcount(mask);
    if (size < min_size || size > max_size) continue;
    std::uint32_t nbr = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
      nbr |= adj_masks[std::countr_zero(rest)];
    nbr &= ~mask;
    if (std::popcount(nbr) >= threshold_by_size[size]) continue;
    if (!out.any_violation) {
      out.any_violation = true;
      out.lex_least = out.largest = mask;
      continue;
    }
    if (subset_lex_less(mask, out.lex_least)) out.lex_least = mask;
    int largest_size = std::popcount(out.largest);
    if (size > largest_size || (size == largest_size && subset_lex_less(mask, out.largest)))
      out.largest = mask;
  }
  return out;
}

// Adjacency bitmasks of g restricted to `active` (sorted), indexed by the
// position of each vertex inside `active`.
std::vector<std::uint32_t> restricted_masks(const Graph& g, const VertexList& active) {
  std::vector<int> local(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(active.size()); ++i) local[active[i]] = i;
  std::vector<std::uint32_t> masks(active.size(), 0);
  for (int i = 0; i < static_cast<int>(active.size()); ++i)
    for (Vertex w : g.neighbors(active[i]))
      if (local[w] >= 0) masks[i] |= 1u << local[w];
  return masks;
}

VertexList unpack(std::uint32_t mask, const VertexList& active) {
  VertexList out;
  for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
    out.push_back(active[std::countr_zero(rest)]);
  return out;
}

// ---- sampled search for poorly expanding sets ----

using Threshold = std::function<double(int)>;

// Size of N(X) within the non-blocked part of g.
int neighborhood_size(const Graph& g, const VertexList& xs, const std::vector<char>& blocked) {
  std::vector<char> in_x = make_mask(g.vertex_count(), xs);
  int count = 0;
  std::vector<char> seen(g.vertex_count(), 0);
  for (Vertex v : xs)
    for (Vertex w : g.neighbors(v))
      if (!in_x[w] && !blocked[w] && !seen[w]) {
        seen[w] = 1;
        ++count;
      }
  return count;
}

// BFS balls from `roots` inside the non-blocked vertices; returns the first
// ball whose neighborhood falls below the threshold.  Relies on the layer
// identity N(ball of radius r) = layer r+1.
std::optional<VertexList> ball_violation(const Graph& g, const std::vector<char>& blocked,
                                         const VertexList& roots, const Threshold& threshold,
                                         int min_size, int max_size) {
  for (Vertex root : roots) {
    if (blocked[root]) continue;
    std::vector<int> dist(g.vertex_count(), -1);
    VertexList order{root};
    dist[root] = 0;
    size_t head = 0;
    std::vector<int> layer_start{0};
    while (head < order.size()) {
      Vertex v = order[head++];
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] >= 0 || blocked[w]) continue;
        dist[w] = dist[v] + 1;
        if (dist[w] >= static_cast<int>(layer_start.size()))
          layer_start.push_back(static_cast<int>(order.size()));
        order.push_back(w);
      }
    }
    layer_start.push_back(static_cast<int>(order.size()));
    // Ball of radius r = order prefix ending at layer_start[r+1].
    for (int r = 0; r + 1 < static_cast<int>(layer_start.size()); ++r) {
      int ball_size = layer_start[r + 1];
      int next_layer = (r + 2 < static_cast<int>(layer_start.size())
                            ? layer_start[r + 2]
                            : static_cast<int>(order.size())) -
                       layer_start[r + 1];
      if (ball_size < min_size || ball_size > max_size) continue;
      if (next_layer < threshold(ball_size))
        return VertexList(order.begin(), order.begin() + ball_size);
    }
  }
  return std::nullopt;
}

std::optional<VertexList> sampled_set_violation(const Graph& g, const std::vector<char>& blocked,
                                                int samples, const Threshold& threshold,
                                                int min_size, int max_size,
                                                std::mt19937_64& rng) {
  VertexList candidates;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!blocked[v]) candidates.push_back(v);
  if (candidates.empty() || max_size < 1) return std::nullopt;
  std::uniform_int_distribution<size_t> pick_start(0, candidates.size() - 1);
  std::uniform_int_distribution<int> pick_size(std::max(1, min_size), max_size);
  for (int s = 0; s < samples; ++s) {
    int target = pick_size(rng);
    VertexList set{candidates[pick_start(rng)]};
    std::vector<char> in_set(g.vertex_count(), 0);
    in_set[set[0]] = 1;
    VertexList boundary;
    for (Vertex w : g.neighbors(set[0]))
      if (!blocked[w]) boundary.push_back(w);
    while (static_cast<int>(set.size()) < target && !boundary.empty()) {
      std::uniform_int_distribution<size_t> pick(0, boundary.size() - 1);
      size_t idx = pick(rng);
      Vertex v = boundary[idx];
      boundary[idx] = boundary.back();
      boundary.pop_back();
      if (in_set[v]) continue;
      in_set[v] = 1;
      set.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!blocked[w] && !in_set[w]) boundary.push_back(w);
    }
    int size = static_cast<int>(set.size());
    if (size < min_size || size > max_size) continue;
    if (neighborhood_size(g, set, blocked) < threshold(size))
      return sorted_unique(std::move(set));
  }
  return std::nullopt;
}

VertexList stride_roots(const Graph& g, const std::vector<char>& blocked, int want) {
  VertexList active;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!blocked[v]) active.push_back(v);
  if (want <= 0 || static_cast<int>(active.size()) <= want) return active;
  VertexList out;
  double step = static_cast<double>(active.size()) / want;
  for (int i = 0; i < want; ++i) out.push_back(active[static_cast<size_t>(i * step)]);
  return sorted_unique(std::move(out));
}

std::optional<VertexList> find_violation(const Graph& g, const std::vector<char>& blocked,
                                         const Threshold& threshold, int min_size, int max_size,
                                         int root_sample, int set_sample, std::mt19937_64& rng) {
  if (auto v = ball_violation(g, blocked, stride_roots(g, blocked, root_sample), threshold,
                              min_size, max_size))
    return v;
  return sampled_set_violation(g, blocked, set_sample, threshold, min_size, max_size, rng);
}

ExpansionCertificate verify_expansion(const Graph& g, const Threshold& threshold, int min_size,
                                      int max_size, CheckMode mode, int sample_budget,
                                      std::uint64_t seed) {
  ExpansionCertificate cert;
  cert.mode = mode;
  cert.min_size = min_size;
  cert.max_size = max_size;
  if (min_size > max_size) {  // nothing to check
    cert.pass = true;
    return cert;
  }
  if (mode == CheckMode::exact) {
    require(g.vertex_count() <= kExactExpansionCap,
            "exact expansion check limited to " + std::to_string(kExactExpansionCap) +
                " vertices");
    VertexList active;
    for (int v = 0; v < g.vertex_count(); ++v) active.push_back(v);
    std::vector<double> by_size(active.size() + 1, 0.0);
    for (int s = 1; s <= static_cast<int>(active.size()); ++s) by_size[s] = threshold(s);
    ExactScan scan = exact_scan(restricted_masks(g, active), min_size, max_size, by_size);
    cert.pass = !scan.any_violation;
    if (scan.any_violation) cert.witness = unpack(scan.lex_least, active);
    return cert;
  }
  std::mt19937_64 rng(seed);
  std::vector<char> blocked(g.vertex_count(), 0);
  auto witness = find_violation(g, blocked, threshold, min_size, max_size,
                                std::min(g.vertex_count(), std::max(sample_budget, 1)),
                                sample_budget, rng);
  cert.pass = !witness.has_value();
  if (witness) cert.witness = *witness;
  return cert;
}

}  // namespace

ExpansionCertificate verify_alpha_expansion(const Graph& g, double alpha, CheckMode mode,
                                            int sample_budget, std::uint64_t seed) {
  if (alpha <= 0.0) {
    ExpansionCertificate cert;
    cert.mode = mode;
    cert.pass = true;
    cert.min_size = 1;
    cert.max_size = g.vertex_count() / 2;
    return cert;
  }
  return verify_expansion(
      g, [alpha](int s) { return alpha * s; }, 1, g.vertex_count() / 2, mode, sample_budget,
      seed);
}

ExpansionCertificate verify_sublinear_expansion(const Graph& g, const ExpansionProfile& profile,
                                                CheckMode mode, int sample_budget,
                                                std::uint64_t seed) {
  int min_size = (profile.k + 1) / 2;
  return verify_expansion(
      g, [&profile](int s) { return profile.requirement(s); }, std::max(1, min_size),
      g.vertex_count() / 2, mode, sample_budget, seed);
}

ExtractionResult extract_expander_subgraph(const Graph& g, const ExpansionProfile& profile,
                                           const ExtractOptions& options) {
  std::mt19937_64 rng(options.seed);
  const double target_avg = g.average_degree() / 2.0;
  ExtractionResult result;

  VertexList active;
  for (int v = 0; v < g.vertex_count(); ++v) active.push_back(v);

  auto peel = [&](Subgraph& sub) {
    // Remove vertices of degree < d(H)/2; each removal raises d(H).
    const Graph& h = sub.graph;
    long long m2 = 2LL * h.edge_count();
    int n = h.vertex_count();
    std::vector<int> deg(n);
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>>
        heap;
    for (int v = 0; v < n; ++v) {
      deg[v] = h.degree(v);
      heap.push({deg[v], v});
    }
    std::vector<char> dead(n, 0);
    int alive = n;
    while (!heap.empty() && alive > 0) {
      auto [d, v] = heap.top();
      heap.pop();
      if (dead[v] || d != deg[v]) continue;
      if (2.0 * d >= static_cast<double>(m2) / alive) break;  // min degree >= d(H)/2
      dead[v] = 1;
      --alive;
      m2 -= 2LL * deg[v];
      ++result.peeled;
      for (Vertex w : h.neighbors(v))
        if (!dead[w]) {
          --deg[w];
          heap.push({deg[w], w});
        }
    }
    VertexList keep;
    for (int v = 0; v < n; ++v)
      if (!dead[v]) keep.push_back(v);
    if (static_cast<int>(keep.size()) < n) {
      VertexList parent_keep;
      for (Vertex v : keep) parent_keep.push_back(sub.to_parent[v]);
      sub = induced_subgraph(g, parent_keep);
    }
  };

  Subgraph current = induced_subgraph(g, active);
  peel(current);
  std::vector<char> no_block;
  for (int round = 0; round < options.max_rounds; ++round) {
    const Graph& h = current.graph;
    if (h.vertex_count() == 0 || h.edge_count() == 0) break;
    no_block.assign(h.vertex_count(), 0);
    auto violation = find_violation(
        h, no_block, [&profile](int s) { return profile.requirement(s); },
        std::max(1, (profile.k + 1) / 2), h.vertex_count() / 2, options.root_sample,
        options.set_sample, rng);
    if (!violation) break;
    // Keep the denser side, provided it still meets the average degree target.
    VertexList x = *violation;
    VertexList with_nbrs = set_union(x, neighborhood(h, x));
    VertexList rest;
    {
      std::vector<char> in_x = make_mask(h.vertex_count(), x);
      for (int v = 0; v < h.vertex_count(); ++v)
        if (!in_x[v]) rest.push_back(v);
    }
    auto to_parent_ids = [&](const VertexList& locals) {
      VertexList out;
      out.reserve(locals.size());
      for (Vertex v : locals) out.push_back(current.to_parent[v]);
      return out;
    };
    Subgraph side_a = induced_subgraph(g, to_parent_ids(with_nbrs));
    Subgraph side_b = induced_subgraph(g, to_parent_ids(rest));
    bool a_first = side_a.graph.average_degree() >= side_b.graph.average_degree();
    bool advanced = false;
    for (int attempt = 0; attempt < 2 && !advanced; ++attempt) {
      Subgraph& cand = (attempt == 0) == a_first ? side_a : side_b;
      if (cand.graph.vertex_count() == 0) continue;
      Subgraph peeled = cand;
      peel(peeled);
      if (peeled.graph.vertex_count() > 0 && peeled.graph.average_degree() >= target_avg &&
          peeled.graph.vertex_count() < h.vertex_count()) {
        current = std::move(peeled);
        ++result.cut_steps;
        advanced = true;
      }
    }
    if (!advanced) break;  // no admissible side; stop with the invariant intact
  }

  verify(current.graph.vertex_count() == 0 || current.graph.average_degree() >= target_avg,
         "extract_expander_subgraph: average degree fell below half the input's");
  verify(current.graph.vertex_count() == 0 ||
             2.0 * current.graph.min_degree() >= current.graph.average_degree(),
         "extract_expander_subgraph: min degree below half the average");
  result.below_k = current.graph.vertex_count() < profile.k;
  result.subgraph = std::move(current);
  return result;
}

CleanResult clean_for_expansion(const Graph& g, const VertexList& u, double alpha,
                                const CleanOptions& options) {
  require(alpha > 0.0, "clean_for_expansion: alpha must be positive");
  VertexList u_sorted = sorted_unique(u);
  for (Vertex v : u_sorted) require(g.has_vertex(v), "clean_for_expansion: u out of range");
  const int n = g.vertex_count();
  const double size_bound = alpha * alpha * n / 100.0;
  if (!options.override_size_bound)
    require(static_cast<double>(u_sorted.size()) <= size_bound,
            "clean_for_expansion: |u| exceeds (alpha^2/100)*n; pass the override to proceed");

  std::mt19937_64 rng(options.seed);
  VertexList b;
  const double bound = u_sorted.empty() ? 0.0 : 2.0 * u_sorted.size() / alpha;

  // Absorb violators of alpha/2-expansion in g - u - b; each absorption keeps
  // |N_{g-u}(b)| < alpha*|b|/2 and the loop ends when the residual is clean.
  while (true) {
    VertexList removed = set_union(u_sorted, b);
    VertexList active;
    for (int v = 0; v < n; ++v)
      if (!set_contains(removed, v)) active.push_back(v);
    if (active.empty()) break;
    std::optional<VertexList> violation;
    int max_size = n / 2 - static_cast<int>(b.size());
    if (max_size < 1)
      throw InfeasibleError("clean_for_expansion: absorbed half the graph without cleaning it");
    if (static_cast<int>(active.size()) <= kExactExpansionCap) {
      Subgraph res = induced_subgraph(g, active);
      std::vector<double> by_size(active.size() + 1, 0.0);
      for (int s = 1; s <= static_cast<int>(active.size()); ++s) by_size[s] = alpha / 2.0 * s;
      VertexList local_all;
      for (int v = 0; v < res.graph.vertex_count(); ++v) local_all.push_back(v);
      ExactScan scan = exact_scan(restricted_masks(res.graph, local_all), 1,
                                  std::min(max_size, res.graph.vertex_count() / 2), by_size);
      if (scan.any_violation) violation = res.up(unpack(scan.largest, local_all));
    } else {
      Subgraph res = induced_subgraph(g, active);
      std::vector<char> no_block(res.graph.vertex_count(), 0);
      auto found = find_violation(
          res.graph, no_block, [alpha](int s) { return alpha / 2.0 * s; }, 1,
          std::min(max_size, res.graph.vertex_count() / 2), options.root_sample,
          options.set_sample, rng);
      if (found) violation = res.up(*found);
    }
    if (!violation) break;
    b = set_union(b, *violation);
    if (static_cast<double>(b.size()) > bound && !options.override_size_bound) {
      // b now witnesses that g was not an alpha-expander.
      throw InfeasibleError("clean_for_expansion: grew |b| = " + std::to_string(b.size()) +
                            " > 2|u|/alpha; the input is not an alpha-expander");
    }
  }

  CleanResult result;
  result.b = b;
  VertexList removed = set_union(u_sorted, b);
  VertexList active;
  for (int v = 0; v < n; ++v)
    if (!set_contains(removed, v)) active.push_back(v);
  result.residual = induced_subgraph(g, active);
  result.bound_ok = static_cast<double>(b.size()) <= bound;
  if (!b.empty()) {
    // Invariant from the construction: b expands poorly away from u.
    VertexList nb;
    {
      std::vector<char> in_b = make_mask(n, b);
      std::vector<char> in_u = make_mask(n, u_sorted);
      std::vector<char> seen(n, 0);
      for (Vertex v : b)
        for (Vertex w : g.neighbors(v))
          if (!in_b[w] && !in_u[w] && !seen[w]) {
            seen[w] = 1;
            nb.push_back(w);
          }
    }
    verify(2.0 * nb.size() < alpha * b.size(),
           "clean_for_expansion: absorbed set lost its poor-expansion certificate");
  }
  if (result.residual.graph.vertex_count() <= kExactExpansionCap &&
      result.residual.graph.vertex_count() > 0) {
    ExpansionCertificate cert =
        verify_alpha_expansion(result.residual.graph, alpha / 2.0, CheckMode::exact);
    result.residual_verified_exact = true;
    verify(cert.pass, "clean_for_expansion: residual failed exhaustive alpha/2 expansion");
  }
  return result;
}

Path connect_avoiding(const Graph& g, const VertexList& x, const VertexList& y,
                      const VertexList& b, const ConnectOptions& options) {
  VertexList xs = sorted_unique(x), ys = sorted_unique(y), bs = sorted_unique(b);
  require(!xs.empty() && !ys.empty(), "connect_avoiding: x and y must be non-empty");
  require(set_intersection(xs, ys).empty() && set_intersection(xs, bs).empty() &&
              set_intersection(ys, bs).empty(),
          "connect_avoiding: x, y, b must be pairwise disjoint");
  std::vector<char> blocked = make_mask(g.vertex_count(), bs);
  BfsResult r = bfs(g, xs, &blocked);
  Vertex best = -1;
  for (Vertex t : ys)
    if (r.dist[t] >= 0 && (best < 0 || r.dist[t] < r.dist[best])) best = t;
  if (best < 0)
    throw SearchError("connect_avoiding: x and y are disconnected after avoiding b");
  Path path;
  for (Vertex v = best; v >= 0; v = r.parent[v]) path.vertices.push_back(v);
  std::reverse(path.vertices.begin(), path.vertices.end());
  verify(is_path(g, path) && set_contains(xs, path.front()) && set_contains(ys, path.back()),
         "connect_avoiding: invalid path");
  for (size_t i = 1; i + 1 < path.vertices.size(); ++i)
    verify(!set_contains(xs, path.vertices[i]) && !set_contains(ys, path.vertices[i]) &&
               !set_contains(bs, path.vertices[i]),
           "connect_avoiding: interior vertex not clear of x, y, b");
  if (options.verified_alpha) {
    double a = *options.verified_alpha;
    double limit = 2.0 * std::log2(std::max(2, g.vertex_count())) / std::log2(1.0 + a / 2.0);
    verify(path.length() <= limit,
           "connect_avoiding: path exceeds the expander length bound");
  }
  return path;
}

VertexList find_low_diameter_set(const Graph& g, int m, int max_diameter) {
  require(m >= 1, "find_low_diameter_set: m must be >= 1");
  require(max_diameter >= 0, "find_low_diameter_set: max_diameter must be >= 0");
  auto try_roots = [&](const VertexList& roots, int radius) -> std::optional<VertexList> {
    std::vector<int> dist(g.vertex_count(), -1);
    VertexList order;
    for (Vertex s : roots) {
      dist[s] = 0;
      order.push_back(s);
    }
    size_t head = 0;
    while (head < order.size()) {
      Vertex v = order[head++];
      if (dist[v] == radius) continue;
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] >= 0) continue;
        dist[w] = dist[v] + 1;
        order.push_back(w);
      }
    }
    if (static_cast<int>(order.size()) < m) return std::nullopt;
    return VertexList(order.begin(), order.begin() + m);
  };

  std::optional<VertexList> found;
  if (max_diameter % 2 == 0) {
    for (int v = 0; v < g.vertex_count() && !found; ++v)
      found = try_roots({v}, max_diameter / 2);
  } else {
    for (int v = 0; v < g.vertex_count() && !found; ++v)
      for (Vertex w : g.neighbors(v)) {
        if (w < v) continue;
        found = try_roots({v, w}, (max_diameter - 1) / 2);
        if (found) break;
      }
    if (!found && m == 1 && g.vertex_count() > 0) found = VertexList{0};
  }
  if (!found)
    throw SearchError("find_low_diameter_set: no ball of the allowed radius holds " +
                      std::to_string(m) + " vertices");
  VertexList set = sorted_unique(*found);
  verify(static_cast<int>(set.size()) == m, "find_low_diameter_set: wrong size");
  return set;
}

}  // namespace chords
