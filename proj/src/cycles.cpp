#include "chordcycles/cycles.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <random>
#include <utility>

#include "chordcycles/core_ops.hpp"

namespace chords {

namespace {

// ---- rotation-assisted path growth ----

struct PathState {
  VertexList path;
  std::vector<int> pos;  // vertex -> index on path, -1 when absent

  void init(int n, Vertex start) {
    path.assign(1, start);
    pos.assign(n, -1);
    pos[start] = 0;
  }
  Vertex back() const { return path.back(); }
  bool on_path(Vertex v) const { return pos[v] >= 0; }
  void push(Vertex v) {
    pos[v] = static_cast<int>(path.size());
    path.push_back(v);
  }
  void rotate_at(int i) {  // fold at pivot index i; new endpoint = old path[i+1]
    std::reverse(path.begin() + i + 1, path.end());
    for (int j = i + 1; j < static_cast<int>(path.size()); ++j) pos[path[j]] = j;
  }
  void flip() {
    std::reverse(path.begin(), path.end());
    for (int j = 0; j < static_cast<int>(path.size()); ++j) pos[path[j]] = j;
  }
};

int fresh_degree(const Graph& g, const PathState& st, Vertex v) {
  int c = 0;
  for (Vertex w : g.neighbors(v))
    if (!st.on_path(w)) ++c;
  return c;
}

// Extend from the back while possible, preferring the neighbor with the
// fewest unvisited neighbors of its own (ties to the lowest id).
void extend_greedy(const Graph& g, PathState& st) {
  for (;;) {
    Vertex best = -1;
    int best_score = INT_MAX;
    for (Vertex w : g.neighbors(st.back())) {
      if (st.on_path(w)) continue;
      int s = fresh_degree(g, st, w);
      if (s < best_score) {
        best_score = s;
        best = w;
      }
    }
    if (best < 0) return;
    st.push(best);
  }
}

// Rotate at the stuck endpoint until some endpoint can extend.  Endpoints
// already seen in this stuck phase are revisited only by the random fallback.
bool rotate_to_extend(const Graph& g, PathState& st, std::mt19937_64& rng, int& budget,
                      std::vector<char>& seen_end) {
  while (budget > 0) {
    Vertex e = st.back();
    seen_end[e] = 1;
    int t = static_cast<int>(st.path.size()) - 1;
    int chosen = -1;
    for (Vertex u : g.neighbors(e)) {
      int i = st.pos[u];
      if (i < 0 || i > t - 2) continue;
      Vertex ne = st.path[i + 1];
      if (fresh_degree(g, st, ne) > 0) {
        chosen = i;
        break;
      }
      if (chosen < 0 && !seen_end[ne]) chosen = i;
    }
    if (chosen < 0) {
      std::vector<int> pivots;
      for (Vertex u : g.neighbors(e)) {
        int i = st.pos[u];
        if (i >= 0 && i <= t - 2) pivots.push_back(i);
      }
      if (pivots.empty()) return false;
      chosen = pivots[rng() % pivots.size()];
    }
    --budget;
    st.rotate_at(chosen);
    if (fresh_degree(g, st, st.back()) > 0) return true;
  }
  return false;
}

PathState grow_path(const Graph& g, Vertex start, std::mt19937_64& rng, int rotation_budget) {
  PathState st;
  st.init(g.vertex_count(), start);
  extend_greedy(g, st);
  std::vector<char> seen(g.vertex_count(), 0);
  int budget = rotation_budget;
  int stale_flips = 0;
  while (budget > 0 && stale_flips < 2) {
    std::fill(seen.begin(), seen.end(), 0);
    if (rotate_to_extend(g, st, rng, budget, seen)) {
      extend_greedy(g, st);
      stale_flips = 0;
    } else {
      st.flip();
      ++stale_flips;
    }
  }
  return st;
}

// Cycles obtainable by one closing edge at either end of the path, longest
// first, at most cap of them.
std::vector<Cycle> closures_of(const Graph& g, const VertexList& p, int cap) {
  std::vector<Cycle> out;
  int t = static_cast<int>(p.size()) - 1;
  if (t < 2) return out;
  std::vector<int> pos(g.vertex_count(), -1);
  for (int i = 0; i <= t; ++i) pos[p[i]] = i;
  // (length, marker): marker >= 0 closes the suffix p[marker..t];
  // marker < 0 closes the prefix p[0..(-marker - 1)]
  std::vector<std::pair<int, int>> spans;
  for (Vertex u : g.neighbors(p[t])) {
    int i = pos[u];
    if (i >= 0 && i <= t - 2) spans.push_back({t - i + 1, i});
  }
  for (Vertex u : g.neighbors(p[0])) {
    int i = pos[u];
    if (i >= 2) spans.push_back({i + 1, -(i + 1)});
  }
  std::sort(spans.begin(), spans.end(),
            [](const auto& a, const auto& b) {
              return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
  for (const auto& [len, marker] : spans) {
    if (static_cast<int>(out.size()) >= cap) break;
    Cycle c;
    if (marker >= 0)
      c.vertices.assign(p.begin() + marker, p.end());
    else
      c.vertices.assign(p.begin(), p.begin() + (-marker));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<int> positions_on(int n, const VertexList& vs) {
  std::vector<int> pos(n, -1);
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) pos[vs[i]] = i;
  return pos;
}

// Inclusive cyclic walk over cycle indices.
VertexList walk_cycle(const VertexList& c, int from, int to, int step) {
  VertexList out;
  const int L = static_cast<int>(c.size());
  for (int i = from;; i = (i + step + L) % L) {
    out.push_back(c[i]);
    if (i == to) break;
  }
  return out;
}

int cyclic_gap(int a, int b, int len) {
  int d = a > b ? a - b : b - a;
  return d < len - d ? d : len - d;
}

std::optional<InterlacedCycle> interlaced_from_cycle(const Graph& g, const Cycle& c) {
  ChordedCycle cc = chords_of(g, c);
  if (cc.chords.size() < 2) return std::nullopt;
  std::vector<int> pos = positions_on(g.vertex_count(), c.vertices);
  int m = static_cast<int>(cc.chords.size());
  const int cap = 300;
  if (m > cap) m = cap;
  std::vector<std::pair<int, int>> iv(m);
  for (int i = 0; i < m; ++i) {
    int a = pos[cc.chords[i].first], b = pos[cc.chords[i].second];
    if (a > b) std::swap(a, b);
    iv[i] = {a, b};
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (iv[j].first == iv[i].first || iv[j].first == iv[i].second ||
          iv[j].second == iv[i].first || iv[j].second == iv[i].second)
        continue;
      bool in1 = iv[j].first > iv[i].first && iv[j].first < iv[i].second;
      bool in2 = iv[j].second > iv[i].first && iv[j].second < iv[i].second;
      if (in1 != in2) return InterlacedCycle{c, cc.chords[i], cc.chords[j]};
    }
  return std::nullopt;
}

}  // namespace

// ---- rotation closure ----

Path replay_rotations(const Graph& g, const Path& start,
                      const std::vector<RotationStep>& steps) {
  verify(is_path(g, start), "replay_rotations: start is not a path");
  Path p = start;
  for (const RotationStep& s : steps) {
    VertexList& v = p.vertices;
    int t = static_cast<int>(v.size()) - 1;
    int i = -1;
    for (int j = 0; j <= t; ++j)
      if (v[j] == s.pivot) {
        i = j;
        break;
      }
    verify(i >= 0 && i <= t - 2, "replay_rotations: pivot is not interior to the path");
    verify(make_edge(v[i], v[i + 1]) == s.broken, "replay_rotations: broken edge mismatch");
    verify(make_edge(v[t], s.pivot) == s.inserted, "replay_rotations: inserted edge mismatch");
    verify(g.has_edge(v[t], s.pivot), "replay_rotations: inserted edge absent from the graph");
    std::reverse(v.begin() + i + 1, v.end());
  }
  verify(is_path(g, p), "replay_rotations: result is not a path");
  return p;
}

RotationClosure posa_closure(const Graph& g, const Path& start) {
  verify(is_path(g, start), "posa_closure: start is not a path");
  RotationClosure out;
  out.start = start;
  Vertex first = start.back();
  out.paths[first] = start;
  out.steps[first] = {};
  std::deque<Vertex> queue{first};
  std::vector<int> pos(g.vertex_count(), -1);
  while (!queue.empty()) {
    Vertex e = queue.front();
    queue.pop_front();
    const Path& p = out.paths[e];
    const VertexList& verts = p.vertices;
    int t = static_cast<int>(verts.size()) - 1;
    std::fill(pos.begin(), pos.end(), -1);
    for (int i = 0; i <= t; ++i) pos[verts[i]] = i;
    for (Vertex u : g.neighbors(e)) {
      int i = pos[u];
      if (i < 0 || i > t - 2) continue;
      Vertex new_end = verts[i + 1];
      if (out.paths.count(new_end)) continue;
      Path np;
      np.vertices.assign(verts.begin(), verts.begin() + i + 1);
      for (int j = t; j >= i + 1; --j) np.vertices.push_back(verts[j]);
      std::vector<RotationStep> chain = out.steps[e];
      chain.push_back({u, make_edge(verts[i], verts[i + 1]), make_edge(e, u)});
      out.steps[new_end] = std::move(chain);
      out.paths[new_end] = std::move(np);
      queue.push_back(new_end);
    }
  }
  for (const auto& [e, p] : out.paths) {
    out.endpoints.push_back(e);
    Path replayed = replay_rotations(g, start, out.steps[e]);
    verify(replayed.vertices == p.vertices, "posa_closure: rotation log replay mismatch");
  }
  return out;
}

// ---- long cycles ----

LongCycleResult find_long_cycle(const Graph& g, int min_len, std::uint64_t seed) {
  LongCycleResult out;
  const int n = g.vertex_count();
  if (n == 0 || g.edge_count() == 0) return out;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  VertexList starts;
  Vertex vmax = 0;
  for (int v = 1; v < n; ++v)
    if (g.degree(v) > g.degree(vmax)) vmax = v;
  starts.push_back(vmax);
  int restarts = n <= 512 ? 3 : 1;
  for (int r = 0; r < restarts; ++r) starts.push_back(static_cast<Vertex>(rng() % n));
  const int budget = std::max(256, n);
  std::optional<Cycle> best;
  for (Vertex s : starts) {
    if (g.degree(s) == 0) continue;
    PathState st = grow_path(g, s, rng, budget);
    auto cycles = closures_of(g, st.path, 1);
    if (!cycles.empty() &&
        (!best || cycles[0].vertices.size() > best->vertices.size()))
      best = cycles[0];
    if (best && best->length() >= min_len) break;
  }
  if (best) verify(is_cycle(g, *best), "find_long_cycle: produced an invalid cycle");
  out.cycle = std::move(best);
  out.met_min_len = out.cycle && out.cycle->length() >= min_len;
  return out;
}

// ---- interlaced cycles ----

bool chords_interlace(const Cycle& cycle, Edge a, Edge b) {
  const VertexList& vs = cycle.vertices;
  auto idx = [&](Vertex v) {
    for (int i = 0; i < static_cast<int>(vs.size()); ++i)
      if (vs[i] == v) return i;
    return -1;
  };
  int a1 = idx(a.first), a2 = idx(a.second), b1 = idx(b.first), b2 = idx(b.second);
  if (a1 < 0 || a2 < 0 || b1 < 0 || b2 < 0) return false;
  if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) return false;
  const int L = static_cast<int>(vs.size());
  if (cyclic_gap(a1, a2, L) < 2 || cyclic_gap(b1, b2, L) < 2) return false;
  if (a1 > a2) std::swap(a1, a2);
  bool in1 = b1 > a1 && b1 < a2;
  bool in2 = b2 > a1 && b2 < a2;
  return in1 != in2;
}

std::optional<InterlacedCycle> find_interlaced_cycle(const Graph& g, std::uint64_t seed) {
  const int n = g.vertex_count();
  if (n < 4 || g.edge_count() < 6) return std::nullopt;
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);
  const int budget = std::max(256, n);
  VertexList starts;
  Vertex vmax = 0;
  for (int v = 1; v < n; ++v)
    if (g.degree(v) > g.degree(vmax)) vmax = v;
  starts.push_back(vmax);
  for (int r = 0; r < 3; ++r) starts.push_back(static_cast<Vertex>(rng() % n));
  for (Vertex s : starts) {
    if (g.degree(s) == 0) continue;
    PathState st = grow_path(g, s, rng, budget);
    for (const Cycle& c : closures_of(g, st.path, 16))
      if (auto hit = interlaced_from_cycle(g, c)) return hit;
  }
  if (n <= 64) {
    // exhaust small graphs through the rotation closure
    for (Vertex s = 0; s < n; ++s) {
      if (g.degree(s) == 0) continue;
      PathState st;
      st.init(n, s);
      extend_greedy(g, st);
      if (st.path.size() < 4) continue;
      RotationClosure rc = posa_closure(g, Path{st.path});
      for (const auto& [e, pe] : rc.paths)
        for (const Cycle& c : closures_of(g, pe.vertices, 8))
          if (auto hit = interlaced_from_cycle(g, c)) return hit;
    }
  }
  return std::nullopt;
}

// ---- two vertex-disjoint paths ----

DisjointPaths two_disjoint_paths(const Graph& g, const VertexList& from, const VertexList& to) {
  VertexList S = sorted_unique(from), T = sorted_unique(to);
  require(!S.empty() && !T.empty(), "two_disjoint_paths: empty endpoint set");
  require(set_intersection(S, T).empty(), "two_disjoint_paths: endpoint sets overlap");
  const int n = g.vertex_count();
  const int sigma = 2 * n, tau = 2 * n + 1, N = 2 * n + 2;

  struct Arc {
    int to;
    int cap;
    int rev;
    bool fwd;
  };
  std::vector<std::vector<Arc>> net(N);
  auto add_arc = [&](int a, int b) {
    net[a].push_back({b, 1, static_cast<int>(net[b].size()), true});
    net[b].push_back({a, 0, static_cast<int>(net[a].size()) - 1, false});
  };
  std::vector<char> in_s = make_mask(n, S), in_t = make_mask(n, T);
  for (int v = 0; v < n; ++v) add_arc(2 * v, 2 * v + 1);
  for (const Edge& e : g.edges()) {
    // the source set takes no in-arcs and the target set emits no out-arcs
    if (!in_s[e.second] && !in_t[e.first]) add_arc(2 * e.first + 1, 2 * e.second);
    if (!in_s[e.first] && !in_t[e.second]) add_arc(2 * e.second + 1, 2 * e.first);
  }
  for (Vertex s : S) add_arc(sigma, 2 * s);
  for (Vertex t : T) add_arc(2 * t + 1, tau);

  int flow = 0;
  for (int round = 0; round < 2; ++round) {
    std::vector<int> prev_node(N, -1), prev_arc(N, -1);
    std::deque<int> q{sigma};
    prev_node[sigma] = sigma;
    while (!q.empty() && prev_node[tau] < 0) {
      int a = q.front();
      q.pop_front();
      for (int k = 0; k < static_cast<int>(net[a].size()); ++k) {
        const Arc& arc = net[a][k];
        if (arc.cap <= 0 || prev_node[arc.to] >= 0) continue;
        prev_node[arc.to] = a;
        prev_arc[arc.to] = k;
        q.push_back(arc.to);
      }
    }
    if (prev_node[tau] < 0) break;
    for (int x = tau; x != sigma; x = prev_node[x]) {
      Arc& arc = net[prev_node[x]][prev_arc[x]];
      arc.cap -= 1;
      net[arc.to][arc.rev].cap += 1;
    }
    ++flow;
  }

  if (flow < 2) {
    std::optional<Vertex> cut;
    if (flow == 1) {
      std::vector<char> reach(N, 0);
      std::deque<int> q{sigma};
      reach[sigma] = 1;
      while (!q.empty()) {
        int a = q.front();
        q.pop_front();
        for (const Arc& arc : net[a])
          if (arc.cap > 0 && !reach[arc.to]) {
            reach[arc.to] = 1;
            q.push_back(arc.to);
          }
      }
      // flow 1 means the min cut is a single saturated arc on the reach
      // boundary; whichever kind it is, it pinches exactly one vertex
      for (int a = 0; a < N && !cut; ++a) {
        if (!reach[a]) continue;
        for (const Arc& arc : net[a]) {
          if (!arc.fwd || arc.cap != 0 || reach[arc.to]) continue;
          cut = arc.to == tau ? a / 2 : arc.to / 2;
          break;
        }
      }
      verify(cut.has_value(), "two_disjoint_paths: unit flow without a cut vertex");
    }
    throw TwoPathsError(flow == 0 ? "two_disjoint_paths: the endpoint sets are disconnected"
                                  : "two_disjoint_paths: a single vertex separates the sets",
                        cut);
  }

  auto follow = [&](int s_in) {
    Path p;
    int vin = s_in;
    for (;;) {
      p.vertices.push_back(vin / 2);
      int vout = vin + 1;
      int nxt = -1;
      for (const Arc& a : net[vout])
        if (a.fwd && a.cap == 0) {
          nxt = a.to;
          break;
        }
      verify(nxt >= 0, "two_disjoint_paths: flow decomposition lost the trail");
      if (nxt == tau) return p;
      vin = nxt;
    }
  };
  DisjointPaths out;
  int found = 0;
  for (const Arc& sa : net[sigma]) {
    if (!sa.fwd || sa.cap != 0) continue;
    (found == 0 ? out.first : out.second) = follow(sa.to);
    ++found;
  }
  verify(found == 2, "two_disjoint_paths: expected exactly two units of flow");
  for (const Path* p : {&out.first, &out.second}) {
    verify(is_path(g, *p), "two_disjoint_paths: invalid path from flow");
    verify(in_s[p->front()] && in_t[p->back()], "two_disjoint_paths: endpoints off their sets");
    for (size_t i = 1; i + 1 < p->vertices.size(); ++i)
      verify(!in_s[p->vertices[i]] && !in_t[p->vertices[i]],
             "two_disjoint_paths: interior touches an endpoint set");
  }
  verify(set_intersection(sorted_unique(out.first.vertices), sorted_unique(out.second.vertices))
             .empty(),
         "two_disjoint_paths: paths share a vertex");
  return out;
}

// ---- splicing a donor cycle onto an interlaced cycle ----

ExtendedCycle extend_via_disjoint_paths(const Graph& g, const Cycle& donor,
                                        const InterlacedCycle& inter) {
  verify(is_cycle(g, donor), "extend_via_disjoint_paths: donor is not a cycle");
  verify(is_cycle(g, inter.cycle), "extend_via_disjoint_paths: interlaced cycle is invalid");
  verify(chords_interlace(inter.cycle, inter.chord_a, inter.chord_b),
         "extend_via_disjoint_paths: the chords do not interlace");
  verify(g.has_edge(inter.chord_a.first, inter.chord_a.second) &&
             g.has_edge(inter.chord_b.first, inter.chord_b.second),
         "extend_via_disjoint_paths: chord edge missing from the graph");
  VertexList dset = sorted_unique(donor.vertices);
  VertexList iset = sorted_unique(inter.cycle.vertices);
  verify(set_intersection(dset, iset).empty(),
         "extend_via_disjoint_paths: donor meets the interlaced cycle");

  DisjointPaths dp = two_disjoint_paths(g, dset, iset);
  const Path& p1 = dp.first;
  const Path& p2 = dp.second;
  Vertex x1 = p1.front(), y1 = p1.back(), x2 = p2.front(), y2 = p2.back();

  const int n = g.vertex_count();
  std::vector<int> dpos = positions_on(n, donor.vertices);
  VertexList arc_fwd = walk_cycle(donor.vertices, dpos[x1], dpos[x2], +1);
  VertexList arc_bwd = walk_cycle(donor.vertices, dpos[x1], dpos[x2], -1);
  const VertexList& arc = arc_fwd.size() >= arc_bwd.size() ? arc_fwd : arc_bwd;

  const VertexList& icv = inter.cycle.vertices;
  std::vector<int> ipos = positions_on(n, icv);
  int a = ipos[y2], b = ipos[y1];
  std::vector<VertexList> routes;
  routes.push_back(walk_cycle(icv, a, b, +1));
  routes.push_back(walk_cycle(icv, a, b, -1));
  for (Edge jump : {inter.chord_a, inter.chord_b})
    for (auto [q, qb] : {std::pair<Vertex, Vertex>{jump.first, jump.second},
                         std::pair<Vertex, Vertex>{jump.second, jump.first}})
      for (int d1 : {+1, -1})
        for (int d2 : {+1, -1}) {
          VertexList part1 = walk_cycle(icv, a, ipos[q], d1);
          VertexList part2 = walk_cycle(icv, ipos[qb], b, d2);
          part1.insert(part1.end(), part2.begin(), part2.end());
          routes.push_back(std::move(part1));
        }

  for (const VertexList& route : routes) {
    if (route.size() < 2) continue;
    VertexList cyc = arc;
    cyc.insert(cyc.end(), p2.vertices.begin() + 1, p2.vertices.end());
    cyc.insert(cyc.end(), route.begin() + 1, route.end());
    for (int k = static_cast<int>(p1.vertices.size()) - 2; k >= 1; --k)
      cyc.push_back(p1.vertices[k]);
    Cycle cand{cyc};
    if (!is_cycle(g, cand)) continue;
    std::vector<int> cpos = positions_on(n, cand.vertices);
    const int Lc = cand.length();
    auto survives = [&](Edge ch) {
      int pa = cpos[ch.first], pb = cpos[ch.second];
      return pa >= 0 && pb >= 0 && cyclic_gap(pa, pb, Lc) >= 2;
    };
    Edge kept{-1, -1};
    if (survives(inter.chord_a))
      kept = inter.chord_a;
    else if (survives(inter.chord_b))
      kept = inter.chord_b;
    else
      continue;
    ExtendedCycle out;
    out.cycle = std::move(cand);
    out.kept_chord = kept;
    out.donor_vertices = static_cast<int>(arc.size());
    verify(out.donor_vertices >= (donor.length() + 1) / 2,
           "extend_via_disjoint_paths: kept less than half of the donor");
    return out;
  }
  throw SearchError(
      "extend_via_disjoint_paths: no routing through the interlaced cycle keeps a chord");
}

// ---- chord-protected shortening ----

namespace {

struct Rewrite {
  VertexList cycle;
  int len = 0;
  bool in_range = false;
};

std::optional<Rewrite> validate_rewrite(const Graph& g, VertexList cand, Edge des, int lo,
                                        int hi, int old_len) {
  const int len = static_cast<int>(cand.size());
  if (len >= old_len || len < lo) return std::nullopt;
  Cycle c{std::move(cand)};
  if (!is_cycle(g, c)) return std::nullopt;
  int pa = -1, pb = -1;
  for (int i = 0; i < len; ++i) {
    if (c.vertices[i] == des.first) pa = i;
    if (c.vertices[i] == des.second) pb = i;
  }
  if (pa < 0 || pb < 0 || cyclic_gap(pa, pb, len) < 2) return std::nullopt;
  Rewrite r;
  r.cycle = std::move(c.vertices);
  r.len = len;
  r.in_range = len >= lo && len <= hi;
  return r;
}

// Replace the stretch of the cycle between w and z (both interior to the same
// chord arc) by seg; the walk starts at the chord endpoint iu, so the replaced
// interval never contains a chord endpoint.
VertexList splice_same_side(const VertexList& cyc, int iu, Vertex w, Vertex z,
                            const VertexList& seg) {
  const int L = static_cast<int>(cyc.size());
  VertexList out;
  out.reserve(cyc.size() + seg.size());
  int state = 0;
  Vertex other = -1;
  for (int s = 0; s < L; ++s) {
    Vertex v = cyc[(iu + s) % L];
    if (state == 0) {
      if (v == w || v == z) {
        if (seg.front() == v)
          out.insert(out.end(), seg.begin(), seg.end());
        else
          out.insert(out.end(), seg.rbegin(), seg.rend());
        other = (v == w ? z : w);
        state = 1;
      } else {
        out.push_back(v);
      }
    } else if (state == 1) {
      if (v == other) state = 2;
    } else {
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

ShortenResult shorten_chorded_cycle(const Graph& g, const Cycle& cycle, Edge designated,
                                    int lo, int hi) {
  require(4 <= lo && lo <= hi, "shorten_chorded_cycle: need 4 <= lo <= hi");
  require(cycle.length() >= lo, "shorten_chorded_cycle: input is already shorter than lo");
  verify(is_cycle(g, cycle), "shorten_chorded_cycle: input is not a cycle");
  const Edge des = make_edge(designated.first, designated.second);
  const int n = g.vertex_count();
  {
    std::vector<int> pos = positions_on(n, cycle.vertices);
    verify(pos[des.first] >= 0 && pos[des.second] >= 0 &&
               g.has_edge(des.first, des.second) &&
               cyclic_gap(pos[des.first], pos[des.second], cycle.length()) >= 2,
           "shorten_chorded_cycle: designated edge is not a chord of the cycle");
  }

  const BfsResult ball_u = bfs(g, {des.first});
  const BfsResult ball_v = bfs(g, {des.second});
  auto in_ball = [&](Vertex v, int r) {
    return (ball_u.dist[v] >= 0 && ball_u.dist[v] <= r) ||
           (ball_v.dist[v] >= 0 && ball_v.dist[v] <= r);
  };

  VertexList cur = cycle.vertices;
  while (static_cast<int>(cur.size()) > hi) {
    const int L = static_cast<int>(cur.size());
    std::vector<int> pos = positions_on(n, cur);
    const int iu = pos[des.first], iv = pos[des.second];
    std::vector<int> side(L, 0), order(L, 0);
    {
      int o = 0;
      for (int i = iu;; i = (i + 1) % L) {
        order[i] = o++;
        if ((i + 1) % L == iu) break;
      }
      for (int i = (iu + 1) % L; i != iv; i = (i + 1) % L) side[i] = 1;
      for (int i = (iv + 1) % L; i != iu; i = (i + 1) % L) side[i] = 2;
    }

    std::vector<int> radii;
    for (int r = hi / 4; r > 0; r /= 2) radii.push_back(r);
    radii.push_back(0);

    std::optional<Rewrite> best;
    auto consider = [&](std::optional<Rewrite> r) {
      if (!r) return false;
      if (!best || r->len < best->len) best = std::move(*r);
      return best->in_range;
    };

    // cross rewrite: a second detour pairs with the excursion so that both
    // chord endpoints keep an intact stretch of the cycle on each side
    auto try_cross = [&](Vertex w, Vertex z, const VertexList& seg, int r) {
      Vertex ww = w, zz = z;
      VertexList s = seg;
      if (side[pos[ww]] == 2) {
        std::swap(ww, zz);
        std::reverse(s.begin(), s.end());
      }
      const int r2 = std::min(r, hi / 8);
      std::vector<char> blocked2(n, 0);
      for (int v = 0; v < n; ++v)
        if (in_ball(v, r2) || pos[v] >= 0) blocked2[v] = 1;
      std::vector<char> in_seg(n, 0);
      for (Vertex v : s) {
        blocked2[v] = 1;
        in_seg[v] = 1;
      }
      VertexList sources, targets;
      for (int i = 0; i < L; ++i) {
        Vertex v = cur[i];
        if (in_ball(v, r2) || in_seg[v]) continue;
        if (side[i] == 1 && order[i] > order[pos[ww]]) sources.push_back(v);
        if (side[i] == 2 && order[i] > order[pos[zz]]) targets.push_back(v);
      }
      if (sources.empty() || targets.empty()) return false;
      for (Vertex v : sources) blocked2[v] = 0;
      for (Vertex v : targets) blocked2[v] = 0;
      BfsResult r2bfs = bfs(g, sources, &blocked2);
      Vertex zbest = -1;
      for (Vertex tvtx : targets)
        if (r2bfs.dist[tvtx] >= 0 &&
            (zbest < 0 || r2bfs.dist[tvtx] < r2bfs.dist[zbest] ||
             (r2bfs.dist[tvtx] == r2bfs.dist[zbest] && tvtx < zbest)))
          zbest = tvtx;
      if (zbest < 0) return false;
      VertexList q2;
      for (Vertex v = zbest; v >= 0; v = r2bfs.parent[v]) q2.push_back(v);
      std::reverse(q2.begin(), q2.end());
      Vertex wp = q2.front(), zp = q2.back();

      VertexList cand = walk_cycle(cur, iu, pos[ww], +1);
      cand.insert(cand.end(), s.begin() + 1, s.end());
      VertexList part = walk_cycle(cur, pos[zz], iv, -1);
      cand.insert(cand.end(), part.begin() + 1, part.end());
      part = walk_cycle(cur, iv, pos[wp], -1);
      cand.insert(cand.end(), part.begin() + 1, part.end());
      cand.insert(cand.end(), q2.begin() + 1, q2.end());
      part = walk_cycle(cur, pos[zp], iu, +1);
      cand.insert(cand.end(), part.begin() + 1, part.end() - 1);
      return consider(validate_rewrite(g, std::move(cand), des, lo, hi, L));
    };

    // chords of the current cycle are zero-interior excursions; screen the
    // same-side ones by exact predicted length before any routed attempt
    {
      std::vector<std::pair<int, Edge>> direct;
      for (int i = 0; i < L; ++i) {
        Vertex a = cur[i];
        if (side[i] == 0) continue;
        for (Vertex b : g.neighbors(a)) {
          if (b <= a || pos[b] < 0 || side[pos[b]] != side[i]) continue;
          int removed = order[i] - order[pos[b]];
          removed = (removed < 0 ? -removed : removed) - 1;
          int predicted = L - removed;
          if (removed <= 0 || predicted < lo) continue;
          direct.push_back({predicted, {a, b}});
        }
      }
      std::sort(direct.begin(), direct.end());
      if (direct.size() > 8) direct.resize(8);
      for (const auto& [predicted, ch] : direct) {
        VertexList seg{ch.first, ch.second};
        if (consider(validate_rewrite(g, splice_same_side(cur, iu, ch.first, ch.second, seg),
                                      des, lo, hi, L)))
          break;
      }
    }

    for (size_t ri = 0; ri < radii.size() && !(best && best->in_range); ++ri) {
      const int r = radii[ri];
      std::vector<char> blocked(n, 0);
      for (int v = 0; v < n; ++v) blocked[v] = in_ball(v, r) ? 1 : 0;
      for (int k = 0; k < 8 && !(best && best->in_range); ++k) {
        int xi = (iu + 1 + static_cast<int>(static_cast<long long>(k) * L / 16)) % L;
        int yi = (xi + L / 2) % L;
        Vertex x = cur[xi], y = cur[yi];
        if (x == y || blocked[x] || blocked[y]) continue;
        BfsResult reach = bfs(g, {x}, &blocked);
        if (reach.dist[y] < 0) continue;
        VertexList q;
        for (Vertex v = y; v >= 0; v = reach.parent[v]) q.push_back(v);
        std::reverse(q.begin(), q.end());

        std::vector<int> contacts;
        for (int idx = 0; idx < static_cast<int>(q.size()); ++idx)
          if (pos[q[idx]] >= 0) contacts.push_back(idx);
        // screen same-side excursions by their exact predicted length; cap
        // the validations, and only attempt a few cross excursions
        std::vector<std::pair<int, int>> same_side;  // (predicted len, contact index)
        std::vector<int> cross;
        for (size_t ci = 0; ci + 1 < contacts.size(); ++ci) {
          int k1 = contacts[ci], k2 = contacts[ci + 1];
          int sw = side[pos[q[k1]]], sz = side[pos[q[k2]]];
          if (sw == 0 || sz == 0) continue;
          if (sw == sz) {
            int removed = order[pos[q[k1]]] - order[pos[q[k2]]];
            removed = (removed < 0 ? -removed : removed) - 1;
            int predicted = L - removed + (k2 - k1 - 1);
            if (predicted < L && predicted >= lo)
              same_side.push_back({predicted, static_cast<int>(ci)});
          } else if (cross.size() < 3) {
            cross.push_back(static_cast<int>(ci));
          }
        }
        std::sort(same_side.begin(), same_side.end());
        if (static_cast<int>(same_side.size()) > 3) same_side.resize(3);
        for (const auto& [predicted, ci] : same_side) {
          int k1 = contacts[ci], k2 = contacts[ci + 1];
          VertexList seg(q.begin() + k1, q.begin() + k2 + 1);
          if (consider(validate_rewrite(g, splice_same_side(cur, iu, q[k1], q[k2], seg), des,
                                        lo, hi, L)))
            break;
        }
        if (best && best->in_range) break;
        for (int ci : cross) {
          int k1 = contacts[ci], k2 = contacts[ci + 1];
          VertexList seg(q.begin() + k1, q.begin() + k2 + 1);
          if (try_cross(q[k1], q[k2], seg, r)) break;
        }
      }
    }

    if (!best) break;
    verify(best->len < L, "shorten_chorded_cycle: accepted rewrite failed to shorten");
    cur = std::move(best->cycle);
  }

  ShortenResult res;
  res.designated = des;
  Cycle final_cycle{std::move(cur)};
  verify(is_cycle(g, final_cycle), "shorten_chorded_cycle: final cycle is invalid");
  res.chorded = chords_of(g, final_cycle);
  verify(std::binary_search(res.chorded.chords.begin(), res.chorded.chords.end(), des),
         "shorten_chorded_cycle: designated chord was lost");
  const int len = res.chorded.cycle.length();
  res.in_range = lo <= len && len <= hi;
  return res;
}

}  // namespace chords
