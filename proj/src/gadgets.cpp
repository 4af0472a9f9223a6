#include "chordcycles/gadgets.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "chordcycles/core_ops.hpp"
#include "chordcycles/errors.hpp"
#include "chordcycles/expansion.hpp"

namespace chords {

namespace {

std::vector<int> positions_on(int n, const VertexList& vs) {
  std::vector<int> pos(n, -1);
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) pos[vs[i]] = i;
  return pos;
}

// inclusive cyclic walk from index `from` to index `to`, stepping by `step`
VertexList walk_cycle(const Cycle& c, int from, int to, int step) {
  int n = c.length();
  VertexList out{c.vertices[from]};
  int i = from;
  while (i != to) {
    i = (i + step + n) % n;
    out.push_back(c.vertices[i]);
  }
  return out;
}

int cyclic_gap(int n, int a, int b) {
  int d = std::abs(a - b);
  return std::min(d, n - d);
}

std::vector<char> outside_mask(int n, const VertexList& inside) {
  std::vector<char> m(n, 1);
  for (Vertex v : inside) m[v] = 0;
  return m;
}

InterlacedCycle lift_interlaced(const Subgraph& sg, const InterlacedCycle& ic) {
  InterlacedCycle out;
  out.cycle = sg.up(ic.cycle);
  out.chord_a = make_edge(sg.up(ic.chord_a.first), sg.up(ic.chord_a.second));
  out.chord_b = make_edge(sg.up(ic.chord_b.first), sg.up(ic.chord_b.second));
  return out;
}

}  // namespace

// ---- degree classification ----

DegreeClasses classify_degrees(const Graph& g, int m) {
  require(m >= 2, "classify_degrees: m must be at least 2");
  DegreeClasses out;
  out.m = m;
  out.classes.emplace_back();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    int k = 0;
    long long bound = m;  // m^(k+1)
    while (g.degree(v) >= bound) {
      ++k;
      bound *= m;
    }
    while (static_cast<int>(out.classes.size()) <= k) out.classes.emplace_back();
    out.classes[static_cast<std::size_t>(k)].push_back(v);
  }
  for (int k = 0; k < static_cast<int>(out.classes.size()); ++k)
    if (out.classes[k].size() > out.classes[out.dominant].size()) out.dominant = k;
  return out;
}

// ---- spiders ----

std::optional<std::string> spider_violation(const Graph& g, const Spider& s) {
  if (!g.has_vertex(s.center)) return "center out of range";
  if (s.max_leg_len < 1) return "max_leg_len below 1";
  for (int k = 0; k < 3; ++k) {
    const Path& leg = s.legs[k];
    std::string name = "leg " + std::to_string(k);
    if (leg.vertices.empty()) return name + " is empty";
    if (!is_path(g, leg)) return name + " is not a path of the graph";
    if (leg.front() != s.center) return name + " does not start at the center";
    if (leg.back() != s.leaves[k]) return name + " does not end at its leaf";
    if (leg.length() < 1) return name + " has no edge";
    if (leg.length() > s.max_leg_len) return name + " exceeds max_leg_len";
  }
  if (s.legs[1].length() != 1) return "second leg is not a single edge";
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      VertexList shared = set_intersection(sorted_unique(s.legs[a].vertices),
                                           sorted_unique(s.legs[b].vertices));
      if (shared != VertexList{s.center})
        return "legs " + std::to_string(a) + " and " + std::to_string(b) +
               " share more than the center";
    }
  return std::nullopt;
}

std::vector<Spider> find_spiders(const Graph& g, int want, int max_leg_len, int leg_target,
                                 const VertexList& avoid, const VertexList* centers) {
  require(want >= 0, "find_spiders: negative count");
  require(max_leg_len >= 1, "find_spiders: max_leg_len must be positive");
  require(leg_target >= 1 && leg_target <= max_leg_len, "find_spiders: leg_target out of range");
  for (Vertex v : avoid) require(g.has_vertex(v), "find_spiders: avoided vertex out of range");
  std::vector<char> used = make_mask(g.vertex_count(), sorted_unique(avoid));
  VertexList candidates;
  if (centers != nullptr) {
    candidates = sorted_unique(*centers);
    for (Vertex v : candidates) require(g.has_vertex(v), "find_spiders: center out of range");
  } else {
    candidates.resize(g.vertex_count());
    std::iota(candidates.begin(), candidates.end(), 0);
  }
  std::vector<Spider> out;
  for (Vertex x : candidates) {
    if (static_cast<int>(out.size()) >= want) break;
    if (used[x]) continue;
    VertexList free;
    for (Vertex w : g.neighbors(x)) {
      if (!used[w]) free.push_back(w);
      if (free.size() == 3) break;
    }
    if (free.size() < 3) continue;
    Spider s;
    s.center = x;
    s.max_leg_len = max_leg_len;
    used[x] = 1;
    for (int k = 0; k < 3; ++k) {
      used[free[k]] = 1;
      s.legs[k].vertices = {x, free[k]};
    }
    for (int k : {0, 2}) {
      Path& leg = s.legs[k];
      while (leg.length() < leg_target) {
        Vertex next = -1;
        for (Vertex w : g.neighbors(leg.back())) {
          if (!used[w]) {
            next = w;
            break;
          }
        }
        if (next < 0) break;
        used[next] = 1;
        leg.vertices.push_back(next);
      }
    }
    for (int k = 0; k < 3; ++k) s.leaves[k] = s.legs[k].back();
    auto viol = spider_violation(g, s);
    verify(!viol.has_value(),
           "find_spiders: built an invalid spider: " + (viol ? *viol : std::string()));
    out.push_back(std::move(s));
  }
  return out;
}

// ---- rooted trees ----

RootedTree bfs_tree(const Graph& g, Vertex root, const std::vector<char>* blocked) {
  require(g.has_vertex(root), "bfs_tree: root out of range");
  require(blocked == nullptr || !(*blocked)[root], "bfs_tree: root is blocked");
  BfsResult r = bfs(g, {root}, blocked);
  RootedTree t;
  t.root = root;
  t.parent = r.parent;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (r.dist[v] >= 0) t.vertices.push_back(v);
  return t;
}

VertexList dangerous_vertices(const RootedTree& t, int threshold) {
  require(threshold >= 1, "dangerous_vertices: threshold must be positive");
  int n = static_cast<int>(t.parent.size());
  require(t.root >= 0 && t.root < n, "dangerous_vertices: bad root");
  std::vector<int> kids(n, 0);
  for (Vertex v : t.vertices)
    if (t.parent[v] >= 0) ++kids[t.parent[v]];
  // peel leaves upward, accumulating strict descendant counts
  std::vector<int> remaining = kids;
  std::vector<int> desc(n, 0);
  VertexList stack;
  for (Vertex v : t.vertices)
    if (remaining[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    Vertex p = t.parent[v];
    if (p < 0) continue;
    desc[p] += desc[v] + 1;
    if (--remaining[p] == 0) stack.push_back(p);
  }
  VertexList out;
  for (Vertex v : t.vertices)
    if (v != t.root && kids[v] > 0 && desc[v] >= threshold) out.push_back(v);
  return out;
}

// ---- anchor routing ----

AnchorRouting route_to_anchor_sets(const Graph& g, const Cycle& cycle, Edge chord,
                                   const std::vector<VertexList>& anchors, int danger_threshold,
                                   int max_path_len) {
  int n = g.vertex_count();
  require(is_cycle(g, cycle), "route_to_anchor_sets: not a cycle of the graph");
  require(danger_threshold >= 1, "route_to_anchor_sets: threshold must be positive");
  require(max_path_len >= 1, "route_to_anchor_sets: path budget must be positive");
  require(anchors.size() == 3, "route_to_anchor_sets: exactly three anchor sets expected");
  int L = cycle.length();
  std::vector<int> pos = positions_on(n, cycle.vertices);
  require(g.has_vertex(chord.first) && g.has_vertex(chord.second) &&
              g.has_edge(chord.first, chord.second),
          "route_to_anchor_sets: chord edge missing");
  require(pos[chord.first] >= 0 && pos[chord.second] >= 0,
          "route_to_anchor_sets: chord endpoint off the cycle");
  require(cyclic_gap(L, pos[chord.first], pos[chord.second]) >= 2,
          "route_to_anchor_sets: chord endpoints are consecutive");
  VertexList cyc = sorted_unique(cycle.vertices);
  for (int i = 0; i < 3; ++i) {
    const VertexList& a = anchors[i];
    require(!a.empty() && a == sorted_unique(a),
            "route_to_anchor_sets: anchors must be nonempty sorted sets");
    for (Vertex v : a) require(g.has_vertex(v), "route_to_anchor_sets: anchor vertex out of range");
    require(set_intersection(a, cyc).empty(), "route_to_anchor_sets: anchor touches the cycle");
    for (int j = i + 1; j < 3; ++j)
      require(set_intersection(a, anchors[j]).empty(), "route_to_anchor_sets: anchors overlap");
  }

  std::array<Vertex, 3> root;
  std::array<VertexList, 3> danger;
  for (int i = 0; i < 3; ++i) {
    root[i] = anchors[i].front();
    std::vector<char> outside = outside_mask(n, anchors[i]);
    RootedTree t = bfs_tree(g, root[i], &outside);
    require(t.vertices.size() == anchors[i].size(), "route_to_anchor_sets: anchor not connected");
    danger[i] = dangerous_vertices(t, danger_threshold);
  }

  std::array<Path, 3> route;
  VertexList prior;  // vertices of earlier routes and their protecting paths
  for (int i = 0; i < 3; ++i) {
    // the part of this anchor still hanging together with its root
    std::vector<char> avail_blocked = outside_mask(n, anchors[i]);
    for (Vertex v : prior) avail_blocked[v] = 1;
    verify(!avail_blocked[root[i]], "route_to_anchor_sets: a root was consumed");
    VertexList avail = component_of(g, root[i], &avail_blocked);
    std::vector<char> source_mask(n, 0);
    for (Vertex v : avail) source_mask[v] = 1;
    source_mask[root[i]] = 0;
    VertexList sources;
    for (Vertex v : avail)
      if (source_mask[v]) sources.push_back(v);
    if (sources.empty()) throw SearchError("route_to_anchor_sets: anchor reduced to its root");

    // the route may cross other anchors but never their sensitive vertices,
    // any root, earlier routes, the cycle, or this anchor beyond its sources
    std::vector<char> blocked(n, 0);
    for (Vertex v : cycle.vertices) blocked[v] = 1;
    for (int j = 0; j < 3; ++j) {
      blocked[root[j]] = 1;
      if (j != i)
        for (Vertex v : danger[j]) blocked[v] = 1;
    }
    for (Vertex v : prior) blocked[v] = 1;
    for (Vertex v : anchors[i])
      if (!source_mask[v]) blocked[v] = 1;
    BfsResult r = bfs(g, sources, &blocked);

    Vertex best_t = -1, best_w = -1;
    int best_d = INT_MAX;
    for (Vertex t : cycle.vertices) {
      if (t == chord.first || t == chord.second) continue;
      if (set_contains(prior, t)) continue;  // landings must stay distinct
      for (Vertex w : g.neighbors(t)) {
        if (blocked[w] || r.dist[w] < 0) continue;
        int d = r.dist[w] + 1;
        if (d < best_d || (d == best_d && (t < best_t || (t == best_t && w < best_w)))) {
          best_d = d;
          best_t = t;
          best_w = w;
        }
      }
    }
    if (best_t < 0) throw SearchError("route_to_anchor_sets: no route from an anchor to the cycle");
    if (best_d > max_path_len)
      throw SearchError("route_to_anchor_sets: no route within the path budget");
    Path p;
    p.vertices.push_back(best_t);
    for (Vertex v = best_w; v >= 0; v = r.parent[v]) p.vertices.push_back(v);
    verify(is_path(g, p), "route_to_anchor_sets: built a broken route");
    route[i] = p;

    // protect a path from the route's anchor end back to the root, so later
    // routes cannot detach it
    std::vector<char> off_avail = outside_mask(n, avail);
    BfsResult q = bfs(g, {p.back()}, &off_avail);
    verify(q.dist[root[i]] >= 0, "route_to_anchor_sets: root detached from its anchor");
    VertexList qv;
    for (Vertex v = root[i]; v >= 0; v = q.parent[v]) qv.push_back(v);
    prior = set_union(prior, set_union(sorted_unique(p.vertices), sorted_unique(qv)));
  }

  // two of the three landings share a chord arc; pair them, nearer endpoint first
  int iu = pos[chord.first], iv = pos[chord.second];
  int fwd = (iv - iu + L) % L;
  std::array<int, 3> side{}, du{};
  for (int i = 0; i < 3; ++i) {
    int pe = pos[route[i].front()];
    int off_u = (pe - iu + L) % L;
    side[i] = off_u < fwd ? 0 : 1;
    du[i] = side[i] == 0 ? off_u : (iu - pe + L) % L;  // arc distance from chord.first
  }
  int pick_i = -1, pick_j = -1;
  for (int s = 0; s < 2 && pick_i < 0; ++s) {
    std::vector<int> members;
    for (int i = 0; i < 3; ++i)
      if (side[i] == s) members.push_back(i);
    if (members.size() < 2) continue;
    pick_i = members[0];
    pick_j = members[0];
    for (int i : members) {
      if (du[i] < du[pick_i]) pick_i = i;
      if (du[i] > du[pick_j]) pick_j = i;
    }
  }
  verify(pick_i >= 0 && pick_i != pick_j, "route_to_anchor_sets: no two routes share a chord arc");

  auto surviving = [&](int self, int other) {
    std::vector<char> blocked = outside_mask(n, anchors[self]);
    for (Vertex v : route[other].vertices) blocked[v] = 1;
    return sorted_unique(component_of(g, root[self], &blocked));
  };
  AnchorRouting out;
  out.i = pick_i;
  out.j = pick_j;
  out.a_i_prime = surviving(pick_i, pick_j);
  out.a_j_prime = surviving(pick_j, pick_i);
  out.p_i = route[pick_i];
  out.p_j = route[pick_j];
  // every vertex the other route took from this anchor was harmless for its
  // tree, so each removal costs at most danger_threshold vertices
  verify(static_cast<int>(out.a_i_prime.size()) >=
             static_cast<int>(anchors[pick_i].size()) -
                 static_cast<int>(route[pick_j].vertices.size()) * danger_threshold,
         "route_to_anchor_sets: anchor lost more than the removal bound allows");
  verify(static_cast<int>(out.a_j_prime.size()) >=
             static_cast<int>(anchors[pick_j].size()) -
                 static_cast<int>(route[pick_i].vertices.size()) * danger_threshold,
         "route_to_anchor_sets: anchor lost more than the removal bound allows");
  if (2 * out.a_i_prime.size() < anchors[pick_i].size() ||
      2 * out.a_j_prime.size() < anchors[pick_j].size())
    throw SearchError("route_to_anchor_sets: an anchor lost over half its vertices");
  verify(set_contains(out.a_i_prime, out.p_i.back()),
         "route_to_anchor_sets: a route end was detached from its anchor");
  verify(set_contains(out.a_j_prime, out.p_j.back()),
         "route_to_anchor_sets: a route end was detached from its anchor");
  return out;
}

// ---- cycle extender ----

std::optional<std::string> extender_violation(const Graph& g, const CycleExtender& e) {
  if (!is_cycle(g, e.cycle)) return "cycle is not a cycle of the graph";
  int L = e.cycle.length();
  if (e.max_cycle_len < 3 || L > e.max_cycle_len) return "cycle exceeds max_cycle_len";
  if (e.p1.vertices.size() < 2 || !is_path(g, e.p1)) return "p1 is not a path with an edge";
  if (e.p2.vertices.size() < 2 || !is_path(g, e.p2)) return "p2 is not a path with an edge";
  if (e.max_path_len < 1 || e.p1.length() > e.max_path_len) return "p1 exceeds max_path_len";
  if (e.p2.length() > e.max_path_len) return "p2 exceeds max_path_len";
  if (e.chord != make_edge(e.p1.front(), e.p2.front())) return "chord does not join the tail starts";
  if (!g.has_edge(e.chord.first, e.chord.second)) return "chord edge missing from the graph";
  std::vector<int> pos = positions_on(g.vertex_count(), e.cycle.vertices);
  if (pos[e.p1.front()] < 0 || pos[e.p2.front()] < 0) return "a tail starts off the cycle";
  if (cyclic_gap(L, pos[e.p1.front()], pos[e.p2.front()]) != 1)
    return "chord endpoints are not consecutive on the cycle";
  VertexList cyc = sorted_unique(e.cycle.vertices);
  VertexList v1 = sorted_unique(e.p1.vertices);
  VertexList v2 = sorted_unique(e.p2.vertices);
  if (set_intersection(v1, cyc) != VertexList{e.p1.front()})
    return "p1 touches the cycle beyond its start";
  if (set_intersection(v2, cyc) != VertexList{e.p2.front()})
    return "p2 touches the cycle beyond its start";
  if (!set_intersection(v1, v2).empty()) return "the tails intersect";
  if (e.anchor_size < 1) return "anchor_size below 1";
  int ecc = 0;
  for (int k = 0; k < 2; ++k) {
    const VertexList& a = k == 0 ? e.a1 : e.a2;
    const Path& p = k == 0 ? e.p1 : e.p2;
    const VertexList& own = k == 0 ? v1 : v2;
    const VertexList& other = k == 0 ? v2 : v1;
    std::string name = k == 0 ? "a1" : "a2";
    if (a.empty() || a != sorted_unique(a)) return name + " is not a nonempty sorted set";
    for (Vertex v : a)
      if (!g.has_vertex(v)) return name + " has a vertex out of range";
    if (static_cast<int>(a.size()) != e.anchor_size) return name + " size differs from anchor_size";
    if (!set_contains(a, p.back())) return "a tail does not end in its anchor";
    if (!set_intersection(a, cyc).empty()) return name + " touches the cycle";
    if (set_intersection(a, own) != VertexList{p.back()})
      return name + " meets its tail beyond the tail end";
    if (!set_intersection(a, other).empty()) return name + " touches the other tail";
    std::vector<char> outside = outside_mask(g.vertex_count(), a);
    BfsResult r = bfs(g, {p.back()}, &outside);
    for (Vertex v : a) {
      if (r.dist[v] < 0) return name + " is not connected";
      ecc = std::max(ecc, r.dist[v]);
    }
  }
  if (!set_intersection(e.a1, e.a2).empty()) return "the anchors intersect";
  if (ecc != e.anchor_diameter) return "anchor_diameter mismatch";
  return std::nullopt;
}

CycleExtender build_cycle_extender(const Graph& g, const GadgetParams& params,
                                   const VertexList& avoid) {
  require(params.core_degree >= 1, "build_cycle_extender: core_degree must be positive");
  require(params.min_cycle_len >= 4, "build_cycle_extender: min_cycle_len below 4");
  require(params.max_cycle_len >= params.min_cycle_len,
          "build_cycle_extender: max_cycle_len below min_cycle_len");
  require(params.max_path_len >= 1, "build_cycle_extender: max_path_len must be positive");
  require(params.anchor_size >= 1, "build_cycle_extender: anchor_size must be positive");
  require(params.anchor_diameter >= 0, "build_cycle_extender: negative anchor_diameter");
  require(params.danger_threshold >= 1, "build_cycle_extender: threshold must be positive");
  require(params.alpha > 0, "build_cycle_extender: alpha must be positive");
  for (Vertex v : avoid) require(g.has_vertex(v), "build_cycle_extender: avoided vertex out of range");

  VertexList all(g.vertex_count());
  std::iota(all.begin(), all.end(), 0);
  Subgraph sub = induced_subgraph(g, set_difference(all, sorted_unique(avoid)));
  const Graph& s = sub.graph;
  if (s.empty()) throw StageError("degree-core", "nothing left outside the avoided set");

  Subgraph core = min_degree_core(s, params.core_degree);
  if (core.graph.empty()) throw StageError("degree-core", "the min-degree core is empty");

  std::optional<InterlacedCycle> found = find_interlaced_cycle(core.graph, params.seed);
  if (!found) throw StageError("interlaced-cycle", "no cycle with two interlacing chords found");
  InterlacedCycle ic = lift_interlaced(core, *found);

  Cycle cycle = ic.cycle;
  Edge designated = ic.chord_a;

  if (cycle.length() < params.min_cycle_len) {
    // lengthen through a donor cycle found away from the short one; on any
    // search failure the short cycle is kept, the gadget is just smaller
    try {
      CleanOptions copt;
      copt.override_size_bound = true;
      copt.seed = params.seed;
      CleanResult cr = clean_for_expansion(s, sorted_unique(cycle.vertices), params.alpha, copt);
      if (cr.residual.graph.vertex_count() < 3)
        throw SearchError("build_cycle_extender: cleaned residual too small");
      LongCycleResult lc =
          find_long_cycle(cr.residual.graph, 2 * params.min_cycle_len, params.seed);
      if (!lc.cycle) throw SearchError("build_cycle_extender: no donor cycle in the residual");
      Cycle donor = cr.residual.up(*lc.cycle);
      ExtendedCycle ext = extend_via_disjoint_paths(s, donor, ic);
      cycle = ext.cycle;
      designated = ext.kept_chord;
    } catch (const SearchError&) {
    } catch (const InfeasibleError&) {
    }
  }

  ShortenResult sh =
      shorten_chorded_cycle(s, cycle, designated, params.min_cycle_len, params.max_cycle_len);
  cycle = sh.chorded.cycle;
  if (cycle.length() > params.max_cycle_len)
    throw StageError("shorten", "stuck above the cycle length cap");

  std::vector<VertexList> anchors;
  VertexList sub_all(s.vertex_count());
  std::iota(sub_all.begin(), sub_all.end(), 0);
  VertexList avail = set_difference(sub_all, sorted_unique(cycle.vertices));
  for (int t = 0; t < 3; ++t) {
    Subgraph rest = induced_subgraph(s, avail);
    VertexList a;
    try {
      a = find_low_diameter_set(rest.graph, params.anchor_size, params.anchor_diameter);
    } catch (const SearchError& err) {
      throw StageError("anchor-sets", err.what());
    }
    VertexList lifted = rest.up(a);
    anchors.push_back(lifted);
    avail = set_difference(avail, lifted);
  }

  AnchorRouting routing;
  try {
    routing = route_to_anchor_sets(s, cycle, designated, anchors, params.danger_threshold,
                                   params.max_path_len);
  } catch (const SearchError& err) {
    throw StageError("route-anchors", err.what());
  }

  // keep the chord arc free of landings, break the other arc into two tails
  int L = cycle.length();
  std::vector<int> pos = positions_on(s.vertex_count(), cycle.vertices);
  int iu = pos[designated.first], iv = pos[designated.second];
  Vertex ei = routing.p_i.front(), ej = routing.p_j.front();
  int fwd = (iv - iu + L) % L;
  int dir = (pos[ei] - iu + L) % L < fwd ? 1 : -1;

  Cycle kept;
  kept.vertices = walk_cycle(cycle, iu, iv, -dir);
  Path t1;
  t1.vertices = walk_cycle(cycle, iu, pos[ei], dir);
  t1.vertices.insert(t1.vertices.end(), routing.p_i.vertices.begin() + 1,
                     routing.p_i.vertices.end());
  Path t2;
  t2.vertices = walk_cycle(cycle, iv, pos[ej], -dir);
  t2.vertices.insert(t2.vertices.end(), routing.p_j.vertices.begin() + 1,
                     routing.p_j.vertices.end());

  int target = std::min({static_cast<int>(routing.a_i_prime.size()),
                         static_cast<int>(routing.a_j_prime.size()), params.anchor_size});
  verify(target >= 1, "build_cycle_extender: empty anchor after routing");
  auto trimmed = [&](const VertexList& a, Vertex joint) {
    // keep the `target` vertices closest to the joint: ancestor-closed in the
    // BFS tree, hence still connected
    std::vector<char> outside = outside_mask(s.vertex_count(), a);
    BfsResult r = bfs(s, {joint}, &outside);
    VertexList order = a;
    std::sort(order.begin(), order.end(), [&](Vertex x, Vertex y) {
      if (r.dist[x] != r.dist[y]) return r.dist[x] < r.dist[y];
      return x < y;
    });
    order.resize(static_cast<std::size_t>(target));
    return sorted_unique(order);
  };
  VertexList a1 = trimmed(routing.a_i_prime, routing.p_i.back());
  VertexList a2 = trimmed(routing.a_j_prime, routing.p_j.back());
  auto ecc_of = [&](const VertexList& a, Vertex joint) {
    std::vector<char> outside = outside_mask(s.vertex_count(), a);
    BfsResult r = bfs(s, {joint}, &outside);
    int ecc = 0;
    for (Vertex v : a) {
      verify(r.dist[v] >= 0, "build_cycle_extender: trimmed anchor disconnected");
      ecc = std::max(ecc, r.dist[v]);
    }
    return ecc;
  };

  CycleExtender ex;
  ex.cycle = sub.up(kept);
  ex.chord = make_edge(sub.up(designated.first), sub.up(designated.second));
  ex.p1 = sub.up(t1);
  ex.p2 = sub.up(t2);
  ex.a1 = sub.up(a1);
  ex.a2 = sub.up(a2);
  ex.anchor_size = target;
  ex.anchor_diameter =
      std::max(ecc_of(a1, routing.p_i.back()), ecc_of(a2, routing.p_j.back()));
  ex.max_cycle_len = params.max_cycle_len;
  ex.max_path_len = params.max_cycle_len + params.max_path_len;
  auto viol = extender_violation(g, ex);
  if (viol) throw StageError("assemble", "assembled an invalid extender: " + *viol);
  return ex;
}

// ---- chaining ----

namespace {

struct Unit {
  int gadget = -1;
  int kind = 0;  // 0 spine, 1 leaf visit, 2 extender
  Vertex center = -1;
  VertexList entry, exit;
  const Spider* sp = nullptr;
  const CycleExtender* ex = nullptr;
};

// shortest walk between two anchor vertices staying inside the anchor
VertexList anchor_walk(const Graph& g, const VertexList& a, Vertex from, Vertex to) {
  std::vector<char> outside = outside_mask(g.vertex_count(), a);
  BfsResult r = bfs(g, {from}, &outside);
  verify(r.dist[to] >= 0, "chain_gadgets: anchor walk disconnected");
  VertexList back;
  for (Vertex v = to; v >= 0; v = r.parent[v]) back.push_back(v);
  std::reverse(back.begin(), back.end());
  return back;
}

VertexList unit_traversal(const Graph& g, const Unit& u, Vertex in, Vertex out) {
  if (u.kind == 0) {
    VertexList t(u.sp->legs[0].vertices.rbegin(), u.sp->legs[0].vertices.rend());
    t.insert(t.end(), u.sp->legs[2].vertices.begin() + 1, u.sp->legs[2].vertices.end());
    return t;
  }
  if (u.kind == 1) return {in, u.sp->leaves[1], out};
  const CycleExtender& e = *u.ex;
  VertexList t = anchor_walk(g, e.a1, in, e.p1.back());
  t.insert(t.end(), e.p1.vertices.rbegin() + 1, e.p1.vertices.rend());
  // around the cycle the long way, skipping the chord edge
  int L = e.cycle.length();
  std::vector<int> pos = positions_on(g.vertex_count(), e.cycle.vertices);
  int iu = pos[e.p1.front()], iv = pos[e.p2.front()];
  int step = (iu + 1) % L == iv ? -1 : 1;
  VertexList arc = walk_cycle(e.cycle, iu, iv, step);
  t.insert(t.end(), arc.begin() + 1, arc.end());
  t.insert(t.end(), e.p2.vertices.begin() + 1, e.p2.vertices.end());
  VertexList w2 = anchor_walk(g, e.a2, e.p2.back(), out);
  t.insert(t.end(), w2.begin() + 1, w2.end());
  return t;
}

}  // namespace

ChainResult chain_gadgets(const Graph& g, const std::vector<Spider>& spiders,
                          const std::vector<CycleExtender>& extenders, const ChainParams& params) {
  require(params.max_link_len >= 1, "chain_gadgets: link budget must be positive");
  int n = g.vertex_count();
  int total = static_cast<int>(spiders.size()) + static_cast<int>(extenders.size());
  require(total >= 1, "chain_gadgets: no gadgets to chain");

  std::vector<VertexList> body(total);
  for (int i = 0; i < static_cast<int>(spiders.size()); ++i) {
    auto v = spider_violation(g, spiders[i]);
    require(!v.has_value(), "chain_gadgets: invalid spider: " + (v ? *v : std::string()));
    VertexList vs;
    for (const Path& leg : spiders[i].legs)
      vs.insert(vs.end(), leg.vertices.begin(), leg.vertices.end());
    body[i] = sorted_unique(vs);
  }
  for (int i = 0; i < static_cast<int>(extenders.size()); ++i) {
    auto v = extender_violation(g, extenders[i]);
    require(!v.has_value(), "chain_gadgets: invalid extender: " + (v ? *v : std::string()));
    const CycleExtender& e = extenders[i];
    VertexList vs = e.cycle.vertices;
    vs.insert(vs.end(), e.p1.vertices.begin(), e.p1.vertices.end());
    vs.insert(vs.end(), e.p2.vertices.begin(), e.p2.vertices.end());
    vs.insert(vs.end(), e.a1.begin(), e.a1.end());
    vs.insert(vs.end(), e.a2.begin(), e.a2.end());
    body[static_cast<std::size_t>(spiders.size()) + i] = sorted_unique(vs);
  }
  for (int a = 0; a < total; ++a)
    for (int b = a + 1; b < total; ++b)
      require(set_intersection(body[a], body[b]).empty(), "chain_gadgets: gadgets overlap");

  std::vector<char> active(total, 1);
  int dropped = 0;
  while (true) {
    int active_count = static_cast<int>(std::count(active.begin(), active.end(), char(1)));
    if (active_count == 0) throw SearchError("chain_gadgets: every gadget was dropped");

    std::vector<char> core(n, 0);
    for (int gi = 0; gi < total; ++gi)
      if (active[gi])
        for (Vertex v : body[gi]) core[v] = 1;

    // build the units; a spider whose spare leaf has too few free neighbors
    // cannot be visited and drops now
    std::vector<Unit> units;
    bool rebuilt = false;
    for (int gi = 0; gi < total && !rebuilt; ++gi) {
      if (!active[gi]) continue;
      if (gi < static_cast<int>(spiders.size())) {
        const Spider& sp = spiders[gi];
        VertexList cand;
        for (Vertex w : g.neighbors(sp.leaves[1]))
          if (!core[w]) cand.push_back(w);
        if (cand.size() < 2) {
          active[gi] = 0;
          ++dropped;
          rebuilt = true;
          break;
        }
        Unit spine;
        spine.gadget = gi;
        spine.kind = 0;
        spine.center = sp.center;
        spine.entry = {sp.leaves[0]};
        spine.exit = {sp.leaves[2]};
        spine.sp = &sp;
        Unit visit;
        visit.gadget = gi;
        visit.kind = 1;
        visit.center = sp.leaves[1];
        for (int idx = 0; idx < static_cast<int>(cand.size()); ++idx)
          (idx % 2 == 0 ? visit.entry : visit.exit).push_back(cand[idx]);
        visit.sp = &sp;
        units.push_back(std::move(spine));
        units.push_back(std::move(visit));
      } else {
        const CycleExtender& e = extenders[gi - static_cast<int>(spiders.size())];
        Unit u;
        u.gadget = gi;
        u.kind = 2;
        u.center = e.chord.first;
        u.entry = e.a1;
        u.exit = e.a2;
        u.ex = &e;
        units.push_back(std::move(u));
      }
    }
    if (rebuilt) continue;

    // nearest-neighbor tour over the unit centers
    int s = static_cast<int>(units.size());
    std::vector<std::vector<int>> cdist(static_cast<std::size_t>(s));
    for (int k = 0; k < s; ++k) {
      BfsResult r = bfs(g, {units[k].center});
      cdist[k].resize(static_cast<std::size_t>(s));
      for (int l = 0; l < s; ++l)
        cdist[k][l] = r.dist[units[l].center] >= 0 ? r.dist[units[l].center] : INT_MAX;
    }
    std::vector<int> tour{0};
    std::vector<char> seen(static_cast<std::size_t>(s), 0);
    seen[0] = 1;
    while (static_cast<int>(tour.size()) < s) {
      int at = tour.back(), best = -1;
      for (int l = 0; l < s; ++l)
        if (!seen[l] && (best < 0 || cdist[at][l] < cdist[at][best])) best = l;
      seen[best] = 1;
      tour.push_back(best);
    }

    // links between consecutive units; the last one closes back to the first
    std::vector<char> consumed(n, 0);
    std::vector<Path> links(static_cast<std::size_t>(s));
    std::vector<Vertex> entry_at(static_cast<std::size_t>(s), -1);
    std::vector<Vertex> exit_at(static_cast<std::size_t>(s), -1);
    bool failed = false;
    for (int step = 0; step < s && !failed; ++step) {
      const Unit& from = units[tour[step]];
      const Unit& to = units[tour[(step + 1) % s]];
      VertexList x, y;
      for (Vertex v : from.exit)
        if (!consumed[v]) x.push_back(v);
      for (Vertex v : to.entry)
        if (!consumed[v]) y.push_back(v);
      if (x.empty() || y.empty()) {
        failed = true;
        break;
      }
      VertexList shared = set_intersection(x, y);
      Path link;
      if (!shared.empty()) {
        link.vertices = {shared.front()};
      } else {
        std::vector<char> keep(n, 0);
        for (Vertex v : x) keep[v] = 1;
        for (Vertex v : y) keep[v] = 1;
        VertexList b;
        for (Vertex v = 0; v < n; ++v)
          if ((core[v] || consumed[v]) && !keep[v]) b.push_back(v);
        try {
          link = connect_avoiding(g, x, y, b);
        } catch (const SearchError&) {
          failed = true;
          break;
        }
        if (link.length() > params.max_link_len) {
          failed = true;
          break;
        }
      }
      for (Vertex v : link.vertices) consumed[v] = 1;
      exit_at[tour[step]] = link.front();
      entry_at[tour[(step + 1) % s]] = link.back();
      links[step] = std::move(link);
    }

    if (failed) {
      // drop the gadget with the fewest spare attach vertices (ties: later one)
      int victim = -1, worst = INT_MAX;
      for (int gi = 0; gi < total; ++gi) {
        if (!active[gi]) continue;
        int spare = 0;
        if (gi < static_cast<int>(spiders.size())) {
          for (Vertex w : g.neighbors(spiders[gi].leaves[1]))
            if (!core[w] && !consumed[w]) ++spare;
        } else {
          const CycleExtender& e = extenders[gi - static_cast<int>(spiders.size())];
          for (Vertex v : e.a1)
            if (!consumed[v]) ++spare;
          for (Vertex v : e.a2)
            if (!consumed[v]) ++spare;
        }
        if (spare < worst || (spare == worst && gi > victim)) {
          victim = gi;
          worst = spare;
        }
      }
      active[victim] = 0;
      ++dropped;
      continue;
    }

    VertexList grand;
    for (int step = 0; step < s; ++step) {
      int k = tour[step];
      VertexList tv = unit_traversal(g, units[k], entry_at[k], exit_at[k]);
      verify(tv.front() == entry_at[k] && tv.back() == exit_at[k],
             "chain_gadgets: traversal ends mismatch");
      grand.insert(grand.end(), tv.begin(), tv.end() - 1);
      const Path& link = links[step];
      verify(link.front() == exit_at[k], "chain_gadgets: link start mismatch");
      verify(link.back() == entry_at[tour[(step + 1) % s]], "chain_gadgets: link end mismatch");
      grand.insert(grand.end(), link.vertices.begin(), link.vertices.end() - 1);
    }
    Cycle gc{grand};
    verify(is_cycle(g, gc), "chain_gadgets: assembled sequence is not a cycle");

    ChainResult out;
    std::vector<int> pos = positions_on(n, grand);
    for (int gi = 0; gi < total; ++gi) {
      if (!active[gi]) continue;
      Edge ch;
      if (gi < static_cast<int>(spiders.size())) {
        ch = make_edge(spiders[gi].center, spiders[gi].leaves[1]);
        ++out.spiders_used;
      } else {
        ch = extenders[gi - static_cast<int>(spiders.size())].chord;
        ++out.extenders_used;
      }
      verify(pos[ch.first] >= 0 && pos[ch.second] >= 0,
             "chain_gadgets: chord endpoint off the cycle");
      verify(cyclic_gap(static_cast<int>(grand.size()), pos[ch.first], pos[ch.second]) >= 2,
             "chain_gadgets: a gadget chord became a cycle edge");
      out.gadget_chords.push_back(ch);
    }
    out.chorded = chords_of(g, gc);
    for (Edge ch : out.gadget_chords)
      verify(std::binary_search(out.chorded.chords.begin(), out.chorded.chords.end(), ch),
             "chain_gadgets: the chord recount missed a gadget chord");
    verify(static_cast<int>(out.gadget_chords.size()) >= active_count,
           "chain_gadgets: fewer chords than gadgets");
    out.dropped = dropped;
    return out;
  }
}

}  // namespace chords
