#include <algorithm>

#include "chordcycles/core_ops.hpp"
#include "chordcycles/errors.hpp"
#include "chordcycles/gadgets.hpp"
#include "chordcycles/generate.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chords;

namespace {

// C8 on 0..7 with chord (0,4), plus three two-vertex anchors hung off the
// cycle: {8,9} at 1, {10,11} at 3, {12,13} at 6.
Graph routing_instance() {
  std::vector<Edge> es;
  for (int i = 0; i < 8; ++i) es.push_back({i, (i + 1) % 8});
  es.push_back({0, 4});
  es.push_back({8, 9});
  es.push_back({9, 1});
  es.push_back({10, 11});
  es.push_back({11, 3});
  es.push_back({12, 13});
  es.push_back({13, 6});
  return Graph(14, es);
}

Graph star(int leaves) {
  std::vector<Edge> es;
  for (int i = 1; i <= leaves; ++i) es.push_back({0, i});
  return Graph(leaves + 1, es);
}

}  // namespace

TEST_CASE("degree classification buckets by powers of m") {
  // star on 5 leaves: center degree 5 in class [3,9), leaves in class 0
  DegreeClasses d = classify_degrees(star(5), 3);
  REQUIRE(d.classes.size() == 2);
  CHECK(d.classes[0] == VertexList{1, 2, 3, 4, 5});
  CHECK(d.classes[1] == VertexList{0});
  CHECK(d.dominant == 0);

  DegreeClasses k5 = classify_degrees(testutil::complete(5), 4);
  CHECK(k5.dominant == 1);  // all degrees 4 in [4,16)
  CHECK(k5.classes[1].size() == 5);

  CHECK_THROWS_AS(classify_degrees(star(3), 1), InfeasibleError);
}

TEST_CASE("spider search on fixed instances") {
  std::vector<Spider> s = find_spiders(star(5), 3, 1, 1, {});
  REQUIRE(s.size() == 1);
  CHECK(s[0].center == 0);
  CHECK(s[0].leaves == std::array<Vertex, 3>{1, 2, 3});
  CHECK_FALSE(spider_violation(star(5), s[0]).has_value());

  std::vector<Spider> k7 = find_spiders(testutil::complete(7), 3, 1, 1, {});
  REQUIRE(k7.size() == 1);  // spiders are vertex disjoint: one uses 4 of 7 vertices
  CHECK_FALSE(spider_violation(testutil::complete(7), k7[0]).has_value());

  std::vector<Spider> avoided = find_spiders(star(5), 3, 1, 1, {1});
  REQUIRE(avoided.size() == 1);
  CHECK(avoided[0].leaves == std::array<Vertex, 3>{2, 3, 4});

  // legs stretch toward the target when allowed
  Graph p7 = testutil::path_graph(7);
  std::vector<Spider> stretched = find_spiders(p7, 1, 3, 3, {}, nullptr);
  if (!stretched.empty()) {
    CHECK(stretched[0].legs[1].length() == 1);
    CHECK_FALSE(spider_violation(p7, stretched[0]).has_value());
  }
}

TEST_CASE("spider validation rejects corrupted structures") {
  Graph k7 = testutil::complete(7);
  std::vector<Spider> found = find_spiders(k7, 1, 1, 1, {});
  REQUIRE(found.size() == 1);
  Spider good = found[0];

  Spider wrong_center = good;
  wrong_center.center = good.leaves[0];
  CHECK(spider_violation(k7, wrong_center).has_value());

  Spider long_mid = good;
  long_mid.legs[1].vertices.push_back(6);
  CHECK(spider_violation(k7, long_mid).has_value());

  Spider shared = good;
  shared.leaves[1] = good.leaves[0];
  shared.legs[1].vertices.back() = good.leaves[0];
  CHECK(spider_violation(k7, shared).has_value());

  Spider capped = good;
  capped.max_leg_len = 0;
  CHECK(spider_violation(k7, capped).has_value());
}

TEST_CASE("bfs trees and removal sensitive vertices") {
  Graph p10 = testutil::path_graph(10);
  RootedTree t = bfs_tree(p10, 0);
  CHECK(t.root == 0);
  CHECK(t.vertices.size() == 10);
  for (int v = 1; v < 10; ++v) CHECK(t.parent[v] == v - 1);
  CHECK(t.parent[0] == -1);

  // cutting v from the path strands 9 - v strict descendants
  CHECK(dangerous_vertices(t, 3) == VertexList{1, 2, 3, 4, 5, 6});
  CHECK(dangerous_vertices(t, 100).empty());
}

TEST_CASE("anchor routing picks two sets landing on one arc") {
  Graph g = routing_instance();
  Cycle cycle{{0, 1, 2, 3, 4, 5, 6, 7}};
  std::vector<VertexList> anchors{{8, 9}, {10, 11}, {12, 13}};
  AnchorRouting r = route_to_anchor_sets(g, cycle, {0, 4}, anchors, 2, 6);
  CHECK(r.i == 0);
  CHECK(r.j == 1);
  CHECK(r.p_i.vertices == VertexList{1, 9});
  CHECK(r.p_j.vertices == VertexList{3, 11});
  CHECK(r.a_i_prime == VertexList{8, 9});
  CHECK(r.a_j_prime == VertexList{10, 11});

  // a singleton anchor dies once its root is reserved
  std::vector<VertexList> bad{{8}, {10, 11}, {12, 13}};
  CHECK_THROWS_AS(route_to_anchor_sets(g, cycle, {0, 4}, bad, 2, 6), SearchError);
}

TEST_CASE("extender construction on a dense host") {
  GadgetParams p;
  p.core_degree = 10;
  p.min_cycle_len = 4;
  p.max_cycle_len = 12;
  p.max_path_len = 6;
  p.anchor_size = 3;
  p.anchor_diameter = 3;
  p.danger_threshold = 2;
  CycleExtender e = build_cycle_extender(testutil::complete(30), p);
  CHECK(e.cycle.length() == 4);
  CHECK(e.anchor_size == 3);
  CHECK(e.anchor_diameter == 1);
  CHECK_FALSE(extender_violation(testutil::complete(30), e).has_value());
}

TEST_CASE("extender construction on random regular hosts") {
  GadgetParams p;
  p.core_degree = 10;
  p.min_cycle_len = 8;
  p.max_cycle_len = 64;
  p.max_path_len = 32;
  p.anchor_size = 4;
  p.anchor_diameter = 4;
  p.danger_threshold = 2;
  // the gadget cycle is the kept chord arc closed by the chord edge, so it
  // can be shorter than the intermediate host cycle's length floor
  const int expected_len[3] = {10, 6, 10};
  for (std::uint64_t seed = 3; seed <= 5; ++seed) {
    Graph g = testutil::make(GraphKind::random_regular, 150, 12, seed);
    p.seed = seed;
    CycleExtender e = build_cycle_extender(g, p);
    CHECK(e.cycle.length() == expected_len[seed - 3]);
    CHECK(e.anchor_size == 4);
    CHECK(e.anchor_diameter == 2);
    CHECK_FALSE(extender_violation(g, e).has_value());
  }
}

TEST_CASE("extender construction fails cleanly on thin hosts") {
  try {
    build_cycle_extender(testutil::ring(100), GadgetParams{});
    FAIL("expected a stage failure");
  } catch (const StageError& e) {
    CHECK(e.stage == "degree-core");
  }
}

TEST_CASE("extender validation rejects corrupted structures") {
  GadgetParams p;
  p.core_degree = 10;
  p.min_cycle_len = 4;
  p.max_cycle_len = 12;
  p.max_path_len = 6;
  p.anchor_size = 3;
  p.anchor_diameter = 3;
  Graph k30 = testutil::complete(30);
  CycleExtender good = build_cycle_extender(k30, p);
  REQUIRE_FALSE(extender_violation(k30, good).has_value());

  CycleExtender wrong_chord = good;
  wrong_chord.chord = make_edge(good.p1.back(), good.p2.back());
  CHECK(extender_violation(k30, wrong_chord).has_value());

  CycleExtender reversed = good;
  std::reverse(reversed.p1.vertices.begin(), reversed.p1.vertices.end());
  CHECK(extender_violation(k30, reversed).has_value());

  CycleExtender cut_anchor = good;
  cut_anchor.a1 = set_difference(good.a1, {good.p1.back()});
  CHECK(extender_violation(k30, cut_anchor).has_value());

  CycleExtender fat_anchor = good;
  fat_anchor.a1 = set_union(good.a1, {good.cycle.vertices[0]});
  CHECK(extender_violation(k30, fat_anchor).has_value());

  CycleExtender short_cap = good;
  short_cap.max_cycle_len = good.cycle.length() - 1;
  CHECK(extender_violation(k30, short_cap).has_value());

  CycleExtender twisted = good;
  std::swap(twisted.cycle.vertices[0], twisted.cycle.vertices[1]);
  CHECK(extender_violation(k30, twisted).has_value());
}

TEST_CASE("chaining spiders on regular hosts") {
  struct Expect {
    std::uint64_t seed;
    int len, chords;
  };
  for (Expect e : {Expect{1, 24, 24}, Expect{2, 22, 19}}) {
    Graph g = testutil::make(GraphKind::random_regular, 60, 8, e.seed);
    std::vector<Spider> sp = find_spiders(g, 3, 2, 1, {});
    REQUIRE(sp.size() == 3);
    ChainParams cp;
    cp.seed = e.seed;
    ChainResult r = chain_gadgets(g, sp, {}, cp);
    CHECK(r.chorded.cycle.length() == e.len);
    CHECK(r.chorded.chord_count() == e.chords);
    CHECK(r.spiders_used == 3);
    CHECK(r.extenders_used == 0);
    CHECK(r.dropped == 0);
    CHECK(is_chorded_cycle(g, r.chorded));
    // every surviving gadget contributed a verified chord
    CHECK(r.gadget_chords.size() == 3);
    for (const Edge& ch : r.gadget_chords)
      CHECK(std::find(r.chorded.chords.begin(), r.chorded.chords.end(), ch) !=
            r.chorded.chords.end());
  }
}

TEST_CASE("chaining spiders and an extender together") {
  Graph g = testutil::make(GraphKind::random_regular, 150, 12, 3);
  GadgetParams gp;
  gp.core_degree = 10;
  gp.min_cycle_len = 8;
  gp.max_cycle_len = 64;
  gp.max_path_len = 32;
  gp.anchor_size = 4;
  gp.anchor_diameter = 4;
  gp.seed = 3;
  CycleExtender e = build_cycle_extender(g, gp);
  VertexList body = sorted_unique([&] {
    VertexList v = e.cycle.vertices;
    v.insert(v.end(), e.p1.vertices.begin(), e.p1.vertices.end());
    v.insert(v.end(), e.p2.vertices.begin(), e.p2.vertices.end());
    v.insert(v.end(), e.a1.begin(), e.a1.end());
    v.insert(v.end(), e.a2.begin(), e.a2.end());
    return v;
  }());
  std::vector<Spider> sp = find_spiders(g, 2, 2, 1, body);
  REQUIRE(sp.size() == 2);
  ChainResult r = chain_gadgets(g, sp, {e}, ChainParams{});
  CHECK(r.chorded.cycle.length() == 37);
  CHECK(r.chorded.chord_count() == 39);
  CHECK(r.spiders_used == 2);
  CHECK(r.extenders_used == 1);
  CHECK(r.dropped == 0);
  CHECK(is_chorded_cycle(g, r.chorded));
  CHECK(r.chorded.chord_count() >= r.spiders_used + r.extenders_used);
  // the recount matches an independent recount from the host graph
  ChordedCycle again = chords_of(g, r.chorded.cycle);
  CHECK(again.chords == r.chorded.chords);
}

TEST_CASE("chaining drops gadgets it cannot link") {
  // K9 only fits two disjoint spiders and cannot route around both, so one
  // is dropped and the chain succeeds with the other
  Graph k9 = testutil::complete(9);
  std::vector<Spider> sp = find_spiders(k9, 2, 1, 1, {});
  REQUIRE(sp.size() == 2);
  CHECK(sp[0].center == 0);
  CHECK(sp[1].center == 4);
  ChainResult r = chain_gadgets(k9, sp, {}, ChainParams{});
  CHECK(r.chorded.cycle.length() == 6);
  CHECK(r.chorded.chord_count() == 9);
  CHECK(r.spiders_used == 1);
  CHECK(r.dropped == 1);
  CHECK(r.chorded.cycle.vertices == VertexList{5, 4, 7, 0, 6, 1});
  CHECK(is_chorded_cycle(k9, r.chorded));
}
