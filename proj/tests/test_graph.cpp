#include <sstream>

#include "chordcycles/graph.hpp"
#include "chordcycles/io.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chords;

TEST_CASE("graph construction drops duplicates and self loops") {
  LoadStats stats;
  Graph g(2, {{0, 1}, {0, 1}, {1, 1}}, &stats);
  CHECK(g.edge_count() == 1);
  CHECK(stats.dropped_duplicates == 1);
  CHECK(stats.dropped_self_loops == 1);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(1, 1));
}

TEST_CASE("graph degree and edge accessors") {
  Graph g = testutil::complete(5);
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 10);
  CHECK(g.min_degree() == 4);
  CHECK(g.max_degree() == 4);
  CHECK(g.average_degree() == doctest::Approx(4.0));
  auto es = g.edges();
  CHECK(es.size() == 10);
  CHECK(es.front() == Edge{0, 1});
  CHECK(es.back() == Edge{3, 4});
  for (const Edge& e : es) CHECK(e.first < e.second);
}

TEST_CASE("sorted vertex set helpers") {
  VertexList a = sorted_unique({3, 1, 3, 2, 1});
  CHECK(a == VertexList{1, 2, 3});
  CHECK(set_contains(a, 2));
  CHECK_FALSE(set_contains(a, 5));
  VertexList b{2, 4};
  CHECK(set_union(a, b) == VertexList{1, 2, 3, 4});
  CHECK(set_difference(a, b) == VertexList{1, 3});
  CHECK(set_intersection(a, b) == VertexList{2});
  auto mask = make_mask(5, a);
  CHECK(mask == std::vector<char>{0, 1, 1, 1, 0});
}

TEST_CASE("neighborhood of a set excludes the set itself") {
  Graph p4 = testutil::path_graph(4);
  CHECK(neighborhood(p4, {1, 2}) == VertexList{0, 3});
  CHECK(neighborhood(p4, {0}) == VertexList{1});
  CHECK(neighborhood(p4, {0, 1, 2, 3}).empty());
}

TEST_CASE("path and cycle validity checks") {
  Graph p4 = testutil::path_graph(4);
  CHECK(is_path(p4, Path{{0, 1, 2, 3}}));
  CHECK_FALSE(is_path(p4, Path{{0, 2}}));
  CHECK_FALSE(is_path(p4, Path{{0, 1, 0}}));  // repeated vertex

  Graph c4 = testutil::ring(4);
  CHECK(is_cycle(c4, Cycle{{0, 1, 2, 3}}));
  CHECK_FALSE(is_cycle(c4, Cycle{{0, 1, 3, 2}}));
  CHECK_FALSE(is_cycle(p4, Cycle{{0, 1, 2, 3}}));  // 3-0 missing

  Graph k4 = testutil::complete(4);
  ChordedCycle cc{Cycle{{0, 1, 2, 3}}, {{0, 2}, {1, 3}}};
  CHECK(is_chorded_cycle(k4, cc));
  ChordedCycle bad{Cycle{{0, 1, 2, 3}}, {{0, 1}}};  // consecutive, not a chord
  CHECK_FALSE(is_chorded_cycle(k4, bad));
  ChordedCycle missing{Cycle{{0, 1, 2, 3}}, {{0, 2}}};
  CHECK_FALSE(is_chorded_cycle(c4, missing));  // not an edge of C4
}

TEST_CASE("bfs produces distances and parents") {
  Graph c6 = testutil::ring(6);
  BfsResult r = bfs(c6, {0});
  CHECK(r.dist == std::vector<int>{0, 1, 2, 3, 2, 1});
  CHECK(r.parent[0] == -1);
  CHECK(r.parent[1] == 0);
  CHECK(r.parent[5] == 0);
  CHECK((r.parent[3] == 2 || r.parent[3] == 4));

  auto blocked = make_mask(6, {3});
  BfsResult rb = bfs(c6, {0}, &blocked);
  CHECK(rb.dist[3] == -1);
  CHECK(rb.dist[2] == 2);
  CHECK(rb.dist[4] == 2);
}

TEST_CASE("components respect blocked vertices") {
  Graph c6 = testutil::ring(6);
  auto blocked = make_mask(6, {1});
  CHECK(component_of(c6, 0, &blocked) == VertexList{0, 2, 3, 4, 5});
  CHECK(is_connected(c6));
  Graph two(5, {{0, 1}, {2, 3}, {3, 4}});
  CHECK_FALSE(is_connected(two));
  CHECK(largest_component(two) == VertexList{2, 3, 4});
}

TEST_CASE("induced subgraph round trips vertex labels") {
  Graph g = testutil::petersen();
  VertexList keep{0, 1, 2, 5, 7};
  Subgraph s = induced_subgraph(g, keep);
  CHECK(s.graph.vertex_count() == 5);
  CHECK(s.to_parent == keep);
  for (int local = 0; local < 5; ++local) CHECK(s.from_parent[s.up(local)] == local);
  // every local edge is a parent edge on the corresponding labels
  for (const Edge& e : s.graph.edges()) CHECK(g.has_edge(s.up(e.first), s.up(e.second)));
  // every parent edge inside keep survives
  int inside = 0;
  for (const Edge& e : g.edges())
    if (set_contains(keep, e.first) && set_contains(keep, e.second)) ++inside;
  CHECK(s.graph.edge_count() == inside);
}

TEST_CASE("graphs compare by structure") {
  Graph a(3, {{0, 1}, {1, 2}});
  Graph b(3, {{1, 2}, {0, 1}, {0, 1}});
  CHECK(a == b);
  Graph c(3, {{0, 1}, {0, 2}});
  CHECK_FALSE(a == c);
}
