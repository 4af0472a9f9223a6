#include <algorithm>
#include <random>

#include "chordcycles/core_ops.hpp"
#include "chordcycles/generate.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chords;

TEST_CASE("degree core peels low degree vertices") {
  Graph p5 = testutil::path_graph(5);
  CHECK(min_degree_core(p5, 2).graph.vertex_count() == 0);

  std::vector<Edge> es{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}};
  Graph k4p(5, es);  // K4 plus a pendant at 3
  Subgraph core = min_degree_core(k4p, 3);
  CHECK(core.to_parent == VertexList{0, 1, 2, 3});
  CHECK(core.graph.edge_count() == 6);
  CHECK(core.graph.min_degree() == 3);
}

TEST_CASE("degree core is idempotent and maximal") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 8 + static_cast<int>(rng() % 8);
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 3 == 0) es.push_back({u, v});
    Graph g(n, es);
    Subgraph core = min_degree_core(g, 3);
    if (core.graph.vertex_count() == 0) continue;
    CHECK(core.graph.min_degree() >= 3);
    Subgraph again = min_degree_core(core.graph, 3);
    CHECK(again.graph == core.graph);
  }
}

TEST_CASE("block cut tree splits at cut vertices") {
  Graph bowtie(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  BlockCutTree t = block_cut_tree(bowtie);
  REQUIRE(t.blocks.size() == 2);
  CHECK(t.cut_vertices == VertexList{2});
  CHECK(t.tree_edges.size() == 2);
  std::vector<VertexList> blocks = t.blocks;
  std::sort(blocks.begin(), blocks.end());
  CHECK(blocks[0] == VertexList{0, 1, 2});
  CHECK(blocks[1] == VertexList{2, 3, 4});
}

TEST_CASE("blocks partition the edge set") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 6 + static_cast<int>(rng() % 10);
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 4 == 0) es.push_back({u, v});
    Graph g(n, es);
    BlockCutTree t = block_cut_tree(g);
    int covered = 0;
    for (const VertexList& b : t.blocks) {
      Subgraph s = induced_subgraph(g, b);
      // a block of size > 2 is biconnected, so it has no cut vertex of its own
      if (b.size() > 2) CHECK(block_cut_tree(s.graph).cut_vertices.empty());
      covered += s.graph.edge_count();
    }
    // blocks never share an edge, so block edge counts sum to the total
    CHECK(covered == g.edge_count());
  }
}

TEST_CASE("chord listing finds all non consecutive edges") {
  Graph k5 = testutil::complete(5);
  ChordedCycle cc = chords_of(k5, Cycle{{0, 1, 2, 3, 4}});
  CHECK(cc.chord_count() == 5);
  CHECK(is_chorded_cycle(k5, cc));
  Graph c5 = testutil::ring(5);
  CHECK(chords_of(c5, Cycle{{0, 1, 2, 3, 4}}).chord_count() == 0);
}

TEST_CASE("four cycle detection") {
  CHECK(find_c4(testutil::ring(4)).has_value());
  CHECK(find_c4(testutil::complete(4)).has_value());
  CHECK_FALSE(find_c4(testutil::petersen()).has_value());
  CHECK_FALSE(find_c4(testutil::path_graph(6)).has_value());
  CHECK(is_c4_free(testutil::petersen()));
  CHECK_FALSE(is_c4_free(testutil::ring(4)));
  auto c = find_c4(testutil::complete(5));
  REQUIRE(c.has_value());
  CHECK(c->length() == 4);
  CHECK(is_cycle(testutil::complete(5), *c));
}

TEST_CASE("c4 free extraction keeps a dense spanning subgraph") {
  Graph k6 = testutil::complete(6);
  C4FreeResult r = extract_c4_free_subgraph(k6, 2.0);
  CHECK(r.graph.vertex_count() == 6);
  CHECK(is_c4_free(r.graph));
  CHECK(r.average_degree == doctest::Approx(7.0 / 3.0));
  CHECK(r.removed_edges == 8);
  CHECK_FALSE(r.shortfall);
  for (const Edge& e : r.graph.edges()) CHECK(k6.has_edge(e.first, e.second));

  // an already C4-free input survives untouched
  Graph p = testutil::petersen();
  C4FreeResult rp = extract_c4_free_subgraph(p, 3.0);
  CHECK(rp.graph == p);
  CHECK(rp.removed_edges == 0);

  // impossible targets are flagged, not fatal
  C4FreeResult rs = extract_c4_free_subgraph(testutil::ring(4), 3.0);
  CHECK(is_c4_free(rs.graph));
  CHECK(rs.shortfall);
}

TEST_CASE("girth computation") {
  CHECK(girth(testutil::petersen()) == 5);
  CHECK(girth(testutil::ring(7)) == 7);
  CHECK(girth(testutil::complete(4)) == 3);
  CHECK(girth(testutil::path_graph(5)) == 0);
}
