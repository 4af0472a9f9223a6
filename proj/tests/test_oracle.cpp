#include <map>

#include "chordcycles/core_ops.hpp"
#include "chordcycles/errors.hpp"
#include "chordcycles/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chords;

TEST_CASE("content hash is stable and structure sensitive") {
  CHECK(graph_content_hash(testutil::complete(3)) == 16541044301733462598ull);
  CHECK(graph_content_hash(testutil::petersen()) == 2810776005458078158ull);
  Graph a(3, {{0, 1}, {1, 2}});
  Graph b(3, {{1, 2}, {0, 1}});
  CHECK(graph_content_hash(a) == graph_content_hash(b));
  Graph c(3, {{0, 1}, {0, 2}});
  CHECK(graph_content_hash(a) != graph_content_hash(c));
}

TEST_CASE("exhaustive search on complete graphs") {
  OracleResult k4 = oracle_max_chorded_cycle(testutil::complete(4));
  CHECK(k4.max_chords == 2);
  CHECK(k4.cycles_enumerated == 7);
  REQUIRE(k4.best.has_value());
  CHECK(k4.best->cycle.vertices == VertexList{0, 1, 2, 3});
  CHECK(k4.best->chords == std::vector<Edge>{{0, 2}, {1, 3}});
  CHECK(k4.instance_hash == graph_content_hash(testutil::complete(4)));

  OracleResult k5 = oracle_max_chorded_cycle(testutil::complete(5));
  CHECK(k5.max_chords == 5);
  CHECK(k5.cycles_enumerated == 37);
  CHECK(k5.per_length == std::map<int, int>{{3, 0}, {4, 2}, {5, 5}});
  // a cycle of length l in a complete graph carries l(l-3)/2 chords
  for (const auto& [len, chords] : k5.per_length) CHECK(chords == len * (len - 3) / 2);
}

TEST_CASE("exhaustive search on the petersen graph") {
  OracleResult p = oracle_max_chorded_cycle(testutil::petersen());
  CHECK(p.max_chords == 3);
  CHECK(p.cycles_enumerated == 57);
  CHECK(p.per_length == std::map<int, int>{{5, 0}, {6, 0}, {8, 2}, {9, 3}});
  REQUIRE(p.best.has_value());
  CHECK(p.best->cycle.length() == 9);
  CHECK(p.best->cycle.vertices == VertexList{0, 1, 2, 3, 4, 9, 6, 8, 5});
  CHECK(is_chorded_cycle(testutil::petersen(), *p.best));
  // every vertex has degree 3; a 9-cycle misses one vertex, and the three
  // edges into it are the only host edges not touching the cycle, so
  // 15 - 9 - 3 chords remain
  CHECK(p.max_chords == 15 - 9 - 3);
}

TEST_CASE("acyclic graphs report no cycle") {
  OracleResult t = oracle_max_chorded_cycle(testutil::path_graph(6));
  CHECK(t.max_chords == -1);
  CHECK_FALSE(t.best.has_value());
  CHECK(t.per_length.empty());
  CHECK(t.cycles_enumerated == 0);
}

TEST_CASE("the size cap is enforced") {
  CHECK_THROWS_AS(oracle_max_chorded_cycle(testutil::complete(15), 14), InfeasibleError);
  CHECK_NOTHROW(oracle_max_chorded_cycle(testutil::complete(8), 8));
}

TEST_CASE("exhaustive rotation closure") {
  Graph p4 = testutil::path_graph(4);
  CHECK(oracle_rotation_closure(p4, Path{{0, 1, 2, 3}}) == VertexList{3});
  Graph k4 = testutil::complete(4);
  CHECK(oracle_rotation_closure(k4, Path{{0, 1, 2, 3}}) == VertexList{1, 2, 3});
}

TEST_CASE("exhaustive expansion witnesses") {
  auto w = oracle_alpha_expansion_witness(testutil::path_graph(4), 1.0);
  REQUIRE(w.has_value());
  CHECK(*w == VertexList{0, 1});
  CHECK_FALSE(oracle_alpha_expansion_witness(testutil::complete(4), 1.0).has_value());
  CHECK_FALSE(
      oracle_sublinear_expansion_witness(testutil::two_blocks_bridged(5), 0.5, 2).has_value());
}
