#ifndef TESTS_SUPPORT_HPP
#define TESTS_SUPPORT_HPP

#include <cstdint>
#include <vector>

#include "chordcycles/generate.hpp"
#include "chordcycles/graph.hpp"

namespace testutil {

inline chords::Graph make(chords::GraphKind kind, int n, int d = 0, std::uint64_t seed = 0,
                          int girth = 5) {
  chords::GenerateParams p;
  p.n = n;
  p.d = d;
  p.girth = girth;
  return chords::generate(kind, p, seed);
}

inline chords::Graph complete(int n) { return make(chords::GraphKind::complete, n); }
inline chords::Graph ring(int n) { return make(chords::GraphKind::cycle, n); }
inline chords::Graph petersen() { return make(chords::GraphKind::petersen, 10); }

inline chords::Graph path_graph(int n) {
  std::vector<chords::Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return chords::Graph(n, es);
}

inline chords::VertexList iota_list(int n) {
  chords::VertexList v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

// two complete blocks on `side` vertices each, joined by the edge (0, side)
inline chords::Graph two_blocks_bridged(int side) {
  std::vector<chords::Edge> es;
  for (int u = 0; u < side; ++u)
    for (int v = u + 1; v < side; ++v) {
      es.push_back({u, v});
      es.push_back({u + side, v + side});
    }
  es.push_back({0, side});
  return chords::Graph(2 * side, es);
}

}  // namespace testutil

#endif
