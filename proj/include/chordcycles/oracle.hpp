#ifndef CHORDCYCLES_ORACLE_HPP
#define CHORDCYCLES_ORACLE_HPP

#include <cstdint>
#include <map>
#include <optional>

#include "chordcycles/graph.hpp"

namespace chords {

// FNV-1a over the vertex count and the sorted normalized edge list.
std::uint64_t graph_content_hash(const Graph& g);

struct OracleResult {
  std::optional<ChordedCycle> best;  // empty when the graph is acyclic
  int max_chords = -1;               // -1 when no cycle exists
  std::map<int, int> per_length;     // cycle length -> most chords at that length
  std::uint64_t instance_hash = 0;
  long long cycles_enumerated = 0;
};

// Exhaustive maximum-chord cycle search.  Every simple cycle is enumerated
// once in canonical form (smallest vertex first, second vertex below the
// last); the best cycle has the most chords, then the shortest length, then
// the lexicographically least vertex sequence.  Refuses graphs larger than
// limit_n vertices.
OracleResult oracle_max_chorded_cycle(const Graph& g, int limit_n = 14);

// Every endpoint reachable from `start` by rotations with a fixed front,
// found by exhaustive search over whole-path states rather than endpoints.
VertexList oracle_rotation_closure(const Graph& g, const Path& start);

// Exhaustive alpha-expansion check by recursive subset enumeration; returns
// the first violating set in prefix-precedes-extension order, if any.
std::optional<VertexList> oracle_alpha_expansion_witness(const Graph& g, double alpha);

// Exhaustive check of |N(X)| >= eps(|X|)*|X| for ceil(k/2) <= |X| <= n/2,
// where eps(x) is 0 below k/5 and epsilon1 / log2(15x/k)^2 beyond.
std::optional<VertexList> oracle_sublinear_expansion_witness(const Graph& g, double epsilon1,
                                                             int k);

}  // namespace chords

#endif
