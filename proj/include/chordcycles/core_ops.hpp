#ifndef CHORDCYCLES_CORE_OPS_HPP
#define CHORDCYCLES_CORE_OPS_HPP

#include <optional>

#include "chordcycles/graph.hpp"

namespace chords {

// Maximal induced subgraph with minimum degree >= d (possibly empty),
// obtained by iterated peeling.
Subgraph min_degree_core(const Graph& g, int d);

// Biconnected components.  Blocks partition the edge set; bridges appear as
// two-vertex blocks; isolated vertices belong to no block.
struct BlockCutTree {
  std::vector<VertexList> blocks;                 // each sorted
  VertexList cut_vertices;                        // sorted
  std::vector<std::pair<int, Vertex>> tree_edges; // (block index, cut vertex)
};

BlockCutTree block_cut_tree(const Graph& g);

// All edges of g joining non-consecutive vertices of the cycle.
ChordedCycle chords_of(const Graph& g, const Cycle& cycle);

// Some 4-cycle of g, if one exists (two vertices with two common neighbors).
std::optional<Cycle> find_c4(const Graph& g);
bool is_c4_free(const Graph& g);

struct C4FreeResult {
  Graph graph;            // spanning subgraph of the input, C4-free
  double average_degree;  // of `graph`
  int removed_edges;
  bool shortfall;         // average_degree < target
};

// Greedy edge deletion until C4-free, then greedy re-insertion of deleted
// edges that stay C4-free.  Best effort towards the target average degree;
// a shortfall is flagged, not an error.
C4FreeResult extract_c4_free_subgraph(const Graph& g, double target_avg_degree);

// Length of a shortest cycle, or 0 when acyclic.
int girth(const Graph& g);

}  // namespace chords

#endif
