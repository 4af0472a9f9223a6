#ifndef CHORDCYCLES_CYCLES_HPP
#define CHORDCYCLES_CYCLES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "chordcycles/graph.hpp"

namespace chords {

// Normalized edge (smaller endpoint first).
inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// One rotation of a path v0..vt with fixed v0: the path folds at the pivot
// vi (a neighbor of vt), breaking (vi, vi+1), inserting (vt, vi), and the
// moving endpoint becomes vi+1.
struct RotationStep {
  Vertex pivot = -1;
  Edge broken{-1, -1};
  Edge inserted{-1, -1};
};

struct RotationClosure {
  Path start;
  VertexList endpoints;  // sorted; all moving endpoints reachable by rotations
  std::map<Vertex, std::vector<RotationStep>> steps;  // endpoint -> rotation log
  std::map<Vertex, Path> paths;                       // endpoint -> realizing path
};

// Breadth-first closure of `start` under rotations (front vertex fixed),
// deduplicated by moving endpoint.  Every stored path is re-derived from its
// rotation log before returning.
RotationClosure posa_closure(const Graph& g, const Path& start);

// Applies a rotation log to `start`, checking each broken and inserted edge.
Path replay_rotations(const Graph& g, const Path& start,
                      const std::vector<RotationStep>& steps);

struct LongCycleResult {
  std::optional<Cycle> cycle;  // empty when the graph is acyclic or edgeless
  bool met_min_len = false;
};

// Longest cycle a rotation-assisted greedy path search can find.
// Deterministic for a fixed seed; stops early once min_len is met.
LongCycleResult find_long_cycle(const Graph& g, int min_len, std::uint64_t seed = 0);

// A cycle carrying two chords whose endpoints alternate around it.
struct InterlacedCycle {
  Cycle cycle;
  Edge chord_a{-1, -1};
  Edge chord_b{-1, -1};
};

// True when a and b are chords of the cycle on four distinct vertices whose
// endpoints alternate around it.
bool chords_interlace(const Cycle& cycle, Edge a, Edge b);

std::optional<InterlacedCycle> find_interlaced_cycle(const Graph& g, std::uint64_t seed = 0);

struct DisjointPaths {
  Path first;
  Path second;
};

// Raised when two vertex-disjoint paths between the sets do not exist.  When
// a single vertex separates them it is reported; a disconnected pair leaves
// cut_vertex empty.
struct TwoPathsError : SearchError {
  TwoPathsError(const std::string& what, std::optional<Vertex> cut)
      : SearchError(what), cut_vertex(cut) {}
  std::optional<Vertex> cut_vertex;
};

// Two fully vertex-disjoint paths from `from` to `to`, interiors clear of
// both sets, found by unit-capacity maximum flow on the split-vertex network.
DisjointPaths two_disjoint_paths(const Graph& g, const VertexList& from, const VertexList& to);

struct ExtendedCycle {
  Cycle cycle;
  Edge kept_chord{-1, -1};  // a chord of `inter` surviving as a chord
  int donor_vertices = 0;   // how many vertices of the donor cycle were kept
};

// Splices the donor cycle together with an interlaced cycle through two
// vertex-disjoint connecting paths.  Keeps the longer donor arc (at least
// half its vertices) and routes through the interlaced cycle so that one of
// its chords remains a chord of the result.
ExtendedCycle extend_via_disjoint_paths(const Graph& g, const Cycle& donor,
                                        const InterlacedCycle& inter);

struct ShortenResult {
  ChordedCycle chorded;     // final cycle with all its chords recounted
  Edge designated{-1, -1};  // the protected chord, still a chord of the result
  bool in_range = false;    // final length landed in [lo, hi]
};

// Shrinks the cycle toward a length in [lo, hi] by replacing long stretches
// with short detours while the designated chord stays a chord.  Every
// accepted rewrite strictly shortens the cycle and keeps its length >= lo;
// when no rewrite applies the best effort so far is returned with
// in_range = false.
ShortenResult shorten_chorded_cycle(const Graph& g, const Cycle& cycle, Edge designated,
                                    int lo, int hi);

}  // namespace chords

#endif
