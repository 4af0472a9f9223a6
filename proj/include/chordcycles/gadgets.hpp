#ifndef CHORDCYCLES_GADGETS_HPP
#define CHORDCYCLES_GADGETS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chordcycles/cycles.hpp"
#include "chordcycles/graph.hpp"

namespace chords {

// ---- degree classification ----

struct DegreeClasses {
  int m = 2;
  // class k holds the vertices of degree in [m^k, m^(k+1)); degrees below m
  // land in class 0
  std::vector<VertexList> classes;
  int dominant = 0;  // index of the largest class (ties to the lower index)
};

DegreeClasses classify_degrees(const Graph& g, int m);

// ---- spiders ----

// Three paths (legs) meeting only at the center.  The second leg is a single
// edge: its leaf, being off the other legs, can sit elsewhere on a host cycle
// so that (center, leaves[1]) becomes a chord.
struct Spider {
  Vertex center = -1;
  std::array<Path, 3> legs;  // each runs center -> leaf
  std::array<Vertex, 3> leaves;
  int max_leg_len = 1;  // declared cap; every leg obeys it
};

// First mismatch with the structure's contract, if any.
std::optional<std::string> spider_violation(const Graph& g, const Spider& s);

// Up to `want` pairwise vertex-disjoint spiders, greedily by center id.
// Centers come from `centers` when given, otherwise from every vertex.  The
// first and third legs are stretched one vertex at a time toward
// leg_target; the second leg always stays a single edge.
std::vector<Spider> find_spiders(const Graph& g, int want, int max_leg_len, int leg_target,
                                 const VertexList& avoid, const VertexList* centers = nullptr);

// ---- rooted trees and removal-sensitive vertices ----

struct RootedTree {
  Vertex root = -1;
  std::vector<Vertex> parent;  // host-indexed; -1 at the root and off the tree
  VertexList vertices;         // sorted tree vertices
};

RootedTree bfs_tree(const Graph& g, Vertex root, const std::vector<char>* blocked = nullptr);

// Vertices whose removal cuts at least `threshold` strict descendants off
// the root: every non-root internal vertex with that many descendants.
VertexList dangerous_vertices(const RootedTree& t, int threshold);

// ---- anchor routing ----

struct AnchorRouting {
  int i = -1, j = -1;           // selected anchor sets (cycle landings share an arc)
  VertexList a_i_prime, a_j_prime;  // surviving connected parts of the anchors
  Path p_i, p_j;                // cycle vertex -> anchor; interiors clear of both
};

// Connects the cycle to two of the three anchor sets by vertex-disjoint
// paths that land on the same chord arc, never touching the chord endpoints,
// any anchor root, or vertices whose loss would shatter another anchor.
AnchorRouting route_to_anchor_sets(const Graph& g, const Cycle& cycle, Edge chord,
                                   const std::vector<VertexList>& anchors,
                                   int danger_threshold, int max_path_len);

// ---- cycle extender gadget ----

// A chord-carrying cycle with two tails ending in connected anchor sets.  The
// cycle passes the chord edge, so a host cycle that enters through a1, runs
// p1, goes the long way around the cycle, and leaves through p2 and a2 picks
// up (p1.front, p2.front) as a chord.
struct CycleExtender {
  Cycle cycle;            // chord endpoints are consecutive on it
  Edge chord{-1, -1};     // equals (p1.front(), p2.front())
  Path p1;                // chord.first -> a vertex of a1
  Path p2;                // chord.second -> a vertex of a2
  VertexList a1, a2;      // equal-size connected anchor sets
  int anchor_size = 0;
  int anchor_diameter = 0;  // max distance from a tail end within its anchor
  int max_cycle_len = 0;
  int max_path_len = 0;
};

std::optional<std::string> extender_violation(const Graph& g, const CycleExtender& e);

struct GadgetParams {
  int core_degree = 10;  // the search runs inside this min-degree core
  int min_cycle_len = 8;
  int max_cycle_len = 64;
  int max_path_len = 32;  // budget for anchor routes
  int anchor_size = 8;
  int anchor_diameter = 8;
  int danger_threshold = 2;
  double alpha = 0.25;  // expansion rate assumed when cleaning around a short cycle
  std::uint64_t seed = 0;
};

// Builds one extender inside g minus `avoid`: find a cycle with interlacing
// chords, lengthen it through a disjoint donor cycle when it is too short,
// shorten it into [min_cycle_len, max_cycle_len] keeping one chord, then
// route two tails into freshly found low-diameter anchor sets.  Throws
// StageError naming the failing step.
CycleExtender build_cycle_extender(const Graph& g, const GadgetParams& params,
                                   const VertexList& avoid = {});

// ---- chaining ----

struct ChainParams {
  int max_link_len = 64;
  std::uint64_t seed = 0;
};

struct ChainResult {
  ChordedCycle chorded;            // the assembled cycle with every chord recounted
  std::vector<Edge> gadget_chords; // one verified chord per surviving gadget
  int spiders_used = 0;
  int extenders_used = 0;
  int dropped = 0;
};

// Threads one cycle through every gadget: spider legs are traversed
// center-first and last, the spider's spare leaf is visited separately so
// (center, leaf) becomes a chord, and extenders are entered and left through
// their anchors.  Gadgets that cannot be linked are dropped, fewest spare
// attach vertices first.
ChainResult chain_gadgets(const Graph& g, const std::vector<Spider>& spiders,
                          const std::vector<CycleExtender>& extenders,
                          const ChainParams& params = {});

}  // namespace chords

#endif
