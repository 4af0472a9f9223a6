#ifndef CHORDCYCLES_GENERATE_HPP
#define CHORDCYCLES_GENERATE_HPP

#include <cstdint>
#include <string>

#include "chordcycles/graph.hpp"

namespace chords {

enum class GraphKind {
  random_regular,
  gnp_min_degree,
  high_girth_regular,
  complete,
  cycle,
  petersen,
};

struct GenerateParams {
  int n = 0;
  int d = 0;      // regular degree / target minimum degree
  int girth = 5;  // high_girth_regular only
};

GraphKind parse_kind(const std::string& name);
std::string kind_name(GraphKind kind);

// Deterministic for a fixed (kind, params, seed).  Throws InfeasibleError on
// unsatisfiable parameters.
Graph generate(GraphKind kind, const GenerateParams& params, std::uint64_t seed);

}  // namespace chords

#endif
