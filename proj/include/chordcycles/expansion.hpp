#ifndef CHORDCYCLES_EXPANSION_HPP
#define CHORDCYCLES_EXPANSION_HPP

#include <cstdint>
#include <optional>

#include "chordcycles/graph.hpp"

namespace chords {

// Largest vertex count for which exhaustive subset enumeration is allowed.
inline constexpr int kExactExpansionCap = 24;

// Sublinear expansion rate: epsilon(x) = 0 for x < k/5, and
// epsilon1 / log2(15x/k)^2 otherwise.  Logs are base 2 throughout.
struct ExpansionProfile {
  double epsilon1 = 1.0 / 16;
  int k = 2;

  double epsilon(double x) const;
  // Required neighborhood size for a set of `size` vertices.
  double requirement(int size) const { return epsilon(size) * size; }
};

enum class CheckMode { exact, sampled };

struct ExpansionCertificate {
  CheckMode mode = CheckMode::exact;
  bool pass = false;
  std::optional<VertexList> witness;  // a violating set, when one was found
  int min_size = 0;                   // size range that was checked
  int max_size = 0;
};

// |N(S)| >= alpha*|S| for all 1 <= |S| <= n/2.  Exact mode enumerates every
// subset (n <= kExactExpansionCap required) and reports the lexicographically
// least witness; sampled mode checks BFS balls plus random connected sets and
// its pass verdict only means no violation was found.
ExpansionCertificate verify_alpha_expansion(const Graph& g, double alpha, CheckMode mode,
                                            int sample_budget = 256, std::uint64_t seed = 0);

// |N(X)| >= epsilon(|X|)*|X| for all k/2 <= |X| <= n/2 (no forbidden set).
ExpansionCertificate verify_sublinear_expansion(const Graph& g, const ExpansionProfile& profile,
                                                CheckMode mode, int sample_budget = 256,
                                                std::uint64_t seed = 0);

struct ExtractOptions {
  int root_sample = 64;  // BFS-ball roots per round
  int set_sample = 64;   // random connected sets per round
  std::uint64_t seed = 0;
  int max_rounds = 64;
};

struct ExtractionResult {
  Subgraph subgraph;
  int cut_steps = 0;
  int peeled = 0;
  bool below_k = false;  // extraction ended smaller than the profile's k
};

// Subgraph H with d(H) >= d(G)/2 and min degree >= d(H)/2, found by
// alternating degree peeling with removal of sparsely-expanding sets.  The
// degree postconditions are guaranteed; expansion of the result is heuristic.
ExtractionResult extract_expander_subgraph(const Graph& g, const ExpansionProfile& profile,
                                           const ExtractOptions& options = {});

struct CleanOptions {
  bool override_size_bound = false;  // accept |u| beyond (alpha^2/100)*n
  int root_sample = 64;
  int set_sample = 64;
  std::uint64_t seed = 0;
};

struct CleanResult {
  VertexList b;
  Subgraph residual;                    // g minus (u and b)
  bool bound_ok = false;                // |b| <= 2|u|/alpha
  bool residual_verified_exact = false; // residual exhaustively checked
};

// Removes a set b of vertices absorbing everything that expands poorly in
// g - u, so that the residual is an alpha/2-expander.  When the input is an
// alpha-expander and |u| meets the size bound, |b| <= 2|u|/alpha; if b
// outgrows that bound, b certifies that g was not an alpha-expander and an
// InfeasibleError carrying it is thrown (unless the bound was overridden).
CleanResult clean_for_expansion(const Graph& g, const VertexList& u, double alpha,
                                const CleanOptions& options = {});

struct ConnectOptions {
  // When set, the caller asserts g is a verified alpha-expander and
  // |x|,|y| > 2|b|/alpha; the path length is then checked against
  // 2*log_{1+alpha/2}(n).
  std::optional<double> verified_alpha;
};

// Shortest path from x to y avoiding b (endpoints included in the check);
// ties prefer lower vertex ids.  Throws SearchError when disconnected.
Path connect_avoiding(const Graph& g, const VertexList& x, const VertexList& y,
                      const VertexList& b, const ConnectOptions& options = {});

// Exactly m vertices inducing a connected subgraph with pairwise distance in
// g at most max_diameter, grown as a prefix of a bounded-radius BFS.
VertexList find_low_diameter_set(const Graph& g, int m, int max_diameter);

}  // namespace chords

#endif
