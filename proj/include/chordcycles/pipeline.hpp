#ifndef CHORDCYCLES_PIPELINE_HPP
#define CHORDCYCLES_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chordcycles/graph.hpp"
#include "chordcycles/oracle.hpp"

namespace chords {

// Zero-valued integer fields are derived from the vertex count by resolved().
struct PipelineConfig {
  double c4_target = 16.0;       // average degree kept by the C4-free stage
  int degree_class_base = 0;     // base of the degree classification
  int gadget_budget = 0;         // spider quota and extender attempts
  int max_cycle_len = 0;         // extender cycle cap
  int max_path_len = 0;          // anchor route cap
  double epsilon1 = 1.0 / 16;    // sublinear expansion rate parameters
  int k = 2;
  int anchor_size = 0;
  int danger_threshold = 0;
  int max_link_len = 0;          // chain link cap; defaults to max_path_len
  int core_degree = 10;          // extenders search inside this min-degree core
  double alpha = 0.25;           // cleaning rate around short cycles
  int oracle_limit = 12;         // exhaustive comparison when n <= this
  bool exact_expansion = false;  // exhaustive expansion verification when feasible
  std::uint64_t seed = 0;

  PipelineConfig resolved(int n) const;
};

struct StageRecord {
  std::string name;
  std::string status;  // "ok", "skipped", or "failed"
  std::string detail;
};

struct PipelineReport {
  PipelineConfig config;
  int input_vertices = 0;
  int input_edges = 0;
  int input_min_degree = 0;
  double input_avg_degree = 0.0;
  bool input_short_girth = false;  // triangle or four-cycle present
  std::uint64_t input_hash = 0;
  std::vector<StageRecord> stages;
  int spiders = 0;
  int extenders = 0;
  int dropped = 0;
  std::optional<ChordedCycle> result;  // best candidate; empty when acyclic
  std::optional<OracleResult> oracle;
  std::map<std::string, double> timings_ms;  // per stage plus "total"
};

// Full search: thin the graph to useful density, pull out an expanding core,
// build and chain gadgets there, and keep the best verified candidate cycle
// (a plain long-cycle search on the input competes as the fallback).
PipelineReport run_pipeline(const Graph& g, const PipelineConfig& config);

// JSON text of the report (schema_version 1).  Timing values live only under
// "timings" so the rest of the document is deterministic.
std::string report_json(const PipelineReport& report, const std::string& input_name);

}  // namespace chords

#endif
