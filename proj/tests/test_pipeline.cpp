#include <algorithm>
#include <string>

#include "chordcycles/core_ops.hpp"
#include "chordcycles/generate.hpp"
#include "chordcycles/pipeline.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace chords;
using nlohmann::json;

TEST_CASE("config resolution derives budgets from the vertex count") {
  PipelineConfig c;
  PipelineConfig r = c.resolved(16384);  // lg = 14
  CHECK(r.degree_class_base == 8);
  CHECK(r.gadget_budget == 196);
  CHECK(r.max_cycle_len == 2744);
  CHECK(r.max_path_len == 196);
  CHECK(r.anchor_size == 11);
  CHECK(r.danger_threshold == 2);
  CHECK(r.max_link_len == 196);

  // explicit values survive resolution
  c.gadget_budget = 5;
  c.anchor_size = 7;
  CHECK(c.resolved(16384).gadget_budget == 5);
  CHECK(c.resolved(16384).anchor_size == 7);

  // floors keep tiny inputs sane
  PipelineConfig tiny = PipelineConfig{}.resolved(4);
  CHECK(tiny.degree_class_base >= 8);
  CHECK(tiny.gadget_budget >= 2);
  CHECK(tiny.max_cycle_len >= 8);
  CHECK(tiny.anchor_size >= 4);
}

TEST_CASE("pipeline on a bare ring finds the ring itself") {
  PipelineReport rep = run_pipeline(testutil::ring(50), PipelineConfig{});
  REQUIRE(rep.result.has_value());
  CHECK(rep.result->cycle.length() == 50);
  CHECK(rep.result->chord_count() == 0);
  CHECK(rep.spiders == 0);
  CHECK(rep.extenders == 0);
  CHECK(is_chorded_cycle(testutil::ring(50), *rep.result));
}

TEST_CASE("pipeline on a complete graph keeps every chord") {
  PipelineReport rep = run_pipeline(testutil::complete(20), PipelineConfig{});
  REQUIRE(rep.result.has_value());
  CHECK(rep.result->cycle.length() == 20);
  CHECK(rep.result->chord_count() == 170);  // 20*17/2
  CHECK(is_chorded_cycle(testutil::complete(20), *rep.result));
}

TEST_CASE("pipeline on the petersen graph matches the exhaustive bound") {
  PipelineReport rep = run_pipeline(testutil::petersen(), PipelineConfig{});
  REQUIRE(rep.result.has_value());
  CHECK(rep.result->chord_count() == 3);
  CHECK(rep.result->cycle.length() == 9);
  REQUIRE(rep.oracle.has_value());
  CHECK(rep.oracle->max_chords == 3);
  CHECK(rep.result->chord_count() <= rep.oracle->max_chords);
  CHECK(rep.input_min_degree == 3);
  CHECK(rep.input_avg_degree == doctest::Approx(3.0));
  CHECK_FALSE(rep.input_short_girth);

  PipelineReport k4 = run_pipeline(testutil::complete(4), PipelineConfig{});
  CHECK(k4.input_short_girth);
}

TEST_CASE("pipeline on an acyclic input reports no cycle") {
  PipelineReport rep = run_pipeline(testutil::path_graph(8), PipelineConfig{});
  CHECK_FALSE(rep.result.has_value());
  CHECK_FALSE(rep.stages.empty());
  REQUIRE(rep.oracle.has_value());
  CHECK(rep.oracle->max_chords == -1);
}

TEST_CASE("pipeline on a large regular graph is deterministic and verified") {
  Graph g = testutil::make(GraphKind::random_regular, 4096, 16, 1);
  PipelineConfig cfg;
  cfg.seed = 1;
  PipelineReport rep = run_pipeline(g, cfg);
  REQUIRE(rep.result.has_value());
  CHECK(rep.result->chord_count() == 28143);
  CHECK(is_chorded_cycle(g, *rep.result));
  ChordedCycle recount = chords_of(g, rep.result->cycle);
  CHECK(recount.chords == rep.result->chords);
}

TEST_CASE("report json carries the schema and omits volatility outside timings") {
  PipelineReport a = run_pipeline(testutil::petersen(), PipelineConfig{});
  PipelineReport b = run_pipeline(testutil::petersen(), PipelineConfig{});
  json ja = json::parse(report_json(a, "petersen"));
  json jb = json::parse(report_json(b, "petersen"));

  CHECK(ja["schema_version"] == 1);
  for (const char* key : {"input", "config", "stages", "gadgets", "result", "oracle", "timings"})
    CHECK(ja.contains(key));
  CHECK(ja["input"]["name"] == "petersen");
  CHECK(ja["input"]["vertices"] == 10);
  CHECK(ja["input"]["edges"] == 15);
  CHECK(ja["input"]["min_degree"] == 3);
  CHECK(ja["input"]["girth_le_4"] == false);
  CHECK(ja["result"]["found"] == true);
  CHECK(ja["result"]["length"] == 9);
  CHECK(ja["result"]["chords"] == 3);
  CHECK(ja["result"]["chords_per_length"] == doctest::Approx(3.0 / 9));
  CHECK(ja["oracle"]["max_chords"] == 3);

  ja.erase("timings");
  jb.erase("timings");
  CHECK(ja.dump(2) == jb.dump(2));
}

TEST_CASE("every stage outcome is recorded") {
  PipelineReport rep = run_pipeline(testutil::petersen(), PipelineConfig{});
  auto has_stage = [&](const std::string& name) {
    return std::any_of(rep.stages.begin(), rep.stages.end(),
                       [&](const StageRecord& s) { return s.name == name; });
  };
  CHECK(has_stage("c4-free"));
  CHECK(has_stage("extract-expander"));
  CHECK(has_stage("fallback-cycle"));
  CHECK(has_stage("select"));
  CHECK(has_stage("oracle"));
  for (const StageRecord& s : rep.stages)
    CHECK((s.status == "ok" || s.status == "skipped" || s.status == "failed"));
  // timings cover the recorded stages plus the total
  CHECK(rep.timings_ms.count("total") == 1);
}

TEST_CASE("empty input short circuits") {
  PipelineReport rep = run_pipeline(Graph{}, PipelineConfig{});
  CHECK_FALSE(rep.result.has_value());
  CHECK(rep.input_vertices == 0);
}
