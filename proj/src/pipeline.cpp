#include "chordcycles/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>

#include "json.hpp"

#include "chordcycles/core_ops.hpp"
#include "chordcycles/cycles.hpp"
#include "chordcycles/errors.hpp"
#include "chordcycles/expansion.hpp"
#include "chordcycles/gadgets.hpp"

namespace chords {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string list_brief(const VertexList& xs, std::size_t cap = 12) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size() && i < cap; ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  if (xs.size() > cap) out += ",...";
  return out + "]";
}

VertexList spider_body(const Spider& s) {
  VertexList vs;
  for (const Path& leg : s.legs) vs.insert(vs.end(), leg.vertices.begin(), leg.vertices.end());
  return sorted_unique(vs);
}

VertexList extender_body(const CycleExtender& e) {
  VertexList vs = e.cycle.vertices;
  vs.insert(vs.end(), e.p1.vertices.begin(), e.p1.vertices.end());
  vs.insert(vs.end(), e.p2.vertices.begin(), e.p2.vertices.end());
  vs.insert(vs.end(), e.a1.begin(), e.a1.end());
  vs.insert(vs.end(), e.a2.begin(), e.a2.end());
  return sorted_unique(vs);
}

bool has_triangle(const Graph& g) {
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v : g.neighbors(u)) {
      if (v <= u) continue;
      if (!set_intersection(g.neighbors(u), g.neighbors(v)).empty()) return true;
    }
  return false;
}

}  // namespace

PipelineConfig PipelineConfig::resolved(int n) const {
  PipelineConfig c = *this;
  double lg = n >= 2 ? std::log2(static_cast<double>(n)) : 1.0;
  if (c.degree_class_base == 0)
    c.degree_class_base = std::max(8, static_cast<int>(std::ceil(std::pow(2.0, std::pow(lg, 0.25)))));
  if (c.gadget_budget == 0) c.gadget_budget = std::max(2, static_cast<int>(std::ceil(lg * lg)));
  if (c.max_cycle_len == 0)
    c.max_cycle_len = std::max(8, static_cast<int>(std::ceil(lg * lg * lg)));
  if (c.max_path_len == 0) c.max_path_len = std::max(4, static_cast<int>(std::ceil(lg * lg)));
  if (c.anchor_size == 0)
    c.anchor_size = std::max(4, static_cast<int>(std::floor(std::pow(static_cast<double>(n), 0.25))));
  if (c.danger_threshold == 0) c.danger_threshold = std::max(2, c.anchor_size / 16);
  if (c.max_link_len == 0) c.max_link_len = c.max_path_len;
  return c;
}

PipelineReport run_pipeline(const Graph& g, const PipelineConfig& config) {
  Clock::time_point start_all = Clock::now();
  PipelineReport rep;
  rep.config = config.resolved(g.vertex_count());
  const PipelineConfig& cfg = rep.config;
  rep.input_vertices = g.vertex_count();
  rep.input_edges = g.edge_count();
  rep.input_min_degree = g.min_degree();
  rep.input_avg_degree = g.average_degree();
  rep.input_short_girth = !is_c4_free(g) || has_triangle(g);
  rep.input_hash = graph_content_hash(g);

  auto run_stage = [&](const std::string& name, const std::function<std::string()>& body) {
    Clock::time_point t0 = Clock::now();
    StageRecord rec;
    rec.name = name;
    try {
      rec.detail = body();
      rec.status = "ok";
    } catch (const StageError& e) {
      rec.status = "failed";
      rec.detail = std::string(e.stage) + ": " + e.what();
    } catch (const SearchError& e) {
      rec.status = "failed";
      rec.detail = e.what();
    } catch (const InfeasibleError& e) {
      rec.status = "failed";
      rec.detail = e.what();
    }
    rep.timings_ms[name] = ms_since(t0);
    rep.stages.push_back(std::move(rec));
  };
  auto skip_stage = [&](const std::string& name, const std::string& why) {
    rep.stages.push_back({name, "skipped", why});
    rep.timings_ms[name] = 0.0;
  };

  std::vector<ChordedCycle> candidates;

  if (g.vertex_count() == 0) {
    skip_stage("c4-free", "empty input");
    rep.timings_ms["total"] = ms_since(start_all);
    return rep;
  }

  // thin to useful density: a C4-free spanning subgraph near the target
  // average degree
  Graph thinned;
  run_stage("c4-free", [&] {
    C4FreeResult r = extract_c4_free_subgraph(g, cfg.c4_target);
    thinned = std::move(r.graph);
    std::string d = "kept average degree " + std::to_string(r.average_degree) + ", removed " +
                    std::to_string(r.removed_edges) + " edges";
    if (r.shortfall) d += " (below target)";
    return d;
  });

  // expanding core with guaranteed degree bounds
  Subgraph expander;
  run_stage("extract-expander", [&] {
    ExpansionProfile profile;
    profile.epsilon1 = cfg.epsilon1;
    profile.k = cfg.k;
    ExtractOptions opts;
    opts.seed = cfg.seed;
    ExtractionResult r = extract_expander_subgraph(thinned, profile, opts);
    expander = std::move(r.subgraph);
    std::string d = std::to_string(expander.graph.vertex_count()) + " vertices, average degree " +
                    std::to_string(expander.graph.average_degree()) + ", " +
                    std::to_string(r.cut_steps) + " cuts, " + std::to_string(r.peeled) + " peeled";
    if (r.below_k) d += ", ended below k";
    return d;
  });
  const Graph& h = expander.graph;

  if (cfg.exact_expansion) {
    if (h.vertex_count() >= 1 && h.vertex_count() <= kExactExpansionCap) {
      run_stage("verify-expansion", [&] {
        ExpansionProfile profile;
        profile.epsilon1 = cfg.epsilon1;
        profile.k = cfg.k;
        ExpansionCertificate cert =
            verify_sublinear_expansion(h, profile, CheckMode::exact, 256, cfg.seed);
        if (cert.pass) return std::string("exhaustive check passed");
        return "violating set " + list_brief(*cert.witness);
      });
    } else {
      skip_stage("verify-expansion", "core too large for exhaustive verification");
    }
  }

  run_stage("degree-classes", [&] {
    DegreeClasses dc = classify_degrees(h, cfg.degree_class_base);
    return "base " + std::to_string(dc.m) + ", " + std::to_string(dc.classes.size()) +
           " classes, dominant " + std::to_string(dc.dominant) + " with " +
           std::to_string(dc.classes[dc.dominant].size()) + " vertices";
  });

  std::vector<Spider> spiders;
  VertexList occupied;
  run_stage("spiders", [&] {
    DegreeClasses dc = classify_degrees(h, cfg.degree_class_base);
    const VertexList& centers = dc.classes[dc.dominant];
    spiders = find_spiders(h, cfg.gadget_budget, std::max(1, cfg.max_path_len), 1, {}, &centers);
    for (const Spider& s : spiders) occupied = set_union(occupied, spider_body(s));
    return "built " + std::to_string(spiders.size());
  });

  std::vector<CycleExtender> extenders;
  run_stage("extenders", [&] {
    GadgetParams gp;
    gp.core_degree = cfg.core_degree;
    gp.max_cycle_len = cfg.max_cycle_len;
    gp.min_cycle_len = std::max(4, cfg.max_cycle_len / 2);
    gp.max_path_len = cfg.max_path_len;
    gp.anchor_size = cfg.anchor_size;
    gp.anchor_diameter = cfg.anchor_size;
    gp.danger_threshold = cfg.danger_threshold;
    gp.alpha = cfg.alpha;
    std::string stopped;
    for (int b = 0; b < cfg.gadget_budget; ++b) {
      gp.seed = cfg.seed + static_cast<std::uint64_t>(b);
      try {
        CycleExtender e = build_cycle_extender(h, gp, occupied);
        occupied = set_union(occupied, extender_body(e));
        extenders.push_back(std::move(e));
      } catch (const StageError& err) {
        stopped = std::string("; stopped at ") + err.stage + ": " + err.what();
        break;
      }
    }
    return "built " + std::to_string(extenders.size()) + stopped;
  });

  if (spiders.empty() && extenders.empty()) {
    skip_stage("chain", "no gadgets to chain");
  } else {
    run_stage("chain", [&] {
      ChainParams cp;
      cp.max_link_len = cfg.max_link_len;
      cp.seed = cfg.seed;
      ChainResult chained = chain_gadgets(h, spiders, extenders, cp);
      rep.spiders = chained.spiders_used;
      rep.extenders = chained.extenders_used;
      rep.dropped = chained.dropped;
      Cycle lifted = expander.up(chained.chorded.cycle);
      ChordedCycle cc = chords_of(g, lifted);
      verify(static_cast<int>(cc.chords.size()) >= chained.chorded.chord_count(),
             "run_pipeline: lifting the chained cycle lost chords");
      candidates.push_back(std::move(cc));
      return "cycle of length " + std::to_string(lifted.length()) + " with " +
             std::to_string(candidates.back().chord_count()) + " chords (" +
             std::to_string(chained.spiders_used) + " spiders, " +
             std::to_string(chained.extenders_used) + " extenders, " +
             std::to_string(chained.dropped) + " dropped)";
    });
  }

  // a plain long-cycle hunt on the raw input competes with the chained cycle
  run_stage("fallback-cycle", [&] {
    LongCycleResult r = find_long_cycle(g, g.vertex_count(), cfg.seed);
    if (!r.cycle) return std::string("no cycle found");
    candidates.push_back(chords_of(g, *r.cycle));
    return "cycle of length " + std::to_string(r.cycle->length()) + " with " +
           std::to_string(candidates.back().chord_count()) + " chords";
  });

  run_stage("select", [&] {
    const ChordedCycle* best = nullptr;
    for (const ChordedCycle& c : candidates) {
      verify(is_chorded_cycle(g, c), "run_pipeline: produced an invalid candidate");
      if (best == nullptr || c.chord_count() > best->chord_count() ||
          (c.chord_count() == best->chord_count() &&
           (c.cycle.length() < best->cycle.length() ||
            (c.cycle.length() == best->cycle.length() &&
             c.cycle.vertices < best->cycle.vertices))))
        best = &c;
    }
    if (best == nullptr) return std::string("no candidate cycle");
    rep.result = *best;
    return std::to_string(candidates.size()) + " candidates, best has " +
           std::to_string(best->chord_count()) + " chords on length " +
           std::to_string(best->cycle.length());
  });

  if (rep.input_vertices <= cfg.oracle_limit) {
    run_stage("oracle", [&] {
      rep.oracle = oracle_max_chorded_cycle(g, cfg.oracle_limit);
      if (rep.result)
        verify(rep.result->chord_count() <= rep.oracle->max_chords,
               "run_pipeline: beat the exhaustive maximum, the count must be wrong");
      return "exhaustive maximum " + std::to_string(rep.oracle->max_chords) + " chords over " +
             std::to_string(rep.oracle->cycles_enumerated) + " cycles";
    });
  }

  if (rep.result) {
    ChordedCycle recount = chords_of(g, rep.result->cycle);
    verify(recount.chords == rep.result->chords,
           "run_pipeline: chord list changed under recount");
  }
  rep.timings_ms["total"] = ms_since(start_all);
  return rep;
}

std::string report_json(const PipelineReport& rep, const std::string& input_name) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["input"] = {{"name", input_name},
                {"vertices", rep.input_vertices},
                {"edges", rep.input_edges},
                {"min_degree", rep.input_min_degree},
                {"average_degree", rep.input_avg_degree},
                {"girth_le_4", rep.input_short_girth},
                {"hash", rep.input_hash}};
  const PipelineConfig& c = rep.config;
  j["config"] = {{"c4_target", c.c4_target},
                 {"degree_class_base", c.degree_class_base},
                 {"gadget_budget", c.gadget_budget},
                 {"max_cycle_len", c.max_cycle_len},
                 {"max_path_len", c.max_path_len},
                 {"epsilon1", c.epsilon1},
                 {"k", c.k},
                 {"anchor_size", c.anchor_size},
                 {"danger_threshold", c.danger_threshold},
                 {"max_link_len", c.max_link_len},
                 {"core_degree", c.core_degree},
                 {"alpha", c.alpha},
                 {"oracle_limit", c.oracle_limit},
                 {"exact_expansion", c.exact_expansion},
                 {"seed", c.seed}};
  j["stages"] = nlohmann::json::array();
  for (const StageRecord& s : rep.stages)
    j["stages"].push_back({{"name", s.name}, {"status", s.status}, {"detail", s.detail}});
  j["gadgets"] = {{"spiders", rep.spiders}, {"extenders", rep.extenders}, {"dropped", rep.dropped}};
  if (rep.result) {
    nlohmann::json chords = nlohmann::json::array();
    for (Edge e : rep.result->chords) chords.push_back({e.first, e.second});
    double len = static_cast<double>(rep.result->cycle.length());
    double lg = std::log2(len);
    j["result"] = {{"found", true},
                   {"length", rep.result->cycle.length()},
                   {"chords", rep.result->chord_count()},
                   {"chords_per_length", rep.result->chord_count() / len},
                   {"chords_normalized", rep.result->chord_count() * lg * lg / len},
                   {"chord_list", chords},
                   {"cycle", rep.result->cycle.vertices}};
  } else {
    j["result"] = {{"found", false}};
  }
  if (rep.oracle) {
    nlohmann::json per_length = nlohmann::json::object();
    for (auto [len, chords] : rep.oracle->per_length)
      per_length[std::to_string(len)] = chords;
    j["oracle"] = {{"max_chords", rep.oracle->max_chords},
                   {"per_length", per_length},
                   {"cycles_enumerated", rep.oracle->cycles_enumerated}};
  }
  j["timings"] = rep.timings_ms;
  return j.dump(2);
}

}  // namespace chords
