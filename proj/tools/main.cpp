#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chordcycles/cycles.hpp"
#include "chordcycles/errors.hpp"
#include "chordcycles/generate.hpp"
#include "chordcycles/graph.hpp"
#include "chordcycles/io.hpp"
#include "chordcycles/oracle.hpp"
#include "chordcycles/pipeline.hpp"

namespace {

using chords::Graph;
using chords::PipelineConfig;
using chords::PipelineReport;
using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw chords::ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw chords::ParseError("cannot write " + tmp);
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw chords::ParseError(path + ": " + e.what());
  }
}

Graph load_input(const std::string& path, const std::string& format) {
  return chords::load_graph_file(path, chords::parse_format(format));
}

// shared pipeline knobs; names follow the report's config block
void add_config_flags(CLI::App* cmd, PipelineConfig& cfg, std::string& mode) {
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--min-degree-c", cfg.c4_target, "average degree kept by the thinning stage");
  cmd->add_option("--epsilon1", cfg.epsilon1, "sublinear expansion rate");
  cmd->add_option("--k", cfg.k, "sublinear expansion size offset");
  cmd->add_option("--m", cfg.degree_class_base, "degree classification base (0 = derive from n)");
  cmd->add_option("--anchor-size", cfg.anchor_size, "extender anchor set size (0 = derive)");
  cmd->add_option("--max-cycle-len", cfg.max_cycle_len, "extender cycle cap (0 = derive)");
  cmd->add_option("--max-path-len", cfg.max_path_len, "anchor route cap (0 = derive)");
  cmd->add_option("--max-link-len", cfg.max_link_len, "chain link cap (0 = derive)");
  cmd->add_option("--gadget-budget", cfg.gadget_budget, "gadget quota (0 = derive)");
  cmd->add_option("--danger-threshold", cfg.danger_threshold, "anchor routing tolerance (0 = derive)");
  cmd->add_option("--core-degree", cfg.core_degree, "min-degree core for extender search");
  cmd->add_option("--alpha", cfg.alpha, "cleaning expansion rate");
  cmd->add_option("--oracle-limit", cfg.oracle_limit, "exhaustive comparison up to this size");
  cmd->add_option("--mode", mode, "exact or heuristic expansion verification")
      ->check(CLI::IsMember({"exact", "heuristic"}));
}

int cmd_run(const std::string& input, const std::string& format, const std::string& out,
            PipelineConfig cfg) {
  Graph g = load_input(input, format);
  PipelineReport rep = chords::run_pipeline(g, cfg);
  std::string text = chords::report_json(rep, input);
  if (out.empty()) {
    std::cout << text << "\n";
  } else {
    write_text_atomic(out, text);
    std::cout << input << ": " << (rep.result ? "cycle of length " +
                                                    std::to_string(rep.result->cycle.length()) +
                                                    " with " +
                                                    std::to_string(rep.result->chord_count()) +
                                                    " chords"
                                              : std::string("no cycle"))
              << " -> " << out << "\n";
  }
  return rep.result ? 0 : 1;
}

json oracle_to_json(const chords::OracleResult& r) {
  json per_length = json::object();
  for (auto [len, c] : r.per_length) per_length[std::to_string(len)] = c;
  json j = {{"max_chords", r.max_chords},
            {"per_length", per_length},
            {"cycles_enumerated", r.cycles_enumerated},
            {"hash", r.instance_hash}};
  if (r.best) {
    json chords_arr = json::array();
    for (chords::Edge e : r.best->chords) chords_arr.push_back({e.first, e.second});
    j["best"] = {{"length", r.best->cycle.length()},
                 {"chords", r.best->chord_count()},
                 {"chord_list", chords_arr},
                 {"cycle", r.best->cycle.vertices}};
  }
  return j;
}

chords::OracleResult oracle_from_json(const json& j) {
  chords::OracleResult r;
  r.max_chords = j.at("max_chords").get<int>();
  for (auto& [key, value] : j.at("per_length").items())
    r.per_length[std::stoi(key)] = value.get<int>();
  r.cycles_enumerated = j.at("cycles_enumerated").get<long long>();
  r.instance_hash = j.at("hash").get<std::uint64_t>();
  if (j.contains("best")) {
    chords::ChordedCycle best;
    best.cycle.vertices = j["best"].at("cycle").get<chords::VertexList>();
    for (const json& e : j["best"].at("chord_list"))
      best.chords.push_back(chords::make_edge(e.at(0).get<int>(), e.at(1).get<int>()));
    r.best = std::move(best);
  }
  return r;
}

int cmd_oracle(const std::string& input, const std::string& format, int limit,
               const std::string& cache_path) {
  Graph g = load_input(input, format);
  std::uint64_t hash = chords::graph_content_hash(g);
  std::string key = std::to_string(hash);

  json cache = json::object();
  if (!cache_path.empty() && std::filesystem::exists(cache_path))
    cache = parse_json_file(cache_path);

  chords::OracleResult result;
  bool cached = cache.contains(key);
  if (cached) {
    result = oracle_from_json(cache[key]);
  } else {
    result = chords::oracle_max_chorded_cycle(g, limit);
    if (!cache_path.empty()) {
      cache[key] = oracle_to_json(result);
      write_text_atomic(cache_path, cache.dump(2));
    }
  }

  json out = oracle_to_json(result);
  out["input"] = input;
  out["cached"] = cached;
  std::cout << out.dump(2) << "\n";
  return result.max_chords >= 0 ? 0 : 1;
}

int cmd_gen(const std::string& kind, int n, int d, int girth, std::uint64_t seed,
            const std::string& out) {
  chords::GenerateParams params;
  params.n = n;
  params.d = d;
  params.girth = girth;
  Graph g = chords::generate(chords::parse_kind(kind), params, seed);
  if (out == "-") {
    chords::write_edge_list(std::cout, g);
  } else {
    std::ostringstream ss;
    chords::write_edge_list(ss, g);
    write_text_atomic(out, ss.str());
    std::cerr << kind << " n=" << g.vertex_count() << " m=" << g.edge_count() << " -> " << out
              << "\n";
  }
  return 0;
}

struct CorpusRow {
  std::string name;
  std::string family;
  int n = 0;
  bool ok = false;
  std::string error;
  int length = 0;
  int chord_count = 0;
  double normalized = 0.0;
  double ratio = -1.0;  // pipeline / oracle maximum; -1 when no oracle ran
};

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  std::size_t k = xs.size() / 2;
  return xs.size() % 2 ? xs[k] : (xs[k - 1] + xs[k]) / 2.0;
}

int cmd_corpus(const std::string& manifest_path, const std::string& out_dir, int workers,
               const PipelineConfig& base_cfg) {
  json manifest = parse_json_file(manifest_path);
  if (manifest.is_object() && manifest.contains("entries")) manifest = manifest["entries"];
  if (!manifest.is_array() || manifest.empty())
    throw chords::InfeasibleError(manifest_path + ": manifest has no entries");

  std::filesystem::create_directories(out_dir);
  std::filesystem::path manifest_dir = std::filesystem::path(manifest_path).parent_path();

  std::vector<json> entries(manifest.begin(), manifest.end());
  std::vector<CorpusRow> rows(entries.size());

  auto run_entry = [&](std::size_t idx) {
    const json& e = entries[idx];
    CorpusRow& row = rows[idx];
    row.name = e.value("name", "entry-" + std::to_string(idx));
    try {
      Graph g;
      if (e.contains("path")) {
        std::filesystem::path p = e["path"].get<std::string>();
        if (p.is_relative()) p = manifest_dir / p;
        g = load_input(p.string(), e.value("format", "edge-list"));
        row.family = e.value("family", std::string("file"));
      } else {
        chords::GenerateParams params;
        params.n = e.at("n").get<int>();
        params.d = e.value("d", 3);
        params.girth = e.value("girth", 5);
        std::string kind = e.at("kind").get<std::string>();
        g = chords::generate(chords::parse_kind(kind), params, e.value("seed", 0ull));
        row.family = e.value("family", kind);
      }
      row.n = g.vertex_count();
      PipelineConfig cfg = base_cfg;
      if (e.contains("seed")) cfg.seed = e["seed"].get<std::uint64_t>();
      PipelineReport rep = chords::run_pipeline(g, cfg);
      write_text_atomic((std::filesystem::path(out_dir) / (row.name + ".json")).string(),
                        chords::report_json(rep, row.name));
      row.ok = true;
      if (rep.result) {
        row.length = rep.result->cycle.length();
        row.chord_count = rep.result->chord_count();
        double lg = std::log2(static_cast<double>(row.length));
        row.normalized = row.chord_count * lg * lg / row.length;
      }
      if (rep.oracle && rep.result) {
        if (rep.oracle->max_chords > 0)
          row.ratio = static_cast<double>(row.chord_count) / rep.oracle->max_chords;
        else if (rep.oracle->max_chords == 0)
          row.ratio = 1.0;
      }
    } catch (const std::exception& ex) {
      row.ok = false;
      row.error = ex.what();
    }
  };

  if (workers < 1) workers = 1;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < entries.size(); i = next.fetch_add(1))
      run_entry(i);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  // aggregate per (family, n): medians over successful entries
  std::map<std::pair<std::string, int>, std::vector<const CorpusRow*>> groups;
  for (const CorpusRow& row : rows)
    if (row.ok) groups[{row.family, row.n}].push_back(&row);

  json agg;
  agg["schema_version"] = 1;
  agg["entries"] = json::array();
  for (const CorpusRow& row : rows) {
    json r = {{"name", row.name}, {"family", row.family}, {"n", row.n}, {"ok", row.ok}};
    if (row.ok) {
      r["length"] = row.length;
      r["chords"] = row.chord_count;
      r["chords_normalized"] = row.normalized;
      if (row.ratio >= 0) r["oracle_ratio"] = row.ratio;
    } else {
      r["error"] = row.error;
    }
    agg["entries"].push_back(r);
  }
  agg["groups"] = json::array();
  for (auto& [key, members] : groups) {
    std::vector<double> lengths, counts, norms, ratios;
    for (const CorpusRow* r : members) {
      lengths.push_back(r->length);
      counts.push_back(r->chord_count);
      norms.push_back(r->normalized);
      if (r->ratio >= 0) ratios.push_back(r->ratio);
    }
    json grp = {{"family", key.first},
                {"n", key.second},
                {"count", members.size()},
                {"median_length", median_of(lengths)},
                {"median_chords", median_of(counts)},
                {"median_chords_normalized", median_of(norms)}};
    if (!ratios.empty()) grp["median_oracle_ratio"] = median_of(ratios);
    agg["groups"].push_back(grp);
  }
  write_text_atomic((std::filesystem::path(out_dir) / "aggregate.json").string(), agg.dump(2));

  std::size_t failed = 0;
  for (const CorpusRow& row : rows)
    if (!row.ok) ++failed;
  std::cout << entries.size() << " entries, " << failed << " failed -> " << out_dir << "\n";
  for (const json& grp : agg["groups"])
    std::cout << "  " << grp["family"].get<std::string>() << " n=" << grp["n"]
              << " median_chords=" << grp["median_chords"] << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chord-rich cycle search"};
  app.require_subcommand(1);

  std::string input, format = "edge-list", out, mode = "heuristic";
  PipelineConfig cfg;

  CLI::App* run = app.add_subcommand("run", "run the full pipeline on one graph");
  run->add_option("--input", input, "graph file")->required();
  run->add_option("--format", format, "edge-list or dimacs");
  run->add_option("--out", out, "report path (stdout when omitted)");
  add_config_flags(run, cfg, mode);

  int limit = 12;
  std::string cache_path;
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive maximum chord count");
  oracle->add_option("--input", input, "graph file")->required();
  oracle->add_option("--format", format, "edge-list or dimacs");
  oracle->add_option("--limit-n", limit, "refuse graphs larger than this");
  oracle->add_option("--cache", cache_path, "JSON cache keyed by graph hash");

  std::string kind;
  int gen_n = 0, gen_d = 3, gen_girth = 5;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
  gen->add_option("--kind", kind,
                  "random-regular, gnp-min-degree, high-girth-regular, complete, cycle, petersen")
      ->required();
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--d", gen_d, "degree parameter");
  gen->add_option("--girth", gen_girth, "girth target for high-girth-regular");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", out, "output path ('-' for stdout)")->required();

  std::string manifest, corpus_dir = "corpus-out";
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  CLI::App* corpus = app.add_subcommand("corpus", "run the pipeline over a manifest of graphs");
  corpus->add_option("--manifest", manifest, "JSON list of files or generator specs")->required();
  corpus->add_option("--out", corpus_dir, "report directory");
  corpus->add_option("--workers", workers, "concurrent entries");
  add_config_flags(corpus, cfg, mode);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.exact_expansion = mode == "exact";

  try {
    if (*run) return cmd_run(input, format, out, cfg);
    if (*oracle) return cmd_oracle(input, format, limit, cache_path);
    if (*gen) return cmd_gen(kind, gen_n, gen_d, gen_girth, gen_seed, out);
    if (*corpus) return cmd_corpus(manifest, corpus_dir, workers, cfg);
  } catch (const chords::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const chords::InfeasibleError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
