// evograph — seeded simulator for transitive friend-recommendation evolution
// of factor-annotated social graphs, with generation, metrics, and
// Gephi-compatible export.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "evograph/evograph.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;  // bad flags or config
constexpr int kExitIo = 2;     // unreadable/unwritable files
constexpr int kExitParse = 3;  // malformed input graph

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Write-temp-then-rename so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw IoError("short write to '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw IoError("cannot rename '" + tmp + "' to '" + path + "': " +
                  ec.message());
}

// Flag values land here; only flags the user actually passed override the
// config file. Precedence: flag > config file > EVOGRAPH_SEED (seed only).
struct Flags {
  std::string config_path;
  std::uint64_t n = 0;
  std::uint64_t edges = 0;
  double edge_prob = 0.0;
  std::uint64_t factors = 0;
  std::uint64_t score_min = 0;
  std::uint64_t score_max = 0;
  std::string score_mode;
  std::string mean;
  double threshold = 0.0;
  double p = 0.0;
  std::string policy;
  std::uint64_t max_sweeps = 0;
  std::uint64_t seed = 0;
  std::uint64_t growth_pool = 0;
  std::uint64_t attach_min = 0;
  std::uint64_t attach_max = 0;
  std::uint64_t outer_steps = 0;
  std::vector<std::string> out;
  std::string format;
  std::string input;
  std::string trace_gexf;
  std::string metrics_json;
  bool no_metrics = false;
};

void add_generator_flags(CLI::App& cmd, Flags& flags) {
  cmd.add_option("--n", flags.n, "node count of the generated initial graph");
  cmd.add_option("--edges", flags.edges,
                 "exact edge count (default 2*n, capped at n(n-1)/2)");
  cmd.add_option("--edge-prob", flags.edge_prob,
                 "per-pair edge probability (alternative to --edges)");
  cmd.add_option("--factors", flags.factors, "size of the factor universe");
  cmd.add_option("--score-min", flags.score_min, "lowest random score");
  cmd.add_option("--score-max", flags.score_max, "highest random score");
  cmd.add_option("--score-mode", flags.score_mode,
                 "cumulative | per_factor")
      ->check(CLI::IsMember({"cumulative", "per_factor"}));
}

void add_run_flags(CLI::App& cmd, Flags& flags) {
  cmd.add_option("--config", flags.config_path, "run configuration file");
  cmd.add_option("--seed", flags.seed,
                 "master seed (also via EVOGRAPH_SEED)");
  cmd.add_option("-o,--out", flags.out,
                 "output path; repeatable; format from extension");
  cmd.add_option("--format", flags.format,
                 "fallback output format: csv | gexf | dot")
      ->check(CLI::IsMember({"csv", "gexf", "dot"}));
}

void add_evolution_flags(CLI::App& cmd, Flags& flags) {
  cmd.add_option("--mean", flags.mean,
                 "score mean: arithmetic | geometric | harmonic")
      ->check(CLI::IsMember({"arithmetic", "geometric", "harmonic"}));
  cmd.add_option("--threshold", flags.threshold,
                 "minimum cumulative score a candidate must exceed");
  cmd.add_option("--p", flags.p, "acceptance probability of a recommendation");
  cmd.add_option("--policy", flags.policy,
                 "coin-rejected pairs: retry | permanent")
      ->check(CLI::IsMember({"retry", "permanent"}));
  cmd.add_option("--max-sweeps", flags.max_sweeps,
                 "sweep budget (default 10*n)");
  cmd.add_option("--in", flags.input, "evolve this graph file instead of "
                                      "generating one");
  cmd.add_option("--growth-pool", flags.growth_pool,
                 "enable iterative growth: bursts add 1..pool nodes");
  cmd.add_option("--attach-min", flags.attach_min,
                 "min attachment edges per fresh node");
  cmd.add_option("--attach-max", flags.attach_max,
                 "max attachment edges per fresh node");
  cmd.add_option("--outer-steps", flags.outer_steps,
                 "number of evolve+grow rounds in iterative mode");
  cmd.add_option("--trace-gexf", flags.trace_gexf,
                 "write a dynamic GEXF of the whole trace here");
  cmd.add_option("--metrics-json", flags.metrics_json,
                 "write the metrics report as JSON here");
  cmd.add_flag("--no-metrics", flags.no_metrics, "skip the metrics report");
}

evograph::config::RunConfig build_config(const CLI::App& cmd,
                                         const Flags& flags) {
  namespace cfg = evograph::config;
  cfg::RunConfig run;
  if (!flags.config_path.empty())
    run.apply(cfg::ConfigFile::parse(read_file(flags.config_path)));

  const auto passed = [&](const std::string& name) {
    const CLI::Option* opt = cmd.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };

  if (passed("--n")) {
    run.generator.n = flags.n;
    run.n_set = true;
  }
  if (passed("--edges")) run.edges = flags.edges;
  if (passed("--edge-prob")) run.edge_prob = flags.edge_prob;
  if (passed("--factors"))
    run.generator.attrs.factor_universe =
        static_cast<std::uint32_t>(flags.factors);
  if (passed("--score-min"))
    run.generator.attrs.score_mode.range.lo =
        static_cast<std::uint32_t>(flags.score_min);
  if (passed("--score-max"))
    run.generator.attrs.score_mode.range.hi =
        static_cast<std::uint32_t>(flags.score_max);
  if (passed("--score-mode"))
    run.generator.attrs.score_mode.kind = flags.score_mode == "per_factor"
        ? evograph::ScoreModeKind::PerFactor
        : evograph::ScoreModeKind::Cumulative;

  if (passed("--mean")) run.evolution.mean = *evograph::mean_from_string(flags.mean);
  if (passed("--threshold")) run.evolution.threshold = flags.threshold;
  if (passed("--p")) run.evolution.accept_prob = flags.p;
  if (passed("--policy"))
    run.evolution.policy = flags.policy == "permanent"
                               ? evograph::RejectionPolicy::Permanent
                               : evograph::RejectionPolicy::Retry;
  if (passed("--max-sweeps")) run.evolution.max_sweeps = flags.max_sweeps;
  if (passed("--in")) run.input_path = flags.input;

  if (passed("--growth-pool") || passed("--attach-min") ||
      passed("--attach-max") || passed("--outer-steps")) {
    evograph::GrowthConfig grown = run.growth.value_or(evograph::GrowthConfig{});
    if (passed("--growth-pool")) grown.pool_size = flags.growth_pool;
    if (passed("--attach-min"))
      grown.attach_edges_per_node.lo =
          static_cast<std::uint32_t>(flags.attach_min);
    if (passed("--attach-max"))
      grown.attach_edges_per_node.hi =
          static_cast<std::uint32_t>(flags.attach_max);
    if (passed("--outer-steps")) grown.outer_steps = flags.outer_steps;
    run.growth = grown;
  }

  if (passed("--seed")) {
    run.seed = flags.seed;
  } else if (!run.seed_set) {
    if (const char* env = std::getenv("EVOGRAPH_SEED")) {
      try {
        run.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw CLI::ValidationError("EVOGRAPH_SEED",
                                   "not an integer: " + std::string(env));
      }
    }
  }

  for (const std::string& path : flags.out)
    run.outputs.push_back({cfg::OutputFormat::Csv, path});
  if (passed("--format"))
    run.default_format = *cfg::format_from_string(flags.format);
  if (passed("--trace-gexf")) run.trace_gexf_path = flags.trace_gexf;
  if (passed("--metrics-json")) run.metrics_json_path = flags.metrics_json;
  if (flags.no_metrics) run.metrics_enabled = false;

  run.finalize();
  return run;
}

void write_graph_outputs(const evograph::config::RunConfig& run,
                         const evograph::SocialGraph& g) {
  namespace cfg = evograph::config;
  for (const cfg::OutputSpec& spec : run.outputs) {
    switch (spec.format) {
      case cfg::OutputFormat::Csv:
        write_file_atomic(spec.path, evograph::io::export_edge_list(g));
        break;
      case cfg::OutputFormat::Gexf:
        write_file_atomic(spec.path, evograph::io::export_gexf(g));
        break;
      case cfg::OutputFormat::Dot:
        write_file_atomic(spec.path, evograph::io::export_dot(g));
        break;
    }
  }
}

std::string metrics_text(const evograph::metrics::MetricsReport& report,
                         bool truncated) {
  using evograph::io::format_score;
  std::string out;
  out += "nodes = " + std::to_string(report.node_count) + "\n";
  out += "edges = " + std::to_string(report.edge_count) + "\n";
  out += "density = " + format_score(report.density) + "\n";
  out += "avg_clustering = " + format_score(report.avg_clustering) + "\n";
  out += "components = " + std::to_string(report.component_count) + "\n";
  out += "modularity = " + format_score(report.modularity) + "\n";
  out += "communities = " + std::to_string(report.community_count) + "\n";
  out += "truncated = " + std::string(truncated ? "true" : "false") + "\n";
  std::string hist;
  for (const auto& [degree, count] : report.degree_histogram) {
    if (!hist.empty()) hist.push_back(';');
    hist += std::to_string(degree) + ":" + std::to_string(count);
  }
  out += "degree_histogram = " + hist + "\n";
  return out;
}

nlohmann::ordered_json metrics_json(
    const evograph::metrics::MetricsReport& report, bool truncated) {
  nlohmann::ordered_json j;
  j["nodes"] = report.node_count;
  j["edges"] = report.edge_count;
  j["density"] = report.density;
  j["avg_clustering"] = report.avg_clustering;
  j["components"] = report.component_count;
  j["modularity"] = report.modularity;
  j["communities"] = report.community_count;
  j["truncated"] = truncated;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [degree, count] : report.degree_histogram)
    hist[std::to_string(degree)] = count;
  j["degree_histogram"] = hist;
  return j;
}

void emit_metrics(const evograph::config::RunConfig& run,
                  const evograph::SocialGraph& g, bool truncated) {
  if (!run.metrics_enabled) return;
  const auto report = evograph::metrics::compute_report(g);
  std::cout << metrics_text(report, truncated);
  if (!run.metrics_json_path.empty())
    write_file_atomic(run.metrics_json_path,
                      metrics_json(report, truncated).dump(2) + "\n");
}

evograph::SocialGraph initial_graph(const evograph::config::RunConfig& run) {
  if (!run.input_path.empty())
    return evograph::io::import_edge_list(read_file(run.input_path));
  if (!run.n_set)
    throw CLI::ValidationError(
        "generator", "no input graph and no --n/generator section given");
  return evograph::generate_initial(run.generator);
}

int cmd_generate(const CLI::App& cmd, const Flags& flags) {
  const auto run = build_config(cmd, flags);
  if (!run.n_set)
    throw CLI::ValidationError("--n", "generate needs a node count");
  if (run.outputs.empty())
    throw CLI::ValidationError("--out", "generate needs at least one output");
  const evograph::SocialGraph g = evograph::generate_initial(run.generator);
  write_graph_outputs(run, g);
  return kExitOk;
}

int cmd_evolve(const CLI::App& cmd, const Flags& flags) {
  const auto run = build_config(cmd, flags);
  const evograph::SocialGraph g0 = initial_graph(run);

  const evograph::EvolutionTrace trace =
      run.growth ? evograph::iterative_evolve(g0, run.evolution, *run.growth)
                 : evograph::evolve(g0, run.evolution);
  if (trace.truncated)
    std::cerr << "warning: sweep budget exhausted before a fixpoint; "
                 "trace is truncated\n";

  write_graph_outputs(run, trace.final_graph());
  if (!run.trace_gexf_path.empty())
    write_file_atomic(run.trace_gexf_path, evograph::io::export_gexf(trace));
  emit_metrics(run, trace.final_graph(), trace.truncated);
  return kExitOk;
}

int cmd_metrics(const Flags& flags, const std::string& graph_path) {
  const evograph::SocialGraph g =
      evograph::io::import_edge_list(read_file(graph_path));
  const auto report = evograph::metrics::compute_report(g);
  std::cout << metrics_text(report, false);
  if (!flags.metrics_json.empty())
    write_file_atomic(flags.metrics_json,
                      metrics_json(report, false).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evograph — social-graph evolution by transitive friend "
               "recommendation"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* generate = app.add_subcommand(
      "generate", "write a seeded random factor-annotated graph");
  add_generator_flags(*generate, flags);
  add_run_flags(*generate, flags);

  CLI::App* evolve = app.add_subcommand(
      "evolve", "run the evolution process and export the results");
  add_generator_flags(*evolve, flags);
  add_run_flags(*evolve, flags);
  add_evolution_flags(*evolve, flags);

  std::string graph_path;
  CLI::App* metrics = app.add_subcommand(
      "metrics", "print the metrics report of a graph file");
  metrics->add_option("graph", graph_path, "edge-list CSV to analyze")
      ->required();
  metrics->add_option("--json", flags.metrics_json,
                      "also write the report as JSON here");

  try {
    app.parse(argc, argv);
    if (generate->parsed()) return cmd_generate(*generate, flags);
    if (evolve->parsed()) return cmd_evolve(*evolve, flags);
    if (metrics->parsed()) return cmd_metrics(flags, graph_path);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const evograph::config::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const evograph::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
