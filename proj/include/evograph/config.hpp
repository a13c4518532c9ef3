#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evograph/engine.hpp"
#include "evograph/generate.hpp"

namespace evograph::config {

struct ConfigError : std::runtime_error {
  std::size_t line;

  ConfigError(std::size_t line_number, const std::string& what)
      : std::runtime_error("config line " + std::to_string(line_number) +
                           ": " + what),
        line(line_number) {}
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
    --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace detail

/// Flat sectioned key-value text: `[section]` headers, `key = value` lines,
/// `#` comments. Values are untyped strings here; typed access reports the
/// offending line on failure. All keys are single-valued except run.out,
/// which may repeat.
class ConfigFile {
 public:
  struct Entry {
    std::size_t line;
    std::string value;
  };

  static ConfigFile parse(std::string_view text) {
    ConfigFile file;
    std::string section;
    std::size_t line_number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t nl = text.find('\n', start);
      const std::string_view raw =
          text.substr(start, nl == std::string_view::npos ? text.size() - start
                                                          : nl - start);
      start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_number;

      const std::string line = detail::trim(raw);
      if (line.empty() || line.front() == '#') continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw ConfigError(line_number, "unterminated section header");
        section = detail::trim(
            std::string_view(line).substr(1, line.size() - 2));
        if (section.empty())
          throw ConfigError(line_number, "empty section name");
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(line_number, "expected 'key = value'");
      const std::string key = detail::trim(std::string_view(line).substr(0, eq));
      const std::string value =
          detail::trim(std::string_view(line).substr(eq + 1));
      if (key.empty()) throw ConfigError(line_number, "empty key");
      if (section.empty())
        throw ConfigError(line_number, "key '" + key + "' outside a section");
      const std::string dotted = section + "." + key;
      auto& slot = file.entries_[dotted];
      if (!slot.empty() && dotted != "run.out")
        throw ConfigError(line_number, "duplicate key '" + dotted + "'");
      slot.push_back({line_number, value});
    }
    return file;
  }

  std::optional<std::string> value(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.front().value;
  }

  std::vector<std::string> values(const std::string& key) const {
    std::vector<std::string> out;
    const auto it = entries_.find(key);
    if (it == entries_.end()) return out;
    for (const Entry& e : it->second) out.push_back(e.value);
    return out;
  }

  bool has_section(const std::string& section) const {
    const std::string prefix = section + ".";
    for (const auto& [key, entries] : entries_)
      if (key.compare(0, prefix.size(), prefix) == 0) return true;
    return false;
  }

  std::optional<std::uint64_t> u64(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    const Entry& e = it->second.front();
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(e.value, &used);
      if (used != e.value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(e.line, "'" + key + "' wants an integer, got '" +
                                    e.value + "'");
    }
  }

  std::optional<double> f64(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    const Entry& e = it->second.front();
    try {
      std::size_t used = 0;
      const double v = std::stod(e.value, &used);
      if (used != e.value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(e.line,
                        "'" + key + "' wants a number, got '" + e.value + "'");
    }
  }

  std::optional<bool> boolean(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    const Entry& e = it->second.front();
    if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no") return false;
    throw ConfigError(e.line, "'" + key + "' wants true/false, got '" +
                                  e.value + "'");
  }

  const std::map<std::string, std::vector<Entry>>& all() const {
    return entries_;
  }

  std::size_t line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.front().line;
  }

 private:
  std::map<std::string, std::vector<Entry>> entries_;
};

enum class OutputFormat { Csv, Gexf, Dot };

inline const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Gexf: return "gexf";
    case OutputFormat::Dot: return "dot";
  }
  return "?";
}

inline std::optional<OutputFormat> format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "gexf") return OutputFormat::Gexf;
  if (s == "dot") return OutputFormat::Dot;
  return std::nullopt;
}

/// Format for an output path: known extension wins, otherwise the fallback.
inline OutputFormat format_for_path(const std::string& path,
                                    OutputFormat fallback) {
  const std::size_t dot = path.rfind('.');
  if (dot == std::string::npos) return fallback;
  const auto f = format_from_string(path.substr(dot + 1));
  return f ? *f : fallback;
}

struct OutputSpec {
  OutputFormat format = OutputFormat::Csv;
  std::string path;
};

/// Everything one run needs. A single master seed governs the run; the
/// generator, coin, and growth streams are derived from it by label, so the
/// same seed is written into both sub-configs at finalize().
struct RunConfig {
  GeneratorConfig generator;
  EvolutionParams evolution;
  std::optional<GrowthConfig> growth;
  std::vector<OutputSpec> outputs;
  bool metrics_enabled = true;
  std::string input_path;        // load this graph instead of generating
  std::string trace_gexf_path;   // optional dynamic GEXF of the whole trace
  std::string metrics_json_path;
  std::uint64_t seed = 0;
  bool seed_set = false;

  bool n_set = false;
  std::optional<std::size_t> edges;
  std::optional<double> edge_prob;
  OutputFormat default_format = OutputFormat::Csv;

  void apply(const ConfigFile& file);
  void finalize();
};

namespace detail {

inline const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "generator.n",         "generator.edges",      "generator.edge_prob",
      "generator.factors",   "generator.score_mode", "generator.score_min",
      "generator.score_max", "evolution.mean",       "evolution.threshold",
      "evolution.p",         "evolution.policy",     "evolution.max_sweeps",
      "growth.pool",         "growth.attach_min",    "growth.attach_max",
      "growth.outer_steps",  "run.seed",             "run.input",
      "run.out",             "run.format",           "run.metrics",
      "run.trace_gexf",      "run.metrics_json",
  };
  return keys;
}

}  // namespace detail

inline void RunConfig::apply(const ConfigFile& file) {
  for (const auto& [key, entries] : file.all()) {
    const auto& known = detail::known_keys();
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(entries.front().line, "unknown key '" + key + "'");
  }

  if (const auto v = file.u64("generator.n")) {
    generator.n = *v;
    n_set = true;
  }
  if (const auto v = file.u64("generator.edges")) edges = *v;
  if (const auto v = file.f64("generator.edge_prob")) edge_prob = *v;
  if (const auto v = file.u64("generator.factors"))
    generator.attrs.factor_universe = static_cast<std::uint32_t>(*v);
  if (const auto v = file.value("generator.score_mode")) {
    if (*v == "cumulative")
      generator.attrs.score_mode.kind = ScoreModeKind::Cumulative;
    else if (*v == "per_factor")
      generator.attrs.score_mode.kind = ScoreModeKind::PerFactor;
    else
      throw ConfigError(file.line_of("generator.score_mode"),
                        "generator.score_mode wants cumulative/per_factor, "
                        "got '" + *v + "'");
  }
  if (const auto v = file.u64("generator.score_min"))
    generator.attrs.score_mode.range.lo = static_cast<std::uint32_t>(*v);
  if (const auto v = file.u64("generator.score_max"))
    generator.attrs.score_mode.range.hi = static_cast<std::uint32_t>(*v);

  if (const auto v = file.value("evolution.mean")) {
    const auto mean = mean_from_string(*v);
    if (!mean)
      throw ConfigError(file.line_of("evolution.mean"),
                        "evolution.mean wants arithmetic/geometric/harmonic, "
                        "got '" + *v + "'");
    evolution.mean = *mean;
  }
  if (const auto v = file.f64("evolution.threshold")) evolution.threshold = *v;
  if (const auto v = file.f64("evolution.p")) evolution.accept_prob = *v;
  if (const auto v = file.value("evolution.policy")) {
    if (*v == "retry") evolution.policy = RejectionPolicy::Retry;
    else if (*v == "permanent") evolution.policy = RejectionPolicy::Permanent;
    else
      throw ConfigError(file.line_of("evolution.policy"),
                        "evolution.policy wants retry/permanent, got '" + *v +
                            "'");
  }
  if (const auto v = file.u64("evolution.max_sweeps")) evolution.max_sweeps = *v;

  if (file.has_section("growth")) {
    GrowthConfig grown = growth.value_or(GrowthConfig{});
    if (const auto v = file.u64("growth.pool")) grown.pool_size = *v;
    if (const auto v = file.u64("growth.attach_min"))
      grown.attach_edges_per_node.lo = static_cast<std::uint32_t>(*v);
    if (const auto v = file.u64("growth.attach_max"))
      grown.attach_edges_per_node.hi = static_cast<std::uint32_t>(*v);
    if (const auto v = file.u64("growth.outer_steps")) grown.outer_steps = *v;
    growth = grown;
  }

  if (const auto v = file.u64("run.seed")) {
    seed = *v;
    seed_set = true;
  }
  if (const auto v = file.value("run.input")) input_path = *v;
  if (const auto v = file.value("run.format")) {
    const auto f = format_from_string(*v);
    if (!f)
      throw ConfigError(file.line_of("run.format"),
                        "run.format wants csv/gexf/dot, got '" + *v + "'");
    default_format = *f;
  }
  for (const std::string& path : file.values("run.out"))
    outputs.push_back({OutputFormat::Csv, path});  // format fixed in finalize
  if (const auto v = file.boolean("run.metrics")) metrics_enabled = *v;
  if (const auto v = file.value("run.trace_gexf")) trace_gexf_path = *v;
  if (const auto v = file.value("run.metrics_json")) metrics_json_path = *v;
}

inline void RunConfig::finalize() {
  generator.seed = seed;
  evolution.seed = seed;
  if (edge_prob) {
    generator.edge_model = EdgeModel::per_pair(*edge_prob);
  } else if (edges) {
    generator.edge_model = EdgeModel::uniform_count(*edges);
  } else {
    // Default density: m = 2n, capped by the number of pairs.
    generator.edge_model = EdgeModel::uniform_count(
        std::min(2 * generator.n, pair_count(generator.n)));
  }
  if (growth) growth->attr_source = generator.attrs;
  for (OutputSpec& spec : outputs)
    spec.format = format_for_path(spec.path, default_format);
}

}  // namespace evograph::config
