#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evograph/engine.hpp"
#include "evograph/graph.hpp"

namespace evograph::io {

struct ParseError : std::runtime_error {
  std::size_t line;

  ParseError(std::size_t line_number, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_number) + ": " +
                           what),
        line(line_number) {}
};

/// Shortest decimal form that parses back to exactly the same double.
/// Integral values come out bare: 9.0 -> "9", 8.25 -> "8.25".
inline std::string format_score(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline std::string format_factors(const std::vector<FactorId>& factors) {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out.push_back(';');
    out += std::to_string(factors[i]);
  }
  return out;
}

/// Canonical CSV edge list: `u,v,score,factors` header, one row per edge with
/// u < v, rows ascending, factors ascending `;`-joined. A `#nodes=<n>` line
/// precedes the header only when the edge rows alone would undercount the
/// nodes (isolated trailing nodes or an edgeless nonempty graph).
inline std::string export_edge_list(const SocialGraph& g) {
  NodeId max_endpoint = 0;
  bool any = false;
  g.for_each_edge([&](NodeId, NodeId v, const EdgeAttr&) {
    any = true;
    if (v > max_endpoint) max_endpoint = v;
  });
  std::string out;
  const std::size_t implied = any ? max_endpoint + 1 : 0;
  if (g.node_count() > implied)
    out += "#nodes=" + std::to_string(g.node_count()) + "\n";
  out += "u,v,score,factors\n";
  g.for_each_edge([&](NodeId u, NodeId v, const EdgeAttr& attr) {
    out += std::to_string(u);
    out.push_back(',');
    out += std::to_string(v);
    out.push_back(',');
    out += format_score(attr.score);
    out.push_back(',');
    out += format_factors(attr.factors);
    out.push_back('\n');
  });
  return out;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
inline T parse_number(std::string_view token, std::size_t line,
                      const char* what) {
  T value{};
  const auto res =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw ParseError(line, std::string("bad ") + what + " '" +
                               std::string(token) + "'");
  return value;
}

}  // namespace detail

/// Inverse of export_edge_list. Node count is max id + 1 unless a `#nodes=`
/// line raises it. import(export(g)) == g for every well-formed graph.
inline SocialGraph import_edge_list(std::string_view text) {
  struct Row {
    std::size_t line;
    NodeId u, v;
    double score;
    std::vector<FactorId> factors;
  };
  std::vector<Row> rows;
  std::size_t explicit_nodes = 0;
  std::size_t max_id_plus_1 = 0;
  bool header_seen = false;

  std::size_t line_number = 0;
  for (std::string_view line : detail::split(text, '\n')) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kNodes = "#nodes=";
      if (line.substr(0, kNodes.size()) == kNodes)
        explicit_nodes = detail::parse_number<std::size_t>(
            line.substr(kNodes.size()), line_number, "node count");
      continue;  // other comment lines are ignored
    }
    if (!header_seen) {
      if (line != "u,v,score,factors")
        throw ParseError(line_number, "expected header 'u,v,score,factors'");
      header_seen = true;
      continue;
    }
    const auto fields = detail::split(line, ',');
    if (fields.size() != 4)
      throw ParseError(line_number, "expected 4 comma-separated fields");
    Row row;
    row.line = line_number;
    row.u = detail::parse_number<NodeId>(fields[0], line_number, "node id");
    row.v = detail::parse_number<NodeId>(fields[1], line_number, "node id");
    if (row.u == row.v)
      throw ParseError(line_number, "self-loop " + std::to_string(row.u));
    if (row.u > row.v)
      throw ParseError(line_number, "rows must satisfy u < v");
    row.score = detail::parse_number<double>(fields[2], line_number, "score");
    if (fields[3].empty())
      throw ParseError(line_number, "empty factor list");
    for (std::string_view token : detail::split(fields[3], ';'))
      row.factors.push_back(
          detail::parse_number<FactorId>(token, line_number, "factor"));
    if (row.v + 1 > max_id_plus_1) max_id_plus_1 = row.v + 1;
    rows.push_back(std::move(row));
  }
  if (!header_seen)
    throw ParseError(line_number, "missing header 'u,v,score,factors'");
  if (explicit_nodes > 0 && explicit_nodes < max_id_plus_1)
    throw ParseError(1, "#nodes is smaller than the largest node id + 1");

  SocialGraph g(std::max(explicit_nodes, max_id_plus_1));
  for (Row& row : rows) {
    if (g.has_edge(row.u, row.v))
      throw ParseError(row.line, "duplicate edge " + std::to_string(row.u) +
                                     "," + std::to_string(row.v));
    try {
      g.add_edge(row.u, row.v, EdgeAttr{std::move(row.factors), row.score});
    } catch (const std::invalid_argument& e) {
      throw ParseError(row.line, e.what());
    }
  }
  return g;
}

namespace detail {

inline void gexf_open(std::string& out, bool dynamic) {
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
  out += dynamic ? "  <graph mode=\"dynamic\" defaultedgetype=\"undirected\" "
                   "timeformat=\"integer\">\n"
                 : "  <graph mode=\"static\" "
                   "defaultedgetype=\"undirected\">\n";
  out +=
      "    <attributes class=\"edge\">\n"
      "      <attribute id=\"0\" title=\"score\" type=\"double\"/>\n"
      "      <attribute id=\"1\" title=\"factors\" type=\"string\"/>\n"
      "    </attributes>\n";
}

inline void gexf_edge(std::string& out, std::size_t id, NodeId u, NodeId v,
                      const EdgeAttr& attr, long start) {
  out += "      <edge id=\"" + std::to_string(id) + "\" source=\"" +
         std::to_string(u) + "\" target=\"" + std::to_string(v) + "\"";
  if (start >= 0) out += " start=\"" + std::to_string(start) + "\"";
  out += ">\n";
  out += "        <attvalues>\n";
  out += "          <attvalue for=\"0\" value=\"" + format_score(attr.score) +
         "\"/>\n";
  out += "          <attvalue for=\"1\" value=\"" +
         format_factors(attr.factors) + "\"/>\n";
  out += "        </attvalues>\n";
  out += "      </edge>\n";
}

inline void gexf_close(std::string& out) {
  out += "    </edges>\n  </graph>\n</gexf>\n";
}

}  // namespace detail

/// Static GEXF 1.2 of one graph, Gephi-compatible; edges carry score and the
/// factor list.
inline std::string export_gexf(const SocialGraph& g) {
  std::string out;
  detail::gexf_open(out, false);
  out += "    <nodes>\n";
  for (NodeId u = 0; u < g.node_count(); ++u)
    out += "      <node id=\"" + std::to_string(u) + "\" label=\"" +
           std::to_string(u) + "\"/>\n";
  out += "    </nodes>\n    <edges>\n";
  std::size_t id = 0;
  g.for_each_edge([&](NodeId u, NodeId v, const EdgeAttr& attr) {
    detail::gexf_edge(out, id++, u, v, attr, -1);
  });
  detail::gexf_close(out);
  return out;
}

/// Dynamic GEXF 1.2 of a whole trace. Every node and edge carries
/// start = index of the first snapshot containing it (0 for the initial
/// graph), so Gephi's timeline replays the evolution.
inline std::string export_gexf(const EvolutionTrace& trace) {
  const SocialGraph& last = trace.final_graph();
  std::vector<std::size_t> node_start(last.node_count(), 0);
  for (NodeId u = 0; u < last.node_count(); ++u)
    for (std::size_t j = 0; j < trace.snapshots.size(); ++j)
      if (u < trace.snapshots[j].node_count()) {
        node_start[u] = j;
        break;
      }
  std::string out;
  detail::gexf_open(out, true);
  out += "    <nodes>\n";
  for (NodeId u = 0; u < last.node_count(); ++u) {
    out += "      <node id=\"" + std::to_string(u) + "\" label=\"" +
           std::to_string(u) + "\"";
    if (node_start[u] > 0)
      out += " start=\"" + std::to_string(node_start[u]) + "\"";
    out += "/>\n";
  }
  out += "    </nodes>\n    <edges>\n";
  std::size_t id = 0;
  last.for_each_edge([&](NodeId u, NodeId v, const EdgeAttr& attr) {
    std::size_t start = 0;
    for (std::size_t j = 0; j < trace.snapshots.size(); ++j) {
      const SocialGraph& snap = trace.snapshots[j];
      if (u < snap.node_count() && v < snap.node_count() &&
          snap.has_edge(u, v)) {
        start = j;
        break;
      }
    }
    detail::gexf_edge(out, id++, u, v, attr, static_cast<long>(start));
  });
  detail::gexf_close(out);
  return out;
}

/// Undirected DOT: one statement per isolated node, then one per edge with
/// the score as label, all in ascending order.
inline std::string export_dot(const SocialGraph& g) {
  std::string out = "graph {\n";
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (g.degree(u) == 0) out += "  " + std::to_string(u) + ";\n";
  g.for_each_edge([&](NodeId u, NodeId v, const EdgeAttr& attr) {
    out += "  " + std::to_string(u) + " -- " + std::to_string(v) +
           " [label=\"" + format_score(attr.score) + "\"];\n";
  });
  out += "}\n";
  return out;
}

}  // namespace evograph::io
