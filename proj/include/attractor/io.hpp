#pragma once
// Wire formats. Edge lists: one "u v" or "u v w" per line, whitespace
// separated, '#' lines ignored, node tokens arbitrary strings mapped to dense
// ids in order of first appearance. Partition files: "label<TAB>community"
// per node, community tokens again arbitrary strings. Writers round-trip:
// what they emit, the loaders parse back to an equivalent object.

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "attractor/graph.hpp"
#include "attractor/partition.hpp"

namespace attractor {

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '#';
  }
  return true;
}

inline std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

inline Graph load_edge_list(std::istream& in, bool weighted = false) {
  std::vector<EdgeRecord> edges;
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> ids;
  auto intern = [&](const std::string& token) {
    auto [it, fresh] = ids.emplace(token, static_cast<NodeId>(labels.size()));
    if (fresh) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::comment_or_blank(line)) continue;
    auto tok = detail::tokens_of(line);
    if (tok.size() != 2 && tok.size() != 3)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'u v' or 'u v w', got " + std::to_string(tok.size()) +
                       " tokens");
    // a third token on an unweighted load is ignored; weights pin to 1
    double w = 1.0;
    if (tok.size() == 3 && weighted) {
      try {
        std::size_t used = 0;
        w = std::stod(tok[2], &used);
        if (used != tok[2].size()) throw std::invalid_argument(tok[2]);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad weight '" + tok[2] + "'");
      }
      if (!(w > 0.0))
        throw ParseError("line " + std::to_string(line_no) + ": weight must be positive");
    }
    edges.push_back({intern(tok[0]), intern(tok[1]), w});
  }
  if (labels.empty()) throw ParseError("empty input: no edges or nodes found");
  NodeId node_count = static_cast<NodeId>(labels.size());  // before the moves below
  return Graph::build(node_count, std::move(edges), weighted, std::move(labels));
}

inline Graph load_edge_list_file(const std::string& path, bool weighted = false) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return load_edge_list(in, weighted);
  } catch (const ParseError& err) {
    throw ParseError(path + ": " + err.what());
  }
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& e : g.edges()) {
    out << g.label(e.u) << '\t' << g.label(e.v);
    if (g.weighted()) out << '\t' << e.w;
    out << '\n';
  }
}

inline void write_partition(std::ostream& out, const Graph& g, const Partition& p) {
  for (NodeId u = 0; u < g.node_count(); ++u)
    out << g.label(u) << '\t' << p.labels[u] << '\n';
}

inline void write_anomalies(std::ostream& out, const Graph& g, const Partition& p) {
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (p.anomaly_flags[u]) out << g.label(u) << '\n';
}

// Reads a labeled partition back over a known graph. Every graph node must
// appear exactly once; unknown or missing labels are reported by name.
inline Partition load_partition(std::istream& in, const Graph& g) {
  Partition p;
  p.labels.assign(g.node_count(), 0);
  std::vector<char> seen(g.node_count(), 0);
  std::unordered_map<std::string, std::uint32_t> community_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::comment_or_blank(line)) continue;
    auto tok = detail::tokens_of(line);
    if (tok.size() != 2)
      throw ParseError("line " + std::to_string(line_no) + ": expected 'node community'");
    auto node = g.label_ids().find(tok[0]);
    if (node == g.label_ids().end())
      throw ParseError("line " + std::to_string(line_no) + ": unknown node label '" + tok[0] +
                       "'");
    if (seen[node->second])
      throw ParseError("line " + std::to_string(line_no) + ": node '" + tok[0] +
                       "' listed twice");
    seen[node->second] = 1;
    auto it = community_ids.emplace(tok[1], static_cast<std::uint32_t>(community_ids.size()))
                  .first;
    p.labels[node->second] = it->second;
  }
  std::string missing;
  std::size_t missing_count = 0;
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (!seen[u]) {
      ++missing_count;
      if (missing.size() < 80) missing += (missing.empty() ? "" : ", ") + g.label(u);
    }
  if (missing_count)
    throw ParseError("partition misses " + std::to_string(missing_count) +
                     " node(s): " + missing);
  p.community_count = static_cast<std::uint32_t>(community_ids.size());
  p.community_sizes.assign(p.community_count, 0);
  for (std::uint32_t l : p.labels) ++p.community_sizes[l];
  p.anomaly_flags.assign(g.node_count(), 0);
  return p;
}

inline Partition load_partition_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return load_partition(in, g);
  } catch (const ParseError& err) {
    throw ParseError(path + ": " + err.what());
  }
}

}  // namespace attractor
