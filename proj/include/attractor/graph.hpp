#pragma once
// Immutable undirected graph with dense node ids, merged duplicate edges, and
// per-node adjacency sorted by neighbor id. Everything downstream (distance
// init, the dynamics sweep, component extraction) leans on that sort order
// for deterministic merges, so it is an invariant here, not a convenience.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "attractor/memory.hpp"

namespace attractor {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr EdgeId invalid_edge = std::numeric_limits<EdgeId>::max();

struct EdgeRecord {
  NodeId u = 0;  // stored with u < v
  NodeId v = 0;
  double w = 1.0;
};

struct Neighbor {
  NodeId node;
  EdgeId edge;
};

class Graph {
public:
  Graph() = default;

  // Raw endpoint pairs in, canonical graph out. Self-loops are dropped (and
  // counted), parallel edges collapse into one; weights merge by summation on
  // weighted graphs and pin to 1 on unweighted ones. Labels default to the
  // decimal node id when none are supplied.
  static Graph build(NodeId node_count, std::vector<EdgeRecord> raw, bool weighted,
                     std::vector<std::string> labels = {}) {
    Graph g;
    g.node_count_ = node_count;
    g.weighted_ = weighted;

    for (auto& e : raw) {
      if (e.u >= node_count || e.v >= node_count)
        throw std::out_of_range("edge endpoint beyond node count");
      if (!(e.w > 0.0)) throw std::invalid_argument("edge weights must be positive");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::erase_if(raw, [&](const EdgeRecord& e) {
      if (e.u == e.v) {
        ++g.self_loops_dropped_;
        return true;
      }
      return false;
    });
    std::sort(raw.begin(), raw.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (const auto& e : raw) {
      if (!g.edges_.empty() && g.edges_.back().u == e.u && g.edges_.back().v == e.v) {
        if (weighted) g.edges_.back().w += e.w;
      } else {
        g.edges_.push_back({e.u, e.v, weighted ? e.w : 1.0});
      }
    }

    g.offsets_.assign(node_count + 1, 0);
    for (const auto& e : g.edges_) {
      ++g.offsets_[e.u + 1];
      ++g.offsets_[e.v + 1];
    }
    for (NodeId u = 0; u < node_count; ++u) g.offsets_[u + 1] += g.offsets_[u];
    g.entries_.resize(g.offsets_[node_count]);
    std::vector<std::uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto& rec = g.edges_[e];
      g.entries_[cursor[rec.u]++] = {rec.v, e};
      g.entries_[cursor[rec.v]++] = {rec.u, e};
    }
    for (NodeId u = 0; u < node_count; ++u)
      std::sort(g.entries_.begin() + g.offsets_[u], g.entries_.begin() + g.offsets_[u + 1],
                [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    g.nbr_nodes_.resize(g.entries_.size());
    for (std::size_t i = 0; i < g.entries_.size(); ++i) g.nbr_nodes_[i] = g.entries_[i].node;

    if (labels.empty()) {
      labels.reserve(node_count);
      for (NodeId u = 0; u < node_count; ++u) labels.push_back(std::to_string(u));
    }
    if (labels.size() != node_count)
      throw std::invalid_argument("label count does not match node count");
    g.labels_ = std::move(labels);
    for (NodeId u = 0; u < node_count; ++u)
      if (!g.label_ids_.emplace(g.labels_[u], u).second)
        throw std::invalid_argument("duplicate node label: " + g.labels_[u]);
    return g;
  }

  NodeId node_count() const { return node_count_; }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
  bool weighted() const { return weighted_; }
  std::size_t self_loops_dropped() const { return self_loops_dropped_; }

  const EdgeRecord& edge(EdgeId e) const {
    if (e >= edges_.size()) throw std::out_of_range("edge id out of range");
    return edges_[e];
  }
  std::span<const EdgeRecord> edges() const { return {edges_.data(), edges_.size()}; }

  // Number of adjacent nodes; the node itself does not count.
  NodeId degree(NodeId u) const {
    check_node(u);
    return offsets_[u + 1] - offsets_[u];
  }

  std::span<const Neighbor> neighbors(NodeId u) const {
    check_node(u);
    return {entries_.data() + offsets_[u], entries_.data() + offsets_[u + 1]};
  }

  // Same order as neighbors(u) with the edge ids stripped. Merge-heavy code
  // walks these to halve its memory traffic.
  std::span<const NodeId> adjacent_ids(NodeId u) const {
    check_node(u);
    return {nbr_nodes_.data() + offsets_[u], nbr_nodes_.data() + offsets_[u + 1]};
  }

  // The node plus its adjacent nodes, ascending.
  std::vector<NodeId> closed_neighborhood(NodeId u) const {
    check_node(u);
    std::vector<NodeId> out;
    out.reserve(degree(u) + 1);
    bool placed = false;
    for (const auto& nb : neighbors(u)) {
      if (!placed && u < nb.node) {
        out.push_back(u);
        placed = true;
      }
      out.push_back(nb.node);
    }
    if (!placed) out.push_back(u);
    return out;
  }

  EdgeId find_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    if (degree(u) > degree(v)) std::swap(u, v);
    auto span = neighbors(u);
    auto it = std::lower_bound(span.begin(), span.end(), v,
                               [](const Neighbor& a, NodeId b) { return a.node < b; });
    return (it != span.end() && it->node == v) ? it->edge : invalid_edge;
  }

  const std::string& label(NodeId u) const {
    check_node(u);
    return labels_[u];
  }
  const std::unordered_map<std::string, NodeId>& label_ids() const { return label_ids_; }

private:
  void check_node(NodeId u) const {
    if (u >= node_count_) throw std::out_of_range("node id out of range");
  }

  NodeId node_count_ = 0;
  bool weighted_ = false;
  std::size_t self_loops_dropped_ = 0;
  detail::raw_vector<EdgeRecord> edges_;
  detail::raw_vector<std::uint32_t> offsets_;
  detail::raw_vector<Neighbor> entries_;
  detail::raw_vector<NodeId> nbr_nodes_;  // entries_ node ids only, same offsets
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> label_ids_;
};

}  // namespace attractor
