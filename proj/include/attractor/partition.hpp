#pragma once
// From converged distances to communities: drop every edge whose distance
// settled at exactly 1, read off connected components, and flag components
// below the size threshold as anomalies. Labels are assigned by smallest
// contained node id so identical inputs always print identically.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "attractor/graph.hpp"
#include "attractor/state.hpp"

namespace attractor {

struct Partition {
  std::vector<std::uint32_t> labels;           // per node, dense 0..community_count-1
  std::uint32_t community_count = 0;
  std::vector<char> anomaly_flags;             // per node
  std::vector<std::uint32_t> community_sizes;  // per label
};

namespace detail {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;  // roots stay the smallest member, labels follow node order
  }

private:
  std::vector<std::uint32_t> parent_;
};

inline Partition components_from_mask(const Graph& g, const std::vector<char>& excluded) {
  UnionFind uf(g.node_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (excluded[e]) continue;
    const auto& rec = g.edge(e);
    uf.unite(rec.u, rec.v);
  }
  Partition p;
  p.labels.assign(g.node_count(), 0);
  std::vector<std::uint32_t> root_label(g.node_count(), static_cast<std::uint32_t>(-1));
  std::uint32_t next = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    std::uint32_t r = uf.find(u);
    if (root_label[r] == static_cast<std::uint32_t>(-1)) root_label[r] = next++;
    p.labels[u] = root_label[r];
  }
  p.community_count = next;
  p.community_sizes.assign(next, 0);
  for (std::uint32_t l : p.labels) ++p.community_sizes[l];
  p.anomaly_flags.assign(g.node_count(), 0);
  return p;
}

}  // namespace detail

inline Partition connected_components(const Graph& g, std::span<const EdgeId> excluded_edges) {
  std::vector<char> mask(g.edge_count(), 0);
  for (EdgeId e : excluded_edges) {
    if (e >= g.edge_count()) throw std::out_of_range("excluded edge id out of range");
    mask[e] = 1;
  }
  return detail::components_from_mask(g, mask);
}

// Only a distance of exactly 1 separates; edges still strictly inside (0,1)
// after a capped run keep their endpoints together.
inline Partition extract_communities(const Graph& g, const DistanceState& final_state) {
  std::vector<char> mask(g.edge_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (final_state.edge_distance(e) == 1.0) mask[e] = 1;
  return detail::components_from_mask(g, mask);
}

inline Partition flag_anomalies(Partition p, std::uint32_t min_size = 2) {
  if (min_size < 1) throw std::invalid_argument("min_size must be at least 1");
  for (std::size_t u = 0; u < p.labels.size(); ++u)
    p.anomaly_flags[u] = p.community_sizes[p.labels[u]] < min_size ? 1 : 0;
  return p;
}

// A node's degree against the summed degree of its neighbors; isolated nodes
// have no meaningful value here.
inline double local_noise_level(const Graph& g, NodeId u) {
  if (g.degree(u) == 0) throw std::domain_error("local noise level needs a neighbor");
  double neighbor_total = 0.0;
  for (const auto& nb : g.neighbors(u)) neighbor_total += g.degree(nb.node);
  return g.degree(u) / neighbor_total;
}

}  // namespace attractor
