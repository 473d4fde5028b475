#pragma once
// Evolving per-edge distances plus a frozen side table of distances for
// (exclusive neighbor, opposite endpoint) pairs. Those pairs are never linked,
// the exclusive-neighbor influence only reads them, and they keep their
// initial value for the whole run.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "attractor/graph.hpp"
#include "attractor/jaccard.hpp"
#include "attractor/memory.hpp"
#include "attractor/parallel.hpp"

namespace attractor {

struct VirtualPair {
  NodeId x;
  NodeId v;
};

class DistanceState {
public:
  double edge_distance(EdgeId e) const { return edge_d_.at(e); }
  void set_edge_distance(EdgeId e, double d) { edge_d_.at(e) = d; }

  std::uint32_t time_step() const { return time_step_; }
  void advance_time() { ++time_step_; }

  std::size_t virtual_pair_count() const { return virt_keys_.size(); }

  static std::uint64_t pair_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  static constexpr std::size_t no_virtual = static_cast<std::size_t>(-1);

  std::size_t virtual_index(NodeId a, NodeId b) const {
    std::uint64_t key = pair_key(a, b);
    auto it = std::lower_bound(virt_keys_.begin(), virt_keys_.end(), key);
    if (it == virt_keys_.end() || *it != key) return no_virtual;
    return static_cast<std::size_t>(it - virt_keys_.begin());
  }

  double virtual_value(std::size_t index) const { return virt_values_.at(index); }

  double virtual_distance(NodeId a, NodeId b) const {
    std::size_t idx = virtual_index(a, b);
    if (idx == no_virtual)
      throw std::logic_error("no stored distance for the requested unlinked pair");
    return virt_values_[idx];
  }

  // Distance of any pair the dynamics may consult: a live edge distance when
  // the pair is linked, the frozen initial distance otherwise.
  double pair_distance(const Graph& g, NodeId a, NodeId b) const {
    EdgeId e = g.find_edge(a, b);
    if (e != invalid_edge) return edge_d_[e];
    return virtual_distance(a, b);
  }

  const std::vector<double>& edge_distances() const { return edge_d_; }
  std::vector<double>& mutable_edge_distances() { return edge_d_; }
  const std::vector<double>& virtual_values() const { return virt_values_; }
  const std::vector<std::uint64_t>& virtual_keys() const { return virt_keys_; }

private:
  std::vector<double> edge_d_;
  std::vector<std::uint64_t> virt_keys_;  // ascending (min<<32)|max
  std::vector<double> virt_values_;
  std::uint32_t time_step_ = 0;

  friend DistanceState init_distances(const Graph& g);
};

// Initial state: every edge gets its Jaccard distance, and every unlinked
// (exclusive neighbor, opposite endpoint) pair reachable from some edge gets
// one too. Deterministic and parallel per pair.
inline DistanceState init_distances(const Graph& g) {
  // Prefetching a few items ahead hides the latency of the second endpoint's
  // adjacency row, which is the one random access in each distance.
  constexpr std::size_t ahead = 8;
  DistanceState s;
  s.edge_d_.resize(g.edge_count());
  parallel_chunks(g.edge_count(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e) {
      if (e + ahead < end)
        detail::prefetch_read(g.adjacent_ids(g.edge(static_cast<EdgeId>(e + ahead)).v).data());
      const auto& rec = g.edge(static_cast<EdgeId>(e));
      s.edge_d_[e] = jaccard_distance(g, rec.u, rec.v);
    }
  });

  // An exclusive neighbor of some edge and the opposite endpoint are exactly
  // a node pair at distance two, so the pairs come from each node's two-hop
  // reach. The stamp array rules out adjacents and repeats in one check, and
  // emitting only x > v yields every pair once, keeping the sort small.
  std::vector<std::uint64_t> keys;
  std::vector<std::uint32_t> stamp(g.node_count(), 0);
  std::uint32_t tick = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (++tick == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      tick = 1;
    }
    stamp[v] = tick;
    auto nbrs = g.adjacent_ids(v);
    for (NodeId w : nbrs) stamp[w] = tick;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (i + 1 < nbrs.size()) detail::prefetch_read(g.adjacent_ids(nbrs[i + 1]).data());
      for (NodeId x : g.adjacent_ids(nbrs[i]))
        if (x > v && stamp[x] != tick) {
          stamp[x] = tick;
          keys.push_back(DistanceState::pair_key(x, v));
        }
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.shrink_to_fit();

  s.virt_keys_ = std::move(keys);
  s.virt_values_.resize(s.virt_keys_.size());
  parallel_chunks(s.virt_keys_.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (i + ahead < end)
        detail::prefetch_read(
            g.adjacent_ids(static_cast<NodeId>(s.virt_keys_[i + ahead] & 0xffffffffu)).data());
      NodeId a = static_cast<NodeId>(s.virt_keys_[i] >> 32);
      NodeId b = static_cast<NodeId>(s.virt_keys_[i] & 0xffffffffu);
      s.virt_values_[i] = jaccard_distance(g, a, b);
    }
  });
  return s;
}

}  // namespace attractor
