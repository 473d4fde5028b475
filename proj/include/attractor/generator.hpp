#pragma once
// Planted-partition benchmark graphs. Every node gets about avg_degree stubs,
// split per node into an inside and an outside share by the mixing fraction
// mu; stubs pair up by repeated shuffling with rejection of self-loops,
// duplicates, and (for the outside share) same-community pairs. Unmatchable
// leftovers are dropped, which keeps the realized edge count within a few
// percent of n*k/2. All randomness is hand-rolled on top of a fixed-width
// generator so identical seeds give identical graphs on any platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "attractor/graph.hpp"
#include "attractor/partition.hpp"

namespace attractor {

struct GeneratorConfig {
  std::uint32_t nodes = 0;
  double avg_degree = 0.0;
  std::uint32_t communities = 1;
  double mu = 0.0;       // fraction of each node's edges leaving its community
  std::uint64_t seed = 0;
};

struct PlantedNetwork {
  Graph graph;
  Partition truth;
};

namespace detail {

inline std::uint64_t pack_pair(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Unbiased draw from [0, n) by rejecting the wrap-around remainder.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

inline void shuffle_ids(std::vector<std::uint32_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

// Pairs adjacent stubs after a shuffle; invalid pairs go back into the pool
// for the next round. Bounded rounds, leftovers dropped by the caller.
template <class Valid>
void pair_stubs(std::vector<std::uint32_t>& stubs, std::mt19937_64& rng, Valid valid,
                std::unordered_set<std::uint64_t>& edge_keys,
                std::vector<EdgeRecord>& edges) {
  std::vector<std::uint32_t> leftover;
  for (int round = 0; round < 60 && stubs.size() >= 2; ++round) {
    shuffle_ids(stubs, rng);
    leftover.clear();
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      std::uint32_t u = stubs[i], v = stubs[i + 1];
      std::uint64_t key = pack_pair(u, v);
      if (u == v || !valid(u, v) || edge_keys.count(key)) {
        leftover.push_back(u);
        leftover.push_back(v);
        continue;
      }
      edge_keys.insert(key);
      edges.push_back({u < v ? u : v, u < v ? v : u, 1.0});
    }
    if (stubs.size() % 2 == 1) leftover.push_back(stubs.back());
    if (leftover.size() == stubs.size()) break;  // nothing pairable remains
    stubs.swap(leftover);
  }
}

}  // namespace detail

inline PlantedNetwork generate_planted(const GeneratorConfig& config) {
  if (config.nodes == 0) throw std::invalid_argument("node count must be positive");
  if (config.communities < 1 || config.communities > config.nodes)
    throw std::invalid_argument("community count must lie in [1, nodes]");
  if (!(config.mu >= 0.0 && config.mu < 1.0))
    throw std::invalid_argument("mixing fraction must lie in [0, 1)");
  if (!(config.avg_degree >= 0.0) || config.avg_degree >= config.nodes)
    throw std::invalid_argument("average degree must lie in [0, nodes)");

  std::uint32_t n = config.nodes, comms = config.communities;
  std::uint32_t base_size = n / comms;  // the last community absorbs the remainder
  auto community_of = [&](std::uint32_t u) {
    std::uint32_t c = u / base_size;
    return c < comms ? c : comms - 1;
  };

  std::int64_t k_in = std::llround((1.0 - config.mu) * config.avg_degree);
  std::int64_t k_out = std::llround(config.avg_degree) - k_in;
  if (k_out < 0) k_out = 0;
  if (k_in > static_cast<std::int64_t>(base_size) - 1)
    throw std::invalid_argument("community of " + std::to_string(base_size) +
                                " nodes cannot host " + std::to_string(k_in) +
                                " within-community edges per node");

  std::mt19937_64 rng(config.seed);
  std::unordered_set<std::uint64_t> edge_keys;
  std::vector<EdgeRecord> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k_in + k_out) / 2);

  std::vector<std::uint32_t> stubs;
  for (std::uint32_t c = 0; c < comms; ++c) {
    std::uint32_t lo = c * base_size;
    std::uint32_t hi = (c + 1 == comms) ? n : lo + base_size;
    stubs.clear();
    for (std::uint32_t u = lo; u < hi; ++u)
      for (std::int64_t s = 0; s < k_in; ++s) stubs.push_back(u);
    detail::pair_stubs(
        stubs, rng, [](std::uint32_t, std::uint32_t) { return true; }, edge_keys, edges);
  }
  if (k_out > 0 && comms > 1) {
    stubs.clear();
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::int64_t s = 0; s < k_out; ++s) stubs.push_back(u);
    detail::pair_stubs(
        stubs, rng,
        [&](std::uint32_t u, std::uint32_t v) { return community_of(u) != community_of(v); },
        edge_keys, edges);
  }

  PlantedNetwork out;
  out.graph = Graph::build(n, std::move(edges), false);
  out.truth.labels.resize(n);
  for (std::uint32_t u = 0; u < n; ++u) out.truth.labels[u] = community_of(u);
  out.truth.community_count = comms;
  out.truth.community_sizes.assign(comms, 0);
  for (std::uint32_t l : out.truth.labels) ++out.truth.community_sizes[l];
  out.truth.anomaly_flags.assign(n, 0);
  return out;
}

}  // namespace attractor
