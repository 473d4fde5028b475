#pragma once
// Jaccard distances over closed neighborhoods (the node plus its adjacents).
// The unweighted form is the plain overlap ratio; the weighted form rates the
// weight touching the shared neighborhood against the total weight inside the
// combined neighborhood and can overshoot 1, so it clamps. The two forms do
// not coincide on unit weights, hence the explicit dispatch on weightedness.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "attractor/graph.hpp"

namespace attractor {

namespace detail {

struct NeighborhoodOverlap {
  std::uint32_t shared_open = 0;  // |N(u) n N(v)|, endpoints excluded by construction
  bool adjacent = false;
  double shared_weight = 0.0;  // sum of w(x,u)+w(x,v) over shared open neighbors, ascending x
  double edge_weight = 0.0;
};

// Like overlap below, but walks the id-only adjacency arrays and touches no
// edge records. The unweighted distance needs only counts, and trimming the
// bytes per merge matters when millions of pairs are initialized.
inline NeighborhoodOverlap count_overlap(const Graph& g, NodeId u, NodeId v) {
  NeighborhoodOverlap out;
  auto a = g.adjacent_ids(u), b = g.adjacent_ids(v);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    NodeId x = a[i], y = b[j];
    if (x == y) {
      ++out.shared_open;
      ++i;
      ++j;
    } else if (x < y) {
      if (x == v) out.adjacent = true;
      ++i;
    } else {
      if (y == u) out.adjacent = true;
      ++j;
    }
  }
  for (; i < a.size(); ++i)
    if (a[i] == v) out.adjacent = true;
  for (; j < b.size(); ++j)
    if (b[j] == u) out.adjacent = true;
  return out;
}

// Single sorted-merge pass over both adjacency lists.
inline NeighborhoodOverlap overlap(const Graph& g, NodeId u, NodeId v) {
  NeighborhoodOverlap out;
  auto a = g.neighbors(u), b = g.neighbors(v);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    NodeId x = a[i].node, y = b[j].node;
    if (x == y) {
      ++out.shared_open;
      out.shared_weight += g.edge(a[i].edge).w + g.edge(b[j].edge).w;
      ++i;
      ++j;
    } else if (x < y) {
      if (x == v) {
        out.adjacent = true;
        out.edge_weight = g.edge(a[i].edge).w;
      }
      ++i;
    } else {
      if (y == u) {
        out.adjacent = true;
        out.edge_weight = g.edge(b[j].edge).w;
      }
      ++j;
    }
  }
  for (; i < a.size(); ++i)
    if (a[i].node == v) {
      out.adjacent = true;
      out.edge_weight = g.edge(a[i].edge).w;
    }
  for (; j < b.size(); ++j)
    if (b[j].node == u) {
      out.adjacent = true;
      out.edge_weight = g.edge(b[j].edge).w;
    }
  return out;
}

// Sorted union of both closed neighborhoods.
inline std::vector<NodeId> closed_union(const Graph& g, NodeId u, NodeId v) {
  auto a = g.neighbors(u), b = g.neighbors(v);
  std::vector<NodeId> out;
  out.reserve(a.size() + b.size() + 2);
  constexpr NodeId sentinel = std::numeric_limits<NodeId>::max();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    NodeId x = i < a.size() ? a[i].node : sentinel;
    NodeId y = j < b.size() ? b[j].node : sentinel;
    if (x == y) {
      out.push_back(x);
      ++i;
      ++j;
    } else if (x < y) {
      out.push_back(x);
      ++i;
    } else {
      out.push_back(y);
      ++j;
    }
  }
  for (NodeId self : {u, v}) {
    auto it = std::lower_bound(out.begin(), out.end(), self);
    if (it == out.end() || *it != self) out.insert(it, self);
  }
  return out;
}

}  // namespace detail

inline double jaccard_unweighted(const Graph& g, NodeId u, NodeId v) {
  if (u == v) throw std::invalid_argument("jaccard distance needs two distinct nodes");
  auto ov = detail::count_overlap(g, u, v);
  // closed sets add the nodes themselves: the endpoints join the intersection
  // exactly when the pair is linked.
  double inter = ov.shared_open + (ov.adjacent ? 2.0 : 0.0);
  double uni = (g.degree(u) + 1.0) + (g.degree(v) + 1.0) - inter;
  return 1.0 - inter / uni;
}

inline double jaccard_weighted(const Graph& g, NodeId u, NodeId v) {
  if (u == v) throw std::invalid_argument("jaccard distance needs two distinct nodes");
  auto ov = detail::overlap(g, u, v);
  // Self weights count as zero, so a linked pair contributes its edge weight
  // once from each endpoint's side of the intersection.
  double num = ov.shared_weight + (ov.adjacent ? 2.0 * ov.edge_weight : 0.0);
  auto members = detail::closed_union(g, u, v);
  double den = 0.0;
  for (NodeId x : members)
    for (const auto& nb : g.neighbors(x)) {
      if (nb.node <= x) continue;
      if (std::binary_search(members.begin(), members.end(), nb.node)) den += g.edge(nb.edge).w;
    }
  if (den == 0.0) throw std::domain_error("no edges inside the combined neighborhood");
  return std::clamp(1.0 - num / den, 0.0, 1.0);
}

inline double jaccard_distance(const Graph& g, NodeId u, NodeId v) {
  return g.weighted() ? jaccard_weighted(g, u, v) : jaccard_unweighted(g, u, v);
}

}  // namespace attractor
