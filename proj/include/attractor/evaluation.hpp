#pragma once
// Partition quality measures. External ones (nmi, ari, purity) compare a
// prediction against ground truth over the same node universe; internal ones
// (modularity, cut) need only the graph. All are pure and relabel-invariant.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "attractor/graph.hpp"
#include "attractor/partition.hpp"

namespace attractor {

namespace detail {

inline void require_same_universe(const Partition& a, const Partition& b) {
  if (a.labels.size() != b.labels.size())
    throw std::invalid_argument("partitions cover different node universes");
  if (a.labels.empty()) throw std::invalid_argument("empty partitions cannot be compared");
}

// Joint label counts keyed (pred << 32 | truth), plus marginals.
struct Contingency {
  std::unordered_map<std::uint64_t, std::uint64_t> cells;
  std::vector<std::uint64_t> pred_sizes, truth_sizes;
  std::uint64_t n = 0;

  Contingency(const Partition& pred, const Partition& truth) {
    n = pred.labels.size();
    pred_sizes.assign(pred.community_count, 0);
    truth_sizes.assign(truth.community_count, 0);
    cells.reserve(pred.community_count + truth.community_count);
    for (std::size_t i = 0; i < pred.labels.size(); ++i) {
      std::uint64_t key =
          (static_cast<std::uint64_t>(pred.labels[i]) << 32) | truth.labels[i];
      ++cells[key];
      ++pred_sizes[pred.labels[i]];
      ++truth_sizes[truth.labels[i]];
    }
  }
};

// True when the two labelings induce the same grouping.
inline bool same_grouping(const Partition& a, const Partition& b) {
  if (a.community_count != b.community_count) return false;
  std::vector<std::uint32_t> fwd(a.community_count, static_cast<std::uint32_t>(-1));
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    std::uint32_t& slot = fwd[a.labels[i]];
    if (slot == static_cast<std::uint32_t>(-1)) slot = b.labels[i];
    else if (slot != b.labels[i]) return false;
  }
  return true;  // equal counts + consistent forward map imply a bijection
}

inline double entropy(const std::vector<std::uint64_t>& sizes, double n) {
  double h = 0.0;
  for (std::uint64_t c : sizes)
    if (c > 0) h -= (c / n) * std::log(c / n);
  return h;
}

inline double comb2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace detail

// Mutual information against the mean of both entropies. Identical groupings
// score exactly 1; a zero-entropy side that still differs scores 0.
inline double nmi(const Partition& pred, const Partition& truth) {
  detail::require_same_universe(pred, truth);
  if (detail::same_grouping(pred, truth)) return 1.0;
  detail::Contingency table(pred, truth);
  double n = static_cast<double>(table.n);
  double hp = detail::entropy(table.pred_sizes, n);
  double ht = detail::entropy(table.truth_sizes, n);
  if (hp == 0.0 || ht == 0.0) return 0.0;
  double mi = 0.0;
  for (const auto& [key, count] : table.cells) {
    double pij = count / n;
    double pi = table.pred_sizes[key >> 32] / n;
    double pj = table.truth_sizes[key & 0xffffffffu] / n;
    mi += pij * std::log(pij / (pi * pj));
  }
  return 2.0 * mi / (hp + ht);
}

// Pair-counting agreement, rescaled so random labelings sit at 0.
inline double ari(const Partition& pred, const Partition& truth) {
  detail::require_same_universe(pred, truth);
  if (detail::same_grouping(pred, truth)) return 1.0;
  detail::Contingency table(pred, truth);
  double index = 0.0;
  for (const auto& [key, count] : table.cells) index += detail::comb2(static_cast<double>(count));
  double sum_pred = 0.0, sum_truth = 0.0;
  for (std::uint64_t c : table.pred_sizes) sum_pred += detail::comb2(static_cast<double>(c));
  for (std::uint64_t c : table.truth_sizes) sum_truth += detail::comb2(static_cast<double>(c));
  double total = detail::comb2(static_cast<double>(table.n));
  double expected = sum_pred * sum_truth / total;
  double maximum = (sum_pred + sum_truth) / 2.0;
  if (maximum == expected) return 0.0;
  return (index - expected) / (maximum - expected);
}

// Fraction of nodes covered by each predicted community's best truth class.
inline double purity(const Partition& pred, const Partition& truth) {
  detail::require_same_universe(pred, truth);
  detail::Contingency table(pred, truth);
  std::vector<std::uint64_t> best(pred.community_count, 0);
  for (const auto& [key, count] : table.cells) {
    std::uint64_t& slot = best[key >> 32];
    if (count > slot) slot = count;
  }
  std::uint64_t hit = 0;
  for (std::uint64_t b : best) hit += b;
  return static_cast<double>(hit) / static_cast<double>(table.n);
}

// Within-community edge fraction minus the squared share of incident weight,
// summed over communities.
inline double modularity(const Graph& g, const Partition& partition) {
  if (partition.labels.size() != g.node_count())
    throw std::invalid_argument("partition does not cover the graph");
  if (g.edge_count() == 0) return 0.0;
  std::vector<double> inside(partition.community_count, 0.0);
  std::vector<double> volume(partition.community_count, 0.0);
  double total = 0.0;
  for (const auto& e : g.edges()) {
    total += e.w;
    std::uint32_t lu = partition.labels[e.u], lv = partition.labels[e.v];
    if (lu == lv) inside[lu] += e.w;
    volume[lu] += e.w;
    volume[lv] += e.w;
  }
  double q = 0.0;
  for (std::uint32_t c = 0; c < partition.community_count; ++c) {
    double a_c = volume[c] / (2.0 * total);
    q += inside[c] / total - a_c * a_c;
  }
  return q;
}

struct CutMeasures {
  double raw_cut = 0.0;         // total weight crossing communities
  double normalized_cut = 0.0;  // sum over communities of crossing / volume
};

inline CutMeasures cut_measures(const Graph& g, const Partition& partition) {
  if (partition.labels.size() != g.node_count())
    throw std::invalid_argument("partition does not cover the graph");
  std::vector<double> crossing(partition.community_count, 0.0);
  std::vector<double> volume(partition.community_count, 0.0);
  CutMeasures out;
  for (const auto& e : g.edges()) {
    std::uint32_t lu = partition.labels[e.u], lv = partition.labels[e.v];
    volume[lu] += e.w;
    volume[lv] += e.w;
    if (lu != lv) {
      out.raw_cut += e.w;
      crossing[lu] += e.w;
      crossing[lv] += e.w;
    }
  }
  for (std::uint32_t c = 0; c < partition.community_count; ++c)
    if (volume[c] > 0.0) out.normalized_cut += crossing[c] / volume[c];
  return out;
}

}  // namespace attractor
