#pragma once
// Definition-literal reference used to cross-check the production engine.
// Everything here favors obvious set algebra over speed and shares no code
// with the headers under include/. Keep it dumb; its value is independence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace refcheck {

inline std::pair<int, int> ordered(int a, int b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

struct RefGraph {
  int n = 0;
  bool weighted = false;
  std::map<std::pair<int, int>, double> weight;  // key (min,max), undirected

  void add_edge(int u, int v, double w = 1.0) {
    if (u == v) return;
    auto key = ordered(u, v);
    if (weighted) weight[key] += w;  // map default-inserts 0.0, so this merges
    else weight[key] = 1.0;
  }
  bool has_edge(int u, int v) const { return weight.count(ordered(u, v)) > 0; }
  double w(int u, int v) const {
    auto it = weight.find(ordered(u, v));
    return it == weight.end() ? 0.0 : it->second;
  }
  std::set<int> closed_nbhd(int u) const {
    std::set<int> out{u};
    for (const auto& [e, wv] : weight) {
      if (e.first == u) out.insert(e.second);
      if (e.second == u) out.insert(e.first);
    }
    return out;
  }
  int degree(int u) const { return static_cast<int>(closed_nbhd(u).size()) - 1; }
  std::vector<std::pair<int, int>> edge_list() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [e, wv] : weight) out.push_back(e);
    return out;
  }
};

inline std::set<int> set_union(const std::set<int>& a, const std::set<int>& b) {
  std::set<int> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

inline std::set<int> set_inter(const std::set<int>& a, const std::set<int>& b) {
  std::set<int> out;
  for (int x : a)
    if (b.count(x)) out.insert(x);
  return out;
}

inline std::set<int> set_minus(const std::set<int>& a, const std::set<int>& b) {
  std::set<int> out;
  for (int x : a)
    if (!b.count(x)) out.insert(x);
  return out;
}

// 1 - |closed(u) n closed(v)| / |closed(u) u closed(v)|
inline double jaccard_unweighted(const RefGraph& g, int u, int v) {
  if (u == v) throw std::invalid_argument("distinct nodes required");
  auto cu = g.closed_nbhd(u), cv = g.closed_nbhd(v);
  double inter = static_cast<double>(set_inter(cu, cv).size());
  double uni = static_cast<double>(set_union(cu, cv).size());
  return 1.0 - inter / uni;
}

// Weighted form: numerator sums w(x,u)+w(x,v) over the closed intersection
// with w(a,a)=0 and w=0 for unlinked pairs; denominator sums the weight of
// every edge whose endpoints both lie in the closed union. Clamped to [0,1].
inline double jaccard_weighted(const RefGraph& g, int u, int v) {
  if (u == v) throw std::invalid_argument("distinct nodes required");
  auto cu = g.closed_nbhd(u), cv = g.closed_nbhd(v);
  auto inter = set_inter(cu, cv);
  auto uni = set_union(cu, cv);
  double num = 0.0;
  for (int x : inter) {
    if (x != u) num += g.w(x, u);
    if (x != v) num += g.w(x, v);
  }
  double den = 0.0;
  for (const auto& [e, wv] : g.weight)
    if (uni.count(e.first) && uni.count(e.second)) den += wv;
  if (den == 0.0) throw std::domain_error("no edges inside the closed union");
  return std::clamp(1.0 - num / den, 0.0, 1.0);
}

inline double jaccard(const RefGraph& g, int u, int v) {
  return g.weighted ? jaccard_weighted(g, u, v) : jaccard_unweighted(g, u, v);
}

struct RefState {
  std::map<std::pair<int, int>, double> edge_d;
  std::map<std::pair<int, int>, double> virtual_d;  // fixed after init
  int t = 0;

  double lookup(const RefGraph& g, int a, int b) const {
    if (g.has_edge(a, b)) return edge_d.at(ordered(a, b));
    return virtual_d.at(ordered(a, b));
  }
};

// Initial distances for every edge plus every (exclusive neighbor, opposite
// endpoint) pair either endpoint of any edge gives rise to.
inline RefState ref_init(const RefGraph& g) {
  RefState s;
  for (const auto& [e, wv] : g.weight) s.edge_d[e] = jaccard(g, e.first, e.second);
  for (const auto& [e, wv] : g.weight) {
    auto [u, v] = e;
    auto cu = g.closed_nbhd(u), cv = g.closed_nbhd(v);
    auto shared = set_inter(cu, cv);
    for (int x : set_minus(cu, shared))
      s.virtual_d[ordered(x, v)] = jaccard(g, x, v);
    for (int y : set_minus(cv, shared))
      s.virtual_d[ordered(y, u)] = jaccard(g, y, u);
  }
  return s;
}

inline double ref_rho(double one_minus_d, double lambda) {
  return one_minus_d >= lambda ? one_minus_d : one_minus_d - lambda;
}

// One edge's move: direct pull of the endpoints, pull through common
// neighbors, and the signed push/pull of each side's exclusive neighbors.
inline double ref_delta(const RefGraph& g, const RefState& s, int u, int v, double lambda) {
  double d = s.edge_d.at(ordered(u, v));
  double degu = g.degree(u), degv = g.degree(v);
  double di = -(std::sin(1.0 - d) / degu + std::sin(1.0 - d) / degv);

  auto cu = g.closed_nbhd(u), cv = g.closed_nbhd(v);
  auto shared = set_inter(cu, cv);
  double ci = 0.0;
  for (int x : shared) {
    if (x == u || x == v) continue;
    double dxu = s.edge_d.at(ordered(x, u));
    double dxv = s.edge_d.at(ordered(x, v));
    ci += std::sin(1.0 - dxu) * (1.0 - dxv) / degu + std::sin(1.0 - dxv) * (1.0 - dxu) / degv;
  }

  double eu = 0.0, ev = 0.0;
  for (int x : set_minus(cu, shared))
    eu += std::sin(1.0 - s.edge_d.at(ordered(x, u))) * ref_rho(1.0 - s.lookup(g, x, v), lambda) / degu;
  for (int y : set_minus(cv, shared))
    ev += std::sin(1.0 - s.edge_d.at(ordered(y, v))) * ref_rho(1.0 - s.lookup(g, y, u), lambda) / degv;

  return di + (-ci) + (-(eu + ev));
}

// Synchronous sweep off the time-t snapshot; distances clamp to [0,1] and
// edges already at a bound stay put. Returns how many values moved.
inline int ref_step(const RefGraph& g, RefState& s, double lambda) {
  auto next = s.edge_d;
  int changed = 0;
  for (const auto& [e, d] : s.edge_d) {
    if (d <= 0.0 || d >= 1.0) continue;
    double nd = std::clamp(d + ref_delta(g, s, e.first, e.second, lambda), 0.0, 1.0);
    next[e] = nd;
    if (nd != d) ++changed;
  }
  s.edge_d = std::move(next);
  ++s.t;
  return changed;
}

struct RefRun {
  RefState state;
  int moving_steps = 0;  // sweeps that changed something
  bool converged = false;
};

inline RefRun ref_run(const RefGraph& g, double lambda, int max_steps) {
  RefRun r;
  r.state = ref_init(g);
  for (int i = 0; i < max_steps; ++i) {
    int changed = ref_step(g, r.state, lambda);
    if (changed == 0) {
      r.converged = true;
      return r;
    }
    ++r.moving_steps;
  }
  return r;
}

// Components after ignoring edges whose distance settled at exactly 1.
inline std::vector<int> ref_communities(const RefGraph& g, const RefState& s) {
  std::vector<int> label(g.n, -1);
  int next = 0;
  for (int start = 0; start < g.n; ++start) {
    if (label[start] != -1) continue;
    std::vector<int> stack{start};
    label[start] = next;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.closed_nbhd(u)) {
        if (v == u || label[v] != -1) continue;
        if (s.edge_d.at(ordered(u, v)) == 1.0) continue;
        label[v] = next;
        stack.push_back(v);
      }
    }
    ++next;
  }
  return label;
}

// ---- metric oracles, all straight from the definitions ----

inline std::map<std::pair<int, int>, std::int64_t> contingency(const std::vector<int>& a,
                                                               const std::vector<int>& b) {
  std::map<std::pair<int, int>, std::int64_t> table;
  for (std::size_t i = 0; i < a.size(); ++i) ++table[{a[i], b[i]}];
  return table;
}

inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<int, int> fwd, bwd;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto f = fwd.emplace(a[i], b[i]);
    if (!f.second && f.first->second != b[i]) return false;
    auto g = bwd.emplace(b[i], a[i]);
    if (!g.second && g.first->second != a[i]) return false;
  }
  return true;
}

inline double nmi_oracle(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  if (same_partition(a, b)) return 1.0;
  double n = static_cast<double>(a.size());
  std::map<int, std::int64_t> ca, cb;
  for (int x : a) ++ca[x];
  for (int y : b) ++cb[y];
  double ha = 0.0, hb = 0.0;
  for (auto& [k, c] : ca) ha -= (c / n) * std::log(c / n);
  for (auto& [k, c] : cb) hb -= (c / n) * std::log(c / n);
  if (ha == 0.0 || hb == 0.0) return 0.0;
  double mi = 0.0;
  for (auto& [cell, c] : contingency(a, b)) {
    double pij = c / n;
    double pi = ca[cell.first] / n, pj = cb[cell.second] / n;
    mi += pij * std::log(pij / (pi * pj));
  }
  return 2.0 * mi / (ha + hb);
}

// Pair-counting adjusted Rand: enumerate all node pairs outright.
inline double ari_oracle(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  if (same_partition(a, b)) return 1.0;
  std::int64_t both = 0, only_a = 0, only_b = 0, neither = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      bool sa = a[i] == a[j], sb = b[i] == b[j];
      if (sa && sb) ++both;
      else if (sa) ++only_a;
      else if (sb) ++only_b;
      else ++neither;
    }
  double total = static_cast<double>(both + only_a + only_b + neither);
  double sum_a = static_cast<double>(both + only_a);
  double sum_b = static_cast<double>(both + only_b);
  double expected = sum_a * sum_b / total;
  double maximum = (sum_a + sum_b) / 2.0;
  if (maximum == expected) return 0.0;
  return (static_cast<double>(both) - expected) / (maximum - expected);
}

inline double purity_oracle(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size()) throw std::invalid_argument("size mismatch");
  std::map<int, std::map<int, std::int64_t>> overlap;
  for (std::size_t i = 0; i < pred.size(); ++i) ++overlap[pred[i]][truth[i]];
  std::int64_t hit = 0;
  for (auto& [c, row] : overlap) {
    std::int64_t best = 0;
    for (auto& [t, cnt] : row) best = std::max(best, cnt);
    hit += best;
  }
  return static_cast<double>(hit) / static_cast<double>(pred.size());
}

inline double modularity_oracle(const RefGraph& g, const std::vector<int>& label) {
  double total = 0.0;
  for (const auto& [e, wv] : g.weight) total += wv;
  std::map<int, double> inside, volume;
  for (const auto& [e, wv] : g.weight) {
    if (label[e.first] == label[e.second]) inside[label[e.first]] += wv;
    volume[label[e.first]] += wv;
    volume[label[e.second]] += wv;
  }
  double q = 0.0;
  std::set<int> labels(label.begin(), label.end());
  for (int c : labels) {
    double e_cc = inside[c] / total;
    double a_c = volume[c] / (2.0 * total);
    q += e_cc - a_c * a_c;
  }
  return q;
}

struct RefCut {
  double raw = 0.0;
  double normalized = 0.0;
};

inline RefCut cut_oracle(const RefGraph& g, const std::vector<int>& label) {
  RefCut out;
  std::map<int, double> cut, volume;
  for (const auto& [e, wv] : g.weight) {
    volume[label[e.first]] += wv;
    volume[label[e.second]] += wv;
    if (label[e.first] != label[e.second]) {
      out.raw += wv;
      cut[label[e.first]] += wv;
      cut[label[e.second]] += wv;
    }
  }
  std::set<int> labels(label.begin(), label.end());
  for (int c : labels)
    if (volume[c] > 0.0) out.normalized += cut[c] / volume[c];
  return out;
}

// ---- small random instances for property tests ----

inline RefGraph random_gnp(std::mt19937_64& rng, int n, double p, bool weighted = false) {
  RefGraph g;
  g.n = n;
  g.weighted = weighted;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> wdist(0.25, 4.0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (unit(rng) < p) g.add_edge(u, v, weighted ? wdist(rng) : 1.0);
  return g;
}

inline std::vector<int> random_labels(std::mt19937_64& rng, int n, int k) {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
  return out;
}

}  // namespace refcheck
