#pragma once
// Distance dynamics. Each sweep recomputes every open edge's move from the
// previous sweep's snapshot: the endpoints' direct pull, the pull routed
// through common neighbors, and a per-exclusive-neighbor term whose sign
// flips once the neighbor's affinity to the far endpoint drops below the
// cohesion parameter. Distances clamp to [0,1] and freeze at the bounds; a
// sweep that moves nothing ends the run.
//
// Two implementations share one arithmetic contract. The per-edge term
// functions walk adjacency on the fly and exist for inspection and testing;
// DynamicsEngine flattens the same term lists once and replays them fast.
// Both accumulate in ascending-neighbor order with identical expression
// shapes, so their results agree bitwise, and results never depend on the
// worker count.

#include <array>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "attractor/graph.hpp"
#include "attractor/jaccard.hpp"
#include "attractor/memory.hpp"
#include "attractor/parallel.hpp"
#include "attractor/state.hpp"

namespace attractor {

struct SineCoupling {
  double operator()(double x) const { return std::sin(x); }
};

struct InteractionConfig {
  double lambda = 0.5;          // cohesion threshold for exclusive neighbors
  std::uint32_t max_steps = 100;
};

struct ConvergenceReport {
  std::uint32_t steps_taken = 0;  // sweeps that moved at least one edge
  bool converged = false;         // a full sweep produced zero changes
  std::vector<std::uint32_t> changed_edges_per_step;  // every executed sweep
};

// Attraction (positive) or repulsion (negative) an exclusive neighbor exerts,
// given its similarity to the opposite endpoint.
inline double rho(double one_minus_d, double lambda) {
  return one_minus_d >= lambda ? one_minus_d : one_minus_d - lambda;
}

inline double rho(const DistanceState& state, const Graph& g, double lambda, NodeId x,
                  NodeId opposite) {
  return rho(1.0 - state.pair_distance(g, x, opposite), lambda);
}

namespace detail {

// View over the initial pair table, used only while the engine is built.
// The keys arrive sorted, so all pairs led by one node form a contiguous
// run; a per-node offset table narrows a lookup to its run, and a short
// binary search finishes it. Edges are visited in id order, so consecutive
// probes revisit the same few runs and mostly resolve from cache, where a
// hashed layout would scatter every probe across the whole table.
class PairLookup {
public:
  PairLookup(const std::vector<std::uint64_t>& keys, const std::vector<double>& values,
             std::size_t nodes)
      : keys_(keys), values_(values), off_(nodes + 1, 0) {
    for (std::uint64_t k : keys) ++off_[(k >> 32) + 1];
    for (std::size_t i = 1; i < off_.size(); ++i) off_[i] += off_[i - 1];
  }

  void prefetch(std::uint64_t key) const {
    std::size_t lo = off_[key >> 32], hi = off_[(key >> 32) + 1];
    prefetch_read(keys_.data() + lo);
    prefetch_read(keys_.data() + (lo + hi) / 2);
    prefetch_read(values_.data() + (lo + hi) / 2);
  }

  double at(std::uint64_t key) const {
    auto first = keys_.begin() + static_cast<std::ptrdiff_t>(off_[key >> 32]);
    auto last = keys_.begin() + static_cast<std::ptrdiff_t>(off_[(key >> 32) + 1]);
    auto it = std::lower_bound(first, last, key);
    if (it == last || *it != key)
      throw std::logic_error("distance state lacks a pair the graph requires; "
                             "state and graph do not belong together");
    return values_[static_cast<std::size_t>(it - keys_.begin())];
  }

private:
  const std::vector<std::uint64_t>& keys_;
  const std::vector<double>& values_;
  std::vector<std::uint64_t> off_;
};

// Walks the sorted adjacencies of both endpoints, reporting each neighbor as
// common (with both edge ids) or exclusive to one side. Neighbor order is
// ascending throughout, which fixes the summation order everywhere.
template <class OnCommon, class OnLeftOnly, class OnRightOnly>
void classify_neighbors(const Graph& g, NodeId u, NodeId v, OnCommon on_common,
                        OnLeftOnly on_left, OnRightOnly on_right) {
  auto a = g.neighbors(u), b = g.neighbors(v);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    NodeId x = a[i].node, y = b[j].node;
    if (x == y) {
      on_common(x, a[i].edge, b[j].edge);
      ++i;
      ++j;
    } else if (x < y) {
      if (x != v) on_left(x, a[i].edge);
      ++i;
    } else {
      if (y != u) on_right(y, b[j].edge);
      ++j;
    }
  }
  for (; i < a.size(); ++i)
    if (a[i].node != v) on_left(a[i].node, a[i].edge);
  for (; j < b.size(); ++j)
    if (b[j].node != u) on_right(b[j].node, b[j].edge);
}

}  // namespace detail

template <class F = SineCoupling>
double direct_influence(const DistanceState& state, const Graph& g, EdgeId e, F f = {}) {
  const auto& rec = g.edge(e);
  double inv_u = 1.0 / g.degree(rec.u), inv_v = 1.0 / g.degree(rec.v);
  double fo = f(1.0 - state.edge_distance(e));
  return -(fo * inv_u + fo * inv_v);
}

template <class F = SineCoupling>
double common_influence(const DistanceState& state, const Graph& g, EdgeId e, F f = {}) {
  const auto& rec = g.edge(e);
  double inv_u = 1.0 / g.degree(rec.u), inv_v = 1.0 / g.degree(rec.v);
  double acc = 0.0;
  detail::classify_neighbors(
      g, rec.u, rec.v,
      [&](NodeId, EdgeId exu, EdgeId exv) {
        double dxu = state.edge_distance(exu), dxv = state.edge_distance(exv);
        acc += inv_u * f(1.0 - dxu) * (1.0 - dxv) + inv_v * f(1.0 - dxv) * (1.0 - dxu);
      },
      [](NodeId, EdgeId) {}, [](NodeId, EdgeId) {});
  return -acc;
}

template <class F = SineCoupling>
double exclusive_influence(const DistanceState& state, const Graph& g, EdgeId e, double lambda,
                           F f = {}) {
  const auto& rec = g.edge(e);
  double inv_u = 1.0 / g.degree(rec.u), inv_v = 1.0 / g.degree(rec.v);
  double acc_u = 0.0, acc_v = 0.0;
  detail::classify_neighbors(
      g, rec.u, rec.v, [](NodeId, EdgeId, EdgeId) {},
      [&](NodeId x, EdgeId exu) {
        acc_u += inv_u * f(1.0 - state.edge_distance(exu)) *
                 rho(1.0 - state.virtual_distance(x, rec.v), lambda);
      },
      [&](NodeId y, EdgeId eyv) {
        acc_v += inv_v * f(1.0 - state.edge_distance(eyv)) *
                 rho(1.0 - state.virtual_distance(y, rec.u), lambda);
      });
  return -(acc_u + acc_v);
}

// One synchronous sweep using the straightforward per-edge term functions.
// Suits small graphs and tests; the engine below is the fast path.
template <class F = SineCoupling>
std::uint32_t step(DistanceState& state, const Graph& g, const InteractionConfig& config,
                   F f = {}) {
  const DistanceState snapshot = state;
  std::uint32_t changed = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    double d = snapshot.edge_distance(e);
    if (d <= 0.0 || d >= 1.0) continue;
    double delta = direct_influence(snapshot, g, e, f) + common_influence(snapshot, g, e, f) +
                   exclusive_influence(snapshot, g, e, config.lambda, f);
    double nd = d + delta;
    if (nd < 0.0) nd = 0.0;
    if (nd > 1.0) nd = 1.0;
    state.set_edge_distance(e, nd);
    if (nd != d) ++changed;
  }
  state.advance_time();
  return changed;
}

// Precomputes, per edge, the edge ids feeding the common-neighbor term and
// each exclusive side's (edge id, frozen pair distance) feed, flattened into
// offset-indexed arrays. A sweep is then a linear replay with no set algebra.
// Pair distances never change after initialization, so copying them into the
// term arrays lets sweeps stream them instead of chasing indices into the
// pair table, which stops fitting in cache well before a million edges.
class DynamicsEngine {
public:
  DynamicsEngine(const Graph& g, const DistanceState& init) : g_(&g) {
    inv_deg_.resize(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
      inv_deg_[u] = g.degree(u) ? 1.0 / g.degree(u) : 0.0;

    EdgeId m = g.edge_count();
    // Endpoint degree inverses per edge, stored as an adjacent pair so a
    // sweep reads one aligned slot instead of the edge record plus two
    // scattered per-node loads.
    inv_uv_.resize(2 * static_cast<std::size_t>(m));
    for (EdgeId e = 0; e < m; ++e) {
      const auto& rec = g.edge(e);
      inv_uv_[2 * static_cast<std::size_t>(e)] = inv_deg_[rec.u];
      inv_uv_[2 * static_cast<std::size_t>(e) + 1] = inv_deg_[rec.v];
    }
    cn_off_.assign(m + 1, 0);
    en_u_off_.assign(m + 1, 0);
    en_v_off_.assign(m + 1, 0);
    // Term counts need no merge bookkeeping: the shared-neighbor count fixes
    // both exclusive counts through the degrees, and an id-only walk is the
    // cheapest way to get it. Every edge is independent, so the passes over
    // edges run chunked.
    parallel_chunks(m, [&](std::size_t begin, std::size_t end) {
      constexpr std::size_t ahead = 4;
      for (std::size_t e = begin; e < end; ++e) {
        if (e + ahead < end) {
          const auto& nx = g.edge(static_cast<EdgeId>(e + ahead));
          for (auto row : {g.adjacent_ids(nx.u), g.adjacent_ids(nx.v)}) {
            const char* q = reinterpret_cast<const char*>(row.data());
            for (std::size_t off = 0; off < row.size_bytes(); off += 64)
              detail::prefetch_read(q + off);
          }
        }
        const auto& rec = g.edge(static_cast<EdgeId>(e));
        std::uint32_t cn = detail::count_overlap(g, rec.u, rec.v).shared_open;
        cn_off_[e + 1] = cn;
        en_u_off_[e + 1] = g.degree(rec.u) - 1 - cn;
        en_v_off_[e + 1] = g.degree(rec.v) - 1 - cn;
      }
    });
    // 32-bit prefix sums keep the sweep's working set small; total term
    // counts beyond 2^32 are out of this engine's scope.
    std::uint64_t tc = 0, tu = 0, tv = 0;
    for (EdgeId e = 0; e < m; ++e) {
      tc += cn_off_[e + 1];
      tu += en_u_off_[e + 1];
      tv += en_v_off_[e + 1];
      if (tc > 0xffffffffull || tu > 0xffffffffull || tv > 0xffffffffull)
        throw std::length_error("graph needs more interaction terms than the engine can index");
      cn_off_[e + 1] = static_cast<std::uint32_t>(tc);
      en_u_off_[e + 1] = static_cast<std::uint32_t>(tu);
      en_v_off_[e + 1] = static_cast<std::uint32_t>(tv);
    }
    cn_a_.resize(cn_off_[m]);
    cn_b_.resize(cn_off_[m]);
    en_u_e_.resize(en_u_off_[m]);
    en_u_d_.resize(en_u_off_[m]);
    en_v_e_.resize(en_v_off_[m]);
    en_v_d_.resize(en_v_off_[m]);
    detail::PairLookup frozen(init.virtual_keys(), init.virtual_values(), g.node_count());
    // Each edge writes its own slice of the term arrays, so this pass is
    // chunked. Probes resolve one edge behind the classify: by the time an
    // edge's keys are looked up, their prefetches have had a whole merge to
    // land, which a prefetch-then-probe of the same edge would not allow.
    parallel_chunks(m, [&](std::size_t begin, std::size_t end) {
      std::vector<std::uint64_t> ku, kv, pu, pv;
      std::size_t pu0 = 0, pv0 = 0;
      constexpr std::size_t ahead = 4;
      auto resolve_prev = [&] {
        for (std::size_t i = 0; i < pu.size(); ++i) en_u_d_[pu0 + i] = frozen.at(pu[i]);
        for (std::size_t i = 0; i < pv.size(); ++i) en_v_d_[pv0 + i] = frozen.at(pv[i]);
      };
      for (std::size_t e = begin; e < end; ++e) {
        if (e + ahead < end) {
          const auto& nx = g.edge(static_cast<EdgeId>(e + ahead));
          for (auto row : {g.neighbors(nx.u), g.neighbors(nx.v)}) {
            const char* q = reinterpret_cast<const char*>(row.data());
            for (std::size_t off = 0; off < row.size_bytes(); off += 64)
              detail::prefetch_read(q + off);
          }
        }
        const auto& rec = g.edge(static_cast<EdgeId>(e));
        std::size_t ci = cn_off_[e], ui = en_u_off_[e], vi = en_v_off_[e];
        ku.clear();
        kv.clear();
        detail::classify_neighbors(
            g, rec.u, rec.v,
            [&](NodeId, EdgeId exu, EdgeId exv) {
              cn_a_[ci] = exu;
              cn_b_[ci] = exv;
              ++ci;
            },
            [&](NodeId x, EdgeId exu) {
              en_u_e_[ui++] = exu;
              ku.push_back(DistanceState::pair_key(x, rec.v));
            },
            [&](NodeId y, EdgeId eyv) {
              en_v_e_[vi++] = eyv;
              kv.push_back(DistanceState::pair_key(y, rec.u));
            });
        for (std::uint64_t k : ku) frozen.prefetch(k);
        for (std::uint64_t k : kv) frozen.prefetch(k);
        resolve_prev();
        pu.swap(ku);
        pv.swap(kv);
        pu0 = en_u_off_[e];
        pv0 = en_v_off_[e];
      }
      resolve_prev();
    });
  }

  // Runs from the state's current distances until a sweep moves nothing or
  // the step cap is hit; the state ends up holding the final distances.
  template <class F = SineCoupling>
  ConvergenceReport run(DistanceState& state, const InteractionConfig& config, F f = {}) {
    EdgeId m = g_->edge_count();
    const double lambda = config.lambda;

    // Distances live in one array the sweep writes in place. Term inputs
    // come only from the snapshot taken before the sweep, so in-place
    // writes stay invisible until the snapshot is refreshed afterwards.
    detail::raw_vector<double> dist(state.edge_distances().begin(), state.edge_distances().end());
    // Snapshot of each edge's distance next to its coupling value. One pass
    // evaluates f once per edge instead of once per appearance in a term
    // list, and a term's gather pulls both fields in one cache line.
    struct EdgeSnap {
      double d, fd;
    };
    detail::raw_vector<EdgeSnap> snap(dist.size());
    parallel_chunks(m, [&](std::size_t begin, std::size_t end) {
      for (std::size_t e = begin; e < end; ++e) snap[e] = {dist[e], f(1.0 - dist[e])};
    });

    // Only edges strictly between the fixed points can still move, so
    // sweeps walk the active list and late sweeps, where most of the graph
    // is frozen, cost next to nothing. Frozen edges keep serving their
    // final value to neighbors through the snapshot.
    detail::raw_vector<std::uint32_t> active;
    active.reserve(m);
    for (EdgeId e = 0; e < m; ++e)
      if (dist[e] > 0.0 && dist[e] < 1.0) active.push_back(e);

    unsigned slots = worker_count();
    std::vector<std::uint32_t> partial(slots);
    std::vector<detail::raw_vector<std::uint32_t>> survivors(slots);
    ConvergenceReport report;

    // Sweeps read term data through this view. It starts on the member
    // arrays, where a position is an edge id; each time the active set
    // halves, the surviving ranges are copied into dense arrays indexed by
    // list position, so late sweeps stream compact memory instead of
    // skipping across full-size arrays. Term entries store edge ids either
    // way, which keeps the snapshot gathers, and so the results, identical.
    struct TermView {
      const std::uint32_t *coff, *uoff, *voff, *ca, *cb, *ue, *ve;
      const double *ud, *vd, *inv;
      const std::uint32_t* edge_of;  // null while positions are edge ids
    };
    TermView view{cn_off_.data(), en_u_off_.data(), en_v_off_.data(), cn_a_.data(),
                  cn_b_.data(),   en_u_e_.data(),   en_v_e_.data(),   en_u_d_.data(),
                  en_v_d_.data(), inv_uv_.data(),   nullptr};
    struct Pack {
      detail::raw_vector<std::uint32_t> coff, uoff, voff, ca, cb, ue, ve, edge;
      detail::raw_vector<double> ud, vd, inv;
    };
    // Two buffers in rotation: surviving sets only shrink, so after the
    // first copy every later repack fits in place and costs no allocation.
    Pack pool[2];
    int live_pack = -1;
    // While most edges stay open, packing copies nearly everything for
    // little gain; the first copy waits until three quarters are frozen,
    // later ones fire at each further halving.
    std::size_t pack_limit = active.size() / 4;

    auto repack = [&](detail::raw_vector<std::uint32_t>& live) {
      std::size_t a = live.size();
      Pack& np = pool[live_pack < 0 ? 0 : 1 - live_pack];
      np.coff.resize(a + 1);
      np.uoff.resize(a + 1);
      np.voff.resize(a + 1);
      np.edge.resize(a);
      np.inv.resize(2 * a);
      // Per-chunk term totals, then a prefix over chunks, give every chunk
      // its write base; both passes chunk identically, so the copy needs no
      // coordination.
      std::vector<std::array<std::uint64_t, 3>> base(slots + 1, {0, 0, 0});
      parallel_chunks_counted(a, [&](unsigned chunk, std::size_t b, std::size_t e2) {
        std::uint64_t sc = 0, su = 0, sv = 0;
        for (std::size_t i = b; i < e2; ++i) {
          std::uint32_t p = live[i];
          sc += view.coff[p + 1] - view.coff[p];
          su += view.uoff[p + 1] - view.uoff[p];
          sv += view.voff[p + 1] - view.voff[p];
        }
        base[chunk + 1] = {sc, su, sv};
      });
      for (unsigned c = 0; c < slots; ++c)
        for (int t = 0; t < 3; ++t) base[c + 1][t] += base[c][t];
      np.ca.resize(base[slots][0]);
      np.cb.resize(base[slots][0]);
      np.ue.resize(base[slots][1]);
      np.ud.resize(base[slots][1]);
      np.ve.resize(base[slots][2]);
      np.vd.resize(base[slots][2]);
      parallel_chunks_counted(a, [&](unsigned chunk, std::size_t b, std::size_t e2) {
        std::uint32_t oc = static_cast<std::uint32_t>(base[chunk][0]);
        std::uint32_t ou = static_cast<std::uint32_t>(base[chunk][1]);
        std::uint32_t ov = static_cast<std::uint32_t>(base[chunk][2]);
        for (std::size_t i = b; i < e2; ++i) {
          std::uint32_t p = live[i];
          np.edge[i] = view.edge_of ? view.edge_of[p] : p;
          np.inv[2 * i] = view.inv[2 * std::size_t{p}];
          np.inv[2 * i + 1] = view.inv[2 * std::size_t{p} + 1];
          np.coff[i] = oc;
          np.uoff[i] = ou;
          np.voff[i] = ov;
          for (std::uint32_t k = view.coff[p]; k < view.coff[p + 1]; ++k, ++oc) {
            np.ca[oc] = view.ca[k];
            np.cb[oc] = view.cb[k];
          }
          for (std::uint32_t k = view.uoff[p]; k < view.uoff[p + 1]; ++k, ++ou) {
            np.ue[ou] = view.ue[k];
            np.ud[ou] = view.ud[k];
          }
          for (std::uint32_t k = view.voff[p]; k < view.voff[p + 1]; ++k, ++ov) {
            np.ve[ov] = view.ve[k];
            np.vd[ov] = view.vd[k];
          }
        }
      });
      np.coff[a] = static_cast<std::uint32_t>(base[slots][0]);
      np.uoff[a] = static_cast<std::uint32_t>(base[slots][1]);
      np.voff[a] = static_cast<std::uint32_t>(base[slots][2]);
      live_pack = live_pack < 0 ? 0 : 1 - live_pack;
      view = TermView{np.coff.data(), np.uoff.data(), np.voff.data(), np.ca.data(),
                      np.cb.data(),   np.ue.data(),   np.ve.data(),   np.ud.data(),
                      np.vd.data(),   np.inv.data(),  np.edge.data()};
      for (std::size_t i = 0; i < a; ++i) live[i] = static_cast<std::uint32_t>(i);
      pack_limit = a / 2;
    };

    for (std::uint32_t sweep = 0; sweep < config.max_steps; ++sweep) {
      for (auto& p : partial) p = 0;
      for (auto& s : survivors) s.clear();
      parallel_chunks_counted(active.size(), [&](unsigned chunk, std::size_t begin,
                                                 std::size_t end) {
        std::uint32_t local = 0;
        auto& keep = survivors[chunk];
        // Once the active list thins out, consecutive edges no longer touch
        // adjacent term ranges and the hardware prefetcher loses the trail.
        // Two lookahead stages keep misses overlapped: offsets first, then
        // the streams those warm offsets describe.
        constexpr std::size_t ahead = 4;
        for (std::size_t i = begin; i < end; ++i) {
          if (i + 2 * ahead < end) {
            std::uint32_t q = active[i + 2 * ahead];
            detail::prefetch_read(&view.coff[q]);
            detail::prefetch_read(&view.uoff[q]);
            detail::prefetch_read(&view.voff[q]);
            if (view.edge_of) detail::prefetch_read(&view.edge_of[q]);
          }
          if (i + ahead < end) {
            std::uint32_t p = active[i + ahead];
            detail::prefetch_read(&view.inv[2 * std::size_t{p}]);
            detail::prefetch_read(&snap[view.edge_of ? view.edge_of[p] : p]);
            for (std::uint32_t k = view.coff[p]; k < view.coff[p + 1]; k += 16) {
              detail::prefetch_read(&view.ca[k]);
              detail::prefetch_read(&view.cb[k]);
            }
            for (std::uint32_t k = view.uoff[p]; k < view.uoff[p + 1]; k += 8) {
              detail::prefetch_read(&view.ue[k]);
              detail::prefetch_read(&view.ud[k]);
            }
            for (std::uint32_t k = view.voff[p]; k < view.voff[p + 1]; k += 8) {
              detail::prefetch_read(&view.ve[k]);
              detail::prefetch_read(&view.vd[k]);
            }
          }
          std::uint32_t p = active[i];
          std::uint32_t e = view.edge_of ? view.edge_of[p] : p;
          double d = snap[e].d;
          double inv_u = view.inv[2 * std::size_t{p}], inv_v = view.inv[2 * std::size_t{p} + 1];
          double fo = snap[e].fd;
          double di = -(fo * inv_u + fo * inv_v);
          double ci = 0.0;
          for (std::uint32_t k = view.coff[p]; k < view.coff[p + 1]; ++k) {
            EdgeSnap a = snap[view.ca[k]], b = snap[view.cb[k]];
            ci += inv_u * a.fd * (1.0 - b.d) + inv_v * b.fd * (1.0 - a.d);
          }
          double eu = 0.0;
          for (std::uint32_t k = view.uoff[p]; k < view.uoff[p + 1]; ++k)
            eu += inv_u * snap[view.ue[k]].fd * rho(1.0 - view.ud[k], lambda);
          double ev = 0.0;
          for (std::uint32_t k = view.voff[p]; k < view.voff[p + 1]; ++k)
            ev += inv_v * snap[view.ve[k]].fd * rho(1.0 - view.vd[k], lambda);
          double nd = d + ((di - ci) - (eu + ev));
          if (nd < 0.0) nd = 0.0;
          if (nd > 1.0) nd = 1.0;
          dist[e] = nd;
          if (nd != d) ++local;
          if (nd > 0.0 && nd < 1.0) keep.push_back(p);
        }
        partial[chunk] = local;
      });
      std::uint32_t changed = 0;
      for (std::uint32_t p : partial) changed += p;

      state.advance_time();
      report.changed_edges_per_step.push_back(changed);
      if (changed == 0) {
        report.converged = true;
        break;
      }
      ++report.steps_taken;

      // Refresh the snapshot for every edge the sweep may have rewritten,
      // then drop the newly frozen ones. Chunk ordinals follow list order,
      // so stitching survivors keeps the active list ascending.
      parallel_chunks(active.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          std::uint32_t p = active[i];
          std::uint32_t e = view.edge_of ? view.edge_of[p] : p;
          snap[e] = {dist[e], f(1.0 - dist[e])};
        }
      });
      active.clear();
      for (const auto& s : survivors) active.insert(active.end(), s.begin(), s.end());
      if (!active.empty() && active.size() < pack_limit) repack(active);
    }

    state.mutable_edge_distances().assign(dist.begin(), dist.end());
    return report;
  }

private:
  const Graph* g_;
  std::vector<double> inv_deg_;
  detail::raw_vector<double> inv_uv_;  // per edge: 1/deg u, 1/deg v
  detail::raw_vector<std::uint32_t> cn_off_, en_u_off_, en_v_off_;
  detail::raw_vector<std::uint32_t> cn_a_, cn_b_;  // edge ids (x,u) and (x,v)
  detail::raw_vector<std::uint32_t> en_u_e_, en_v_e_;  // edge id (x,u) resp. (y,v)
  detail::raw_vector<double> en_u_d_, en_v_d_;  // frozen distance of (x,v) resp. (y,u)
};

// Initialize, then sweep to convergence; the usual entry point.
template <class F = SineCoupling>
std::pair<DistanceState, ConvergenceReport> run_to_convergence(const Graph& g,
                                                               const InteractionConfig& config,
                                                               F f = {}) {
  DistanceState state = init_distances(g);
  DynamicsEngine engine(g, state);
  ConvergenceReport report = engine.run(state, config, f);
  return {std::move(state), std::move(report)};
}

}  // namespace attractor
