#pragma once

// Static spectral hypersparsifier construction.
//
// One level of the construction does two things to its input:
//   * coreset: for every vertex pair (u, v), keep the lambda heaviest
//     edges of the pair's bucket that are not already kept (weights
//     retained verbatim);
//   * sample: every remaining edge survives an independent fair coin
//     and carries twice its weight when it does.
// The full construction recurses on the sample with a per-level
// accuracy budget of eps / (2k), until the level budget k is exhausted
// or the input has shrunk below the recursion floor.  The sparsifier is
// the union of all coresets plus the final sample, which makes an edge
// kept at level i carry 2^(i-1) times its original weight as a coreset
// member and 2^i times as a sample member.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hypergraph.hpp"
#include "pair_index.hpp"
#include "rng.hpp"

namespace dhsparse {

struct SparsifyConfig {
  double eps = 0.1;        // target accuracy, in (0, 1)
  double c_lambda = 1.0;   // coreset budget constant, > 0
  double c = 3.0;          // recursion floor constant, >= 3
  std::optional<std::int64_t> lambda_override;  // fixes lambda when set
  std::optional<std::int64_t> mstar_override;   // fixes the floor when set
  std::uint64_t seed = 0;
};

inline void validate_config(const SparsifyConfig& cfg) {
  if (!(cfg.eps > 0.0) || !(cfg.eps < 1.0))
    throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(cfg.c_lambda > 0.0)) throw std::invalid_argument("c_lambda must be positive");
  if (!(cfg.c >= 3.0)) throw std::invalid_argument("c must be at least 3");
  if (cfg.lambda_override && *cfg.lambda_override < 0)
    throw std::invalid_argument("lambda override must be non-negative");
  if (cfg.mstar_override && *cfg.mstar_override < 0)
    throw std::invalid_argument("recursion floor override must be non-negative");
}

namespace detail {
inline std::int64_t ceil_to_i64(double v) {
  double c = std::ceil(v);
  if (c >= 9.1e18) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(c);
}

inline double log2_clamped(std::uint64_t m) {
  return m <= 2 ? 1.0 : std::log2(static_cast<double>(m));
}
}  // namespace detail

// Per-pair coreset budget: ceil(c_lambda * max(1, log2 m)^3 / eps_eff^2).
inline std::int64_t lambda_for(std::uint64_t m, const SparsifyConfig& cfg,
                               double eps_effective) {
  if (cfg.lambda_override) return *cfg.lambda_override;
  if (!(eps_effective > 0.0) || !(eps_effective < 1.0))
    throw std::invalid_argument("effective eps must lie in (0, 1)");
  double lg = detail::log2_clamped(m);
  return detail::ceil_to_i64(cfg.c_lambda * lg * lg * lg / (eps_effective * eps_effective));
}

// Maximum recursion depth: ceil(log_{4/3} m).  Each level keeps at most
// 3/4 of its input in expectation, hence the 4/3 base.
inline int level_budget(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("level budget undefined for an empty input");
  if (m == 1) return 0;
  return static_cast<int>(
      std::ceil(std::log(static_cast<double>(m)) / std::log(4.0 / 3.0)));
}

// Recursion floor: ceil(n^2 / eps^2 * max(1, log2 m)^3).
inline std::int64_t mstar_for(std::uint32_t n, double eps, std::uint64_t m,
                              const SparsifyConfig& cfg) {
  if (cfg.mstar_override) return *cfg.mstar_override;
  double lg = detail::log2_clamped(m);
  double nn = static_cast<double>(n);
  return detail::ceil_to_i64(nn * nn / (eps * eps) * lg * lg * lg);
}

struct LevelArtifacts {
  int level = 0;        // 1-based
  Hypergraph coreset;   // weights as in the level input
  Hypergraph sample;    // weights doubled relative to the level input
};

struct SparsifierBundle {
  std::vector<LevelArtifacts> levels;
  int i_last = 0;
  Hypergraph sparsifier;  // union of all coresets and the final sample
  int k = 0;
  std::int64_t mstar = 0;
  double eps_effective = 0.0;
};

namespace detail {

// One live input edge of a level: the underlying edge plus the weight
// it carries at this level (2^(level-1) times its original weight).
struct EdgeView {
  const Hyperedge* edge = nullptr;
  double weight = 0.0;
};

struct LevelBuild {
  PairIndex index;
  std::unordered_set<EdgeId> coreset;
  std::unordered_map<EdgeId, PairKey> attribution;
  std::unordered_set<EdgeId> sample;
};

// Builds one level from its input.  `view` must be sorted by edge id.
// Pair buckets are visited lexicographically and each adds the first
// `lambda` candidates not yet kept; the sampling coin for edge e is the
// pure function sample_coin(seed, epoch, e.id), so the sampling pass is
// order-free.
inline LevelBuild build_level(std::span<const EdgeView> view, std::int64_t lambda,
                              std::uint64_t seed, std::uint64_t epoch) {
  LevelBuild lb;
  for (const EdgeView& ev : view)
    lb.index.insert(ev.edge->id, ev.edge->tail, ev.edge->head, ev.weight);
  lb.index.for_each_pair([&](const PairKey& key, const Bucket& bucket) {
    std::int64_t added = 0;
    for (const BucketEntry& entry : bucket) {
      if (added >= lambda) break;
      if (lb.coreset.count(entry.id)) continue;
      lb.coreset.insert(entry.id);
      lb.attribution.emplace(entry.id, key);
      ++added;
    }
  });
  for (const EdgeView& ev : view) {
    EdgeId id = ev.edge->id;
    if (lb.coreset.count(id)) continue;
    if (sample_coin(seed, epoch, id)) lb.sample.insert(id);
  }
  return lb;
}

// Materializes a set of ids from a view into a hypergraph, applying a
// weight factor (1 for coresets, 2 for samples).  Output is id-sorted.
inline Hypergraph materialize(std::uint32_t n, std::span<const EdgeView> view,
                              const std::unordered_set<EdgeId>& ids, double factor) {
  std::vector<Hyperedge> edges;
  edges.reserve(ids.size());
  for (const EdgeView& ev : view) {
    if (!ids.count(ev.edge->id)) continue;
    Hyperedge e = *ev.edge;
    e.weight = ev.weight * factor;
    edges.push_back(std::move(e));
  }
  return Hypergraph::with_edges(n, std::move(edges));
}

}  // namespace detail

// One level applied to a standalone hypergraph: returns the coreset
// (weights retained) and the sample (weights doubled).
inline std::pair<Hypergraph, Hypergraph> coreset_and_sample(const Hypergraph& h,
                                                            double eps_effective,
                                                            const SparsifyConfig& cfg,
                                                            std::uint64_t epoch = 1) {
  validate_config(cfg);
  if (!(eps_effective > 0.0) || !(eps_effective < 1.0))
    throw std::invalid_argument("effective eps must lie in (0, 1)");
  std::vector<detail::EdgeView> view;
  view.reserve(h.size());
  for (const auto& e : h.edges()) view.push_back({&e, e.weight});
  std::int64_t lambda = lambda_for(h.size(), cfg, eps_effective);
  detail::LevelBuild lb = detail::build_level(view, lambda, cfg.seed, epoch);
  return {detail::materialize(h.vertex_count(), view, lb.coreset, 1.0),
          detail::materialize(h.vertex_count(), view, lb.sample, 2.0)};
}

// Full recursive construction.
inline SparsifierBundle spectral_sparsify(const Hypergraph& h, const SparsifyConfig& cfg) {
  validate_config(cfg);
  SparsifierBundle bundle;
  bundle.sparsifier = h;
  if (h.empty()) return bundle;

  std::uint64_t m0 = h.size();
  bundle.k = level_budget(m0);
  bundle.mstar = mstar_for(h.vertex_count(), cfg.eps, m0, cfg);
  bundle.eps_effective = cfg.eps / (2.0 * std::max(1, bundle.k));
  // The floor is clamped to 1 edge so the recursion always halts once
  // a sample comes up empty.
  double floor = std::max(1.0, 32.0 * cfg.c * static_cast<double>(bundle.mstar));

  std::vector<detail::EdgeView> view;
  view.reserve(h.size());
  for (const auto& e : h.edges()) view.push_back({&e, e.weight});

  std::vector<Hypergraph> sparsifier_parts;
  int i = 0;
  while (i <= bundle.k && static_cast<double>(view.size()) >= floor) {
    std::int64_t lambda = lambda_for(view.size(), cfg, bundle.eps_effective);
    detail::LevelBuild lb = detail::build_level(view, lambda, cfg.seed, i + 1);
    LevelArtifacts art;
    art.level = i + 1;
    art.coreset = detail::materialize(h.vertex_count(), view, lb.coreset, 1.0);
    art.sample = detail::materialize(h.vertex_count(), view, lb.sample, 2.0);
    sparsifier_parts.push_back(art.coreset);
    std::vector<detail::EdgeView> next;
    next.reserve(lb.sample.size());
    for (const detail::EdgeView& ev : view) {
      if (lb.sample.count(ev.edge->id)) next.push_back({ev.edge, ev.weight * 2.0});
    }
    bundle.levels.push_back(std::move(art));
    view = std::move(next);
    ++i;
  }
  bundle.i_last = i;
  if (i == 0) return bundle;  // below the floor from the start: keep h verbatim
  sparsifier_parts.push_back(bundle.levels.back().sample);
  bundle.sparsifier = union_disjoint(std::span<const Hypergraph>(sparsifier_parts));
  return bundle;
}

}  // namespace dhsparse
