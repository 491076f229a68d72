#pragma once

// Vertex-pair index over the live edges of one sparsifier level.
//
// For every (u, v) with u in tail(e) and v in head(e), edge e appears
// in the bucket of (u, v).  Buckets are ordered by (weight desc, id asc)
// so the heaviest candidate outside the coreset can be found by a scan
// from the front.  An edge of rank r occupies at most r^2 buckets.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hypergraph.hpp"
#include "scheduler.hpp"

namespace dhsparse {

struct PairKey {
  VertexId u = 0;
  VertexId v = 0;
  friend bool operator<(const PairKey& a, const PairKey& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }
  friend bool operator==(const PairKey& a, const PairKey& b) {
    return a.u == b.u && a.v == b.v;
  }
};

struct BucketEntry {
  double weight = 0.0;
  EdgeId id = 0;
};

// Heavier first; ids break ties so the order is total and reproducible.
struct BucketOrder {
  bool operator()(const BucketEntry& a, const BucketEntry& b) const {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.id < b.id;
  }
};

using Bucket = std::set<BucketEntry, BucketOrder>;

class PairIndex {
 public:
  PairIndex() = default;

  static PairIndex build(const Hypergraph& h) {
    PairIndex idx;
    for (const auto& e : h.edges()) idx.insert(e.id, e.tail, e.head, e.weight);
    return idx;
  }

  void insert(EdgeId id, const std::vector<VertexId>& tail,
              const std::vector<VertexId>& head, double weight) {
    if (edges_.count(id))
      throw std::invalid_argument("edge " + std::to_string(id) + " already indexed");
    EdgeRec rec;
    rec.weight = weight;
    rec.pairs.reserve(tail.size() * head.size());
    for (VertexId u : tail)
      for (VertexId v : head) rec.pairs.push_back(PairKey{u, v});
    for (const PairKey& p : rec.pairs) buckets_[p].insert(BucketEntry{weight, id});
    edges_.emplace(id, std::move(rec));
  }

  bool contains(EdgeId id) const { return edges_.count(id) != 0; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t pair_count() const { return buckets_.size(); }

  // Buckets this edge occupies (one key per (tail, head) vertex pair).
  const std::vector<PairKey>& pairs_of(EdgeId id) const {
    auto it = edges_.find(id);
    if (it == edges_.end())
      throw std::out_of_range("edge " + std::to_string(id) + " not in index");
    return it->second.pairs;
  }

  double weight_of(EdgeId id) const {
    auto it = edges_.find(id);
    if (it == edges_.end())
      throw std::out_of_range("edge " + std::to_string(id) + " not in index");
    return it->second.weight;
  }

  void remove_edge(EdgeId id) {
    auto it = edges_.find(id);
    if (it == edges_.end())
      throw std::out_of_range("edge " + std::to_string(id) + " not in index");
    for (const PairKey& p : it->second.pairs) {
      auto bit = buckets_.find(p);
      bit->second.erase(BucketEntry{it->second.weight, id});
      if (bit->second.empty()) buckets_.erase(bit);
    }
    edges_.erase(it);
  }

  // Removes a set of edges; the final state equals sequential removal
  // in any order.  The parallel policy partitions work by bucket, which
  // is safe because distinct buckets share no state.
  void remove_edges_batch(std::span<const EdgeId> ids, Scheduler sched) {
    std::unordered_set<EdgeId> seen;
    for (EdgeId id : ids) {
      if (!edges_.count(id))
        throw std::out_of_range("edge " + std::to_string(id) + " not in index");
      if (!seen.insert(id).second)
        throw std::invalid_argument("duplicate edge " + std::to_string(id) + " in batch");
    }
    std::map<PairKey, std::vector<BucketEntry>> by_bucket;
    for (EdgeId id : ids) {
      const EdgeRec& rec = edges_.at(id);
      for (const PairKey& p : rec.pairs) by_bucket[p].push_back(BucketEntry{rec.weight, id});
    }
    std::vector<std::pair<const PairKey*, const std::vector<BucketEntry>*>> groups;
    groups.reserve(by_bucket.size());
    for (const auto& [key, entries] : by_bucket) groups.emplace_back(&key, &entries);
    parallel_for(sched, groups.size(), [&](std::size_t g) {
      Bucket& bucket = buckets_.find(*groups[g].first)->second;
      for (const BucketEntry& entry : *groups[g].second) bucket.erase(entry);
    });
    for (const auto& [key, entries] : by_bucket) {
      auto bit = buckets_.find(key);
      if (bit != buckets_.end() && bit->second.empty()) buckets_.erase(bit);
    }
    for (EdgeId id : ids) edges_.erase(id);
  }

  // Heaviest live edge in the bucket of p for which `excluded` is false;
  // nullopt when the bucket is missing or exhausted.
  std::optional<EdgeId> heaviest_outside(
      const PairKey& p, const std::function<bool(EdgeId)>& excluded) const {
    auto it = buckets_.find(p);
    if (it == buckets_.end()) return std::nullopt;
    for (const BucketEntry& entry : it->second) {
      if (!excluded(entry.id)) return entry.id;
    }
    return std::nullopt;
  }

  const Bucket* bucket_of(const PairKey& p) const {
    auto it = buckets_.find(p);
    return it == buckets_.end() ? nullptr : &it->second;
  }

  // Visits buckets in lexicographic (u, v) order.
  template <typename Fn>
  void for_each_pair(Fn&& fn) const {
    for (const auto& [key, bucket] : buckets_) fn(key, bucket);
  }

  std::size_t entry_count() const {
    std::size_t total = 0;
    for (const auto& [key, bucket] : buckets_) total += bucket.size();
    return total;
  }

 private:
  struct EdgeRec {
    double weight;
    std::vector<PairKey> pairs;
  };

  std::map<PairKey, Bucket> buckets_;
  std::unordered_map<EdgeId, EdgeRec> edges_;
};

}  // namespace dhsparse
