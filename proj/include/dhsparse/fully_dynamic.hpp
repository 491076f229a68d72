#pragma once

// Fully dynamic sparsifier via a binary-counter partition.
//
// Live edges are partitioned into sub-hypergraphs H_1..H_K with
// |H_i| <= 2^i, each maintained by its own decremental engine.  An
// insertion advances a counter t; the level j of the lowest set bit of
// the new t absorbs all lower levels plus the new edge and rebuilds its
// engine from scratch.  Level j is rebuilt at most once per 2^(j-1)
// insertions, which is what amortizes the rebuild cost.  Deletions are
// routed to the owning level's engine.  The output sparsifier is the
// disjoint union of the per-level sparsifiers.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "decremental.hpp"
#include "hypergraph.hpp"
#include "rng.hpp"
#include "scheduler.hpp"
#include "static_sparsifier.hpp"

namespace dhsparse {

enum class OpKind { Add, Delete, AddBatch, DeleteBatch };

inline const char* to_string(OpKind k) {
  switch (k) {
    case OpKind::Add: return "add";
    case OpKind::Delete: return "delete";
    case OpKind::AddBatch: return "add_batch";
    case OpKind::DeleteBatch: return "delete_batch";
  }
  return "?";
}

struct UpdateMetrics {
  OpKind kind = OpKind::Add;
  std::vector<EdgeId> new_ids;   // assigned ids, insertion ops only
  int rebuilt_level = 0;         // 0 when no rebuild happened
  std::size_t edges_moved = 0;   // edges absorbed from lower levels
  std::size_t recourse_added = 0;
  std::size_t recourse_removed = 0;
  int deletions_propagated = 0;
  double wall_seconds = 0.0;
};

struct DynamicStats {
  std::uint64_t updates = 0;
  std::uint64_t adds = 0;
  std::uint64_t deletes = 0;
  std::vector<std::uint64_t> rebuilds_per_level;  // index i = level i+1
  std::uint64_t edges_moved_total = 0;
  std::uint64_t recourse_total = 0;
  double wall_seconds_total = 0.0;
};

class DynamicSparsifier {
 public:
  DynamicSparsifier(std::uint32_t n, std::uint64_t max_m, const SparsifyConfig& cfg)
      : n_(n), max_m_(max_m), cfg_(cfg) {
    validate_config(cfg_);
    if (max_m_ == 0) throw std::invalid_argument("max_m must be positive");
    levels_K_ = static_cast<int>(std::bit_width(max_m_ - 1)) + 1;
    levels_.resize(levels_K_);
    stats_.rebuilds_per_level.assign(levels_K_, 0);
  }

  std::uint32_t vertex_count() const { return n_; }
  std::uint64_t max_m() const { return max_m_; }
  int level_count() const { return levels_K_; }
  int i_last() const { return i_last_; }
  std::uint64_t timer() const { return t_; }
  std::size_t live_size() const { return owner_.size(); }
  const DynamicStats& stats() const { return stats_; }

  bool is_live(EdgeId e) const { return owner_.count(e) != 0; }

  int owner_level(EdgeId e) const {
    auto it = owner_.find(e);
    if (it == owner_.end())
      throw std::out_of_range("edge " + std::to_string(e) + " is not live");
    return it->second;
  }

  // Live edges of level i (1-based), in ascending id order.
  const std::map<EdgeId, Hyperedge>& level_edges(int level) const {
    return levels_.at(level - 1).edges;
  }

  const DecrementalSparsifier* level_engine(int level) const {
    const auto& slot = levels_.at(level - 1);
    return slot.engine ? &*slot.engine : nullptr;
  }

  std::pair<EdgeId, UpdateMetrics> add(EdgeSpec spec) {
    std::vector<EdgeSpec> one;
    one.push_back(std::move(spec));
    UpdateMetrics m = insert_edges(one, OpKind::Add);
    return {m.new_ids.front(), std::move(m)};
  }

  UpdateMetrics add_batch(std::vector<EdgeSpec> specs) {
    return insert_edges(specs, OpKind::AddBatch);
  }

  UpdateMetrics delete_edge(EdgeId e) {
    auto start = std::chrono::steady_clock::now();
    int level = owner_level(e);
    LevelSlot& slot = levels_[level - 1];
    RecourseReport rep = slot.engine->delete_edge(e);
    slot.edges.erase(e);
    owner_.erase(e);
    if (slot.edges.empty()) slot.engine.reset();
    UpdateMetrics m;
    m.kind = OpKind::Delete;
    m.recourse_added = rep.sparsifier_added.size();
    m.recourse_removed = rep.sparsifier_removed.size();
    m.deletions_propagated = rep.deletions_propagated;
    finish(m, start, 0, 1);
    return m;
  }

  // Deletes a set of live edges; equivalent to deleting them one by one
  // in ascending id order.  Levels are independent, so the parallel
  // scheduler may process the per-level sub-batches concurrently.
  UpdateMetrics delete_batch(std::span<const EdgeId> ids, Scheduler sched) {
    auto start = std::chrono::steady_clock::now();
    std::unordered_set<EdgeId> seen;
    for (EdgeId e : ids) {
      owner_level(e);  // throws when not live
      if (!seen.insert(e).second)
        throw std::invalid_argument("duplicate edge " + std::to_string(e) + " in batch");
    }
    std::map<int, std::vector<EdgeId>> by_level;
    for (EdgeId e : ids) by_level[owner_.at(e)].push_back(e);
    std::vector<std::pair<int, std::vector<EdgeId>*>> groups;
    groups.reserve(by_level.size());
    for (auto& [level, group] : by_level) {
      std::sort(group.begin(), group.end());
      groups.emplace_back(level, &group);
    }
    std::vector<RecourseReport> reports(groups.size());
    parallel_for(sched, groups.size(), [&](std::size_t g) {
      LevelSlot& slot = levels_[groups[g].first - 1];
      reports[g] = slot.engine->delete_batch(*groups[g].second, sched);
    });
    UpdateMetrics m;
    m.kind = OpKind::DeleteBatch;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      LevelSlot& slot = levels_[groups[g].first - 1];
      for (EdgeId e : *groups[g].second) {
        slot.edges.erase(e);
        owner_.erase(e);
      }
      if (slot.edges.empty()) slot.engine.reset();
      m.recourse_added += reports[g].sparsifier_added.size();
      m.recourse_removed += reports[g].sparsifier_removed.size();
      m.deletions_propagated += reports[g].deletions_propagated;
    }
    finish(m, start, 0, ids.size());
    return m;
  }

  // Union of all per-level sparsifiers; edge-id disjoint by the owner
  // partition.
  Hypergraph output_sparsifier() const {
    std::vector<Hypergraph> parts;
    for (int li = 0; li < i_last_ && li < levels_K_; ++li) {
      if (levels_[li].engine) parts.push_back(levels_[li].engine->current_sparsifier());
    }
    if (parts.empty()) return Hypergraph(n_);
    return union_disjoint(std::span<const Hypergraph>(parts));
  }

  std::vector<EdgeId> sparsifier_ids() const {
    std::vector<EdgeId> ids;
    for (int li = 0; li < i_last_ && li < levels_K_; ++li) {
      if (!levels_[li].engine) continue;
      std::vector<EdgeId> part = levels_[li].engine->sparsifier_ids();
      ids.insert(ids.end(), part.begin(), part.end());
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  }

 private:
  struct LevelSlot {
    std::map<EdgeId, Hyperedge> edges;  // the sub-hypergraph H_i
    std::optional<DecrementalSparsifier> engine;
  };

  UpdateMetrics insert_edges(std::vector<EdgeSpec>& specs, OpKind kind) {
    auto start = std::chrono::steady_clock::now();
    UpdateMetrics m;
    m.kind = kind;
    if (specs.empty()) return m;
    if (owner_.size() + specs.size() > max_m_)
      throw std::length_error("insertion beyond max_m=" + std::to_string(max_m_) +
                              " live edges");
    std::vector<Hyperedge> incoming;
    incoming.reserve(specs.size());
    for (EdgeSpec& s : specs) {
      Hyperedge e;
      e.id = next_id_ + incoming.size();
      e.tail = std::move(s.tail);
      e.head = std::move(s.head);
      e.weight = s.weight;
      detail::canonicalize_vertex_set(e.tail, n_, "tail");
      detail::canonicalize_vertex_set(e.head, n_, "head");
      detail::validate_weight(e.weight);
      incoming.push_back(std::move(e));
    }
    next_id_ += incoming.size();
    std::uint64_t t_old = t_;
    t_ += incoming.size();

    // Highest bit that flipped between the old and new counter value,
    // clamped to the top level; then escalated until the target level
    // can hold everything it would absorb.
    int j = static_cast<int>(std::bit_width(t_old ^ t_));
    if (j > levels_K_) j = levels_K_;
    while (j < levels_K_) {
      std::uint64_t absorbed = incoming.size() + levels_[j - 1].edges.size();
      for (int li = 0; li < j - 1; ++li) absorbed += levels_[li].edges.size();
      if ((std::uint64_t{1} << j) >= absorbed) break;
      ++j;
    }

    for (const Hyperedge& e : incoming) {
      m.new_ids.push_back(e.id);
      owner_[e.id] = j;
    }
    m.rebuilt_level = j;
    m.edges_moved = rebuild_level(j, std::move(incoming));
    if (j > i_last_) i_last_ = j;
    stats_.rebuilds_per_level[j - 1] += 1;
    stats_.edges_moved_total += m.edges_moved;
    finish(m, start, static_cast<std::uint64_t>(m.new_ids.size()), 0);
    return m;
  }

  // Moves all edges of levels < j plus `incoming` into level j and
  // rebuilds its engine.  Returns the number of edges moved up.
  std::size_t rebuild_level(int j, std::vector<Hyperedge> incoming) {
    LevelSlot& target = levels_[j - 1];
    std::size_t moved = 0;
    for (int li = 0; li < j - 1; ++li) {
      for (auto& [id, e] : levels_[li].edges) {
        owner_[id] = j;
        target.edges.emplace(id, std::move(e));
        ++moved;
      }
      levels_[li].edges.clear();
      levels_[li].engine.reset();
    }
    for (Hyperedge& e : incoming) target.edges.emplace(e.id, std::move(e));
    std::vector<Hyperedge> base;
    base.reserve(target.edges.size());
    for (const auto& [id, e] : target.edges) base.push_back(e);
    SparsifyConfig engine_cfg = cfg_;
    engine_cfg.seed = derive_seed(cfg_.seed, "rebuild", t_);
    target.engine.emplace(Hypergraph::with_edges(n_, std::move(base)), engine_cfg);
    return moved;
  }

  void finish(UpdateMetrics& m, std::chrono::steady_clock::time_point start,
              std::uint64_t adds, std::uint64_t deletes) {
    m.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    stats_.updates += adds + deletes;
    stats_.adds += adds;
    stats_.deletes += deletes;
    stats_.recourse_total += m.recourse_added + m.recourse_removed;
    stats_.wall_seconds_total += m.wall_seconds;
  }

  std::uint32_t n_ = 0;
  std::uint64_t max_m_ = 0;
  SparsifyConfig cfg_;
  int levels_K_ = 0;
  std::vector<LevelSlot> levels_;
  std::unordered_map<EdgeId, int> owner_;
  std::uint64_t t_ = 0;
  int i_last_ = 1;
  EdgeId next_id_ = 0;
  DynamicStats stats_;
};

}  // namespace dhsparse
