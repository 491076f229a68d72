#pragma once

// Decremental maintenance of a spectral hypersparsifier.
//
// The structure keeps the full level stack of ths static construction
// alive: per level the surviving input edges, their pair index, the
// coreset with its pair attribution, and the sample.  Deleting an edge
// walks the stack top-down.  At each level the target is one of:
//   (a) neither coreset nor sample: drop it from the level and stop;
//   (b) sample member: drop it and pass the same target down, since it
//       also lives in every deeper level's input;
//   (c) coreset member: promote the heaviest live non-coreset edge of
//       the attributed pair bucket in its place.  The promoted edge
//       leaves the sample, so its own deletion is passed down.
// Each level contributes at most one replacement per deletion, and a
// deletion touches at most one target per level.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hypergraph.hpp"
#include "pair_index.hpp"
#include "scheduler.hpp"
#include "static_sparsifier.hpp"

namespace dhsparse {

enum class LevelDeleteCase { NotMember, Sample, Coreset };

struct LevelDeleteResult {
  LevelDeleteCase kind = LevelDeleteCase::NotMember;
  std::optional<EdgeId> replacement;   // coreset case only
  bool replacement_was_sampled = false;
};

struct LevelState {
  int level = 1;  // 1-based position in the stack
  std::unordered_set<EdgeId> input_ids;
  PairIndex index;  // over the live input edges, level-input weights
  std::unordered_set<EdgeId> coreset;
  std::unordered_map<EdgeId, PairKey> attribution;  // coreset member -> pair
  std::unordered_set<EdgeId> sample;

  // Deletes one live input edge from this level.
  LevelDeleteResult remove(EdgeId e) {
    if (!input_ids.erase(e))
      throw std::out_of_range("edge " + std::to_string(e) +
                              " is not a live input of level " + std::to_string(level));
    LevelDeleteResult res;
    if (coreset.count(e)) {
      res.kind = LevelDeleteCase::Coreset;
      PairKey p = attribution.at(e);
      coreset.erase(e);
      attribution.erase(e);
      index.remove_edge(e);
      auto r = index.heaviest_outside(p, [&](EdgeId id) { return coreset.count(id) != 0; });
      if (r) {
        coreset.insert(*r);
        attribution.emplace(*r, p);
        res.replacement = *r;
        res.replacement_was_sampled = sample.erase(*r) != 0;
      }
      // An exhausted bucket shrinks the coreset silently.
      return res;
    }
    index.remove_edge(e);
    if (sample.erase(e)) {
      res.kind = LevelDeleteCase::Sample;
      return res;
    }
    res.kind = LevelDeleteCase::NotMember;
    return res;
  }
};

struct RecourseReport {
  int deletions_propagated = 0;
  std::vector<EdgeId> sparsifier_removed;
  std::vector<EdgeId> sparsifier_added;
  // Level of each replacement, parallel to sparsifier_added.
  std::vector<int> replacement_levels;
};

class DecrementalSparsifier {
 public:
  DecrementalSparsifier(Hypergraph base, const SparsifyConfig& cfg)
      : base_(std::move(base)), cfg_(cfg) {
    validate_config(cfg_);
    if (base_.empty()) return;

    std::uint64_t m0 = base_.size();
    k_ = level_budget(m0);
    mstar_ = mstar_for(base_.vertex_count(), cfg_.eps, m0, cfg_);
    eps_effective_ = cfg_.eps / (2.0 * std::max(1, k_));
    double floor = std::max(1.0, 32.0 * cfg_.c * static_cast<double>(mstar_));

    std::vector<detail::EdgeView> view;
    view.reserve(base_.size());
    for (const auto& e : base_.edges()) view.push_back({&e, e.weight});

    int i = 0;
    while (i <= k_ && static_cast<double>(view.size()) >= floor) {
      std::int64_t lambda = lambda_for(view.size(), cfg_, eps_effective_);
      detail::LevelBuild lb = detail::build_level(view, lambda, cfg_.seed, i + 1);
      LevelState ls;
      ls.level = i + 1;
      for (const detail::EdgeView& ev : view) ls.input_ids.insert(ev.edge->id);
      ls.index = std::move(lb.index);
      ls.coreset = std::move(lb.coreset);
      ls.attribution = std::move(lb.attribution);
      ls.sample = std::move(lb.sample);
      std::vector<detail::EdgeView> next;
      next.reserve(ls.sample.size());
      for (const detail::EdgeView& ev : view) {
        if (ls.sample.count(ev.edge->id)) next.push_back({ev.edge, ev.weight * 2.0});
      }
      levels_.push_back(std::move(ls));
      view = std::move(next);
      ++i;
    }
    i_last_ = i;
    if (i_last_ == 0) {
      for (const auto& e : base_.edges()) live0_.insert(e.id);
    }
  }

  int i_last() const { return i_last_; }
  int k() const { return k_; }
  std::int64_t mstar() const { return mstar_; }
  double eps_effective() const { return eps_effective_; }
  const Hypergraph& base() const { return base_; }
  const std::vector<LevelState>& levels() const { return levels_; }

  std::size_t live_size() const {
    return i_last_ == 0 ? live0_.size() : levels_.front().input_ids.size();
  }

  bool is_live(EdgeId e) const {
    return i_last_ == 0 ? live0_.count(e) != 0 : levels_.front().input_ids.count(e) != 0;
  }

  RecourseReport delete_edge(EdgeId e) {
    RecourseReport rep;
    if (i_last_ == 0) {
      if (!live0_.erase(e))
        throw std::out_of_range("edge " + std::to_string(e) + " is not live");
      rep.sparsifier_removed.push_back(e);
      return rep;
    }
    if (!levels_.front().input_ids.count(e))
      throw std::out_of_range("edge " + std::to_string(e) + " is not live");
    EdgeId target = e;
    int processed = 0;
    for (int li = 0; li < i_last_; ++li) {
      LevelState& ls = levels_[li];
      if (!ls.input_ids.count(target)) break;
      ++processed;
      LevelDeleteResult res = ls.remove(target);
      if (res.kind == LevelDeleteCase::NotMember) break;
      if (res.kind == LevelDeleteCase::Sample) {
        if (li == i_last_ - 1) rep.sparsifier_removed.push_back(target);
        continue;  // same target lives in the next level's input
      }
      rep.sparsifier_removed.push_back(target);
      if (res.replacement) {
        rep.sparsifier_added.push_back(*res.replacement);
        rep.replacement_levels.push_back(ls.level);
        if (res.replacement_was_sampled) {
          // Leaving the final sample is itself a sparsifier change: the
          // edge re-enters as a coreset member at half the weight.
          if (li == i_last_ - 1) rep.sparsifier_removed.push_back(*res.replacement);
          target = *res.replacement;
          continue;  // the promoted edge must leave deeper levels
        }
      }
      break;
    }
    rep.deletions_propagated = processed > 0 ? processed - 1 : 0;
    return rep;
  }

  // Deletes a set of live edges.  Per level, all incoming targets are
  // first removed from the pair index in bulk (so no replacement can
  // select a deleted edge), then replacements are resolved in ascending
  // id order.  The final state matches sequential deletion of the ids
  // in ascending order; the scheduler only affects the bulk phase.
  RecourseReport delete_batch(std::span<const EdgeId> ids, Scheduler sched) {
    RecourseReport rep;
    if (ids.empty()) return rep;
    std::unordered_set<EdgeId> seen;
    for (EdgeId e : ids) {
      if (!is_live(e))
        throw std::out_of_range("edge " + std::to_string(e) + " is not live");
      if (!seen.insert(e).second)
        throw std::invalid_argument("duplicate edge " + std::to_string(e) + " in batch");
    }
    std::vector<EdgeId> batch(ids.begin(), ids.end());
    std::sort(batch.begin(), batch.end());
    if (i_last_ == 0) {
      for (EdgeId e : batch) {
        live0_.erase(e);
        rep.sparsifier_removed.push_back(e);
      }
      return rep;
    }
    for (int li = 0; li < i_last_ && !batch.empty(); ++li) {
      LevelState& ls = levels_[li];
      ls.index.remove_edges_batch(batch, sched);
      std::vector<EdgeId> coreset_targets;
      std::vector<EdgeId> emitted;
      for (EdgeId e : batch) {
        ls.input_ids.erase(e);
        if (ls.coreset.count(e)) {
          coreset_targets.push_back(e);
        } else if (ls.sample.erase(e)) {
          emitted.push_back(e);
          if (li == i_last_ - 1) rep.sparsifier_removed.push_back(e);
        }
      }
      for (EdgeId e : coreset_targets) {
        PairKey p = ls.attribution.at(e);
        ls.attribution.erase(e);
        ls.coreset.erase(e);
        rep.sparsifier_removed.push_back(e);
        auto r = ls.index.heaviest_outside(p, [&](EdgeId id) { return ls.coreset.count(id) != 0; });
        if (r) {
          ls.coreset.insert(*r);
          ls.attribution.emplace(*r, p);
          rep.sparsifier_added.push_back(*r);
          rep.replacement_levels.push_back(ls.level);
          if (ls.sample.erase(*r)) {
            emitted.push_back(*r);
            if (li == i_last_ - 1) rep.sparsifier_removed.push_back(*r);
          }
        }
      }
      std::sort(emitted.begin(), emitted.end());
      if (li < i_last_ - 1) rep.deletions_propagated += static_cast<int>(emitted.size());
      batch = std::move(emitted);
    }
    return rep;
  }

  // Ids of the current sparsifier (all coresets plus the final sample),
  // ascending.  Cheap relative to materializing the edges.
  std::vector<EdgeId> sparsifier_ids() const {
    std::vector<EdgeId> ids;
    if (i_last_ == 0) {
      ids.assign(live0_.begin(), live0_.end());
    } else {
      for (const LevelState& ls : levels_) ids.insert(ids.end(), ls.coreset.begin(), ls.coreset.end());
      const LevelState& last = levels_.back();
      ids.insert(ids.end(), last.sample.begin(), last.sample.end());
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  Hypergraph current_sparsifier() const {
    std::vector<Hyperedge> edges;
    if (i_last_ == 0) {
      edges.reserve(live0_.size());
      for (const auto& e : base_.edges())
        if (live0_.count(e.id)) edges.push_back(e);
    } else {
      for (const LevelState& ls : levels_) {
        for (EdgeId id : ls.coreset) {
          Hyperedge e = base_.at(id);
          e.weight = ls.index.weight_of(id);
          edges.push_back(std::move(e));
        }
      }
      const LevelState& last = levels_.back();
      for (EdgeId id : last.sample) {
        Hyperedge e = base_.at(id);
        e.weight = last.index.weight_of(id) * 2.0;
        edges.push_back(std::move(e));
      }
    }
    return Hypergraph::with_edges(base_.vertex_count(), std::move(edges));
  }

 private:
  Hypergraph base_;
  SparsifyConfig cfg_;
  int k_ = 0;
  std::int64_t mstar_ = 0;
  double eps_effective_ = 0.0;
  int i_last_ = 0;
  std::vector<LevelState> levels_;
  std::unordered_set<EdgeId> live0_;  // live edges when there are no levels
};

}  // namespace dhsparse
