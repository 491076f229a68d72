#include <dhsparse/pair_index.hpp>

#include <stdexcept>
#include <vector>

#include <dhsparse/generate.hpp>
#include <dhsparse/hypergraph.hpp>
#include <dhsparse/rng.hpp>
#include <gtest/gtest.h>

using namespace dhsparse;

TEST(PairIndex, PairsAreTailCrossHead) {
  PairIndex idx;
  idx.insert(0, {1, 2}, {2, 3}, 1.0);
  auto pairs = idx.pairs_of(0);
  std::vector<PairKey> expect = {{1, 2}, {1, 3}, {2, 2}, {2, 3}};
  EXPECT_EQ(pairs, expect);
  EXPECT_EQ(idx.pair_count(), 4u);
  EXPECT_EQ(idx.entry_count(), 4u);
}

TEST(PairIndex, BucketOrderIsWeightDescIdAsc) {
  PairIndex idx;
  idx.insert(7, {0}, {1}, 5.0);
  idx.insert(2, {0}, {1}, 5.0);
  idx.insert(9, {0}, {1}, 1.0);
  const Bucket* b = idx.bucket_of({0, 1});
  ASSERT_NE(b, nullptr);
  std::vector<EdgeId> order;
  for (const BucketEntry& e : *b) order.push_back(e.id);
  // Equal weights tie-break by id ascending; lighter edges come last.
  EXPECT_EQ(order, (std::vector<EdgeId>{2, 7, 9}));
}

TEST(PairIndex, BuildMatchesIncrementalInsert) {
  Hypergraph h(4, {{{0, 1}, {2}, 2.0}, {{0}, {1, 2}, 3.0}, {{2}, {3}, 1.0}});
  PairIndex built = PairIndex::build(h);
  PairIndex inc;
  for (const auto& e : h.edges()) inc.insert(e.id, e.tail, e.head, e.weight);
  EXPECT_EQ(built.edge_count(), inc.edge_count());
  EXPECT_EQ(built.pair_count(), inc.pair_count());
  built.for_each_pair([&](const PairKey& p, const Bucket& b) {
    const Bucket* other = inc.bucket_of(p);
    ASSERT_NE(other, nullptr);
    ASSERT_EQ(b.size(), other->size());
    auto it = other->begin();
    for (const BucketEntry& e : b) {
      EXPECT_EQ(e.id, it->id);
      EXPECT_EQ(e.weight, it->weight);
      ++it;
    }
  });
}

TEST(PairIndex, RemoveDropsEveryTrace) {
  PairIndex idx;
  idx.insert(0, {0, 1}, {2}, 2.0);
  idx.insert(1, {0}, {2}, 1.0);
  idx.remove_edge(0);
  EXPECT_FALSE(idx.contains(0));
  EXPECT_TRUE(idx.contains(1));
  EXPECT_EQ(idx.edge_count(), 1u);
  // Bucket (1,2) existed only for edge 0 and must be gone entirely.
  EXPECT_EQ(idx.pair_count(), 1u);
  EXPECT_THROW(idx.remove_edge(0), std::out_of_range);
  EXPECT_THROW(idx.pairs_of(0), std::out_of_range);
  EXPECT_THROW(idx.weight_of(0), std::out_of_range);
}

TEST(PairIndex, DuplicateInsertRejected) {
  PairIndex idx;
  idx.insert(3, {0}, {1}, 1.0);
  EXPECT_THROW(idx.insert(3, {1}, {2}, 1.0), std::invalid_argument);
}

TEST(PairIndex, HeaviestOutsideSkipsExcluded) {
  PairIndex idx;
  idx.insert(0, {0}, {1}, 5.0);
  idx.insert(1, {0}, {1}, 4.0);
  idx.insert(2, {0}, {1}, 3.0);
  std::set<EdgeId> excluded = {0, 1};
  auto shun = [&](EdgeId id) { return excluded.count(id) != 0; };
  auto pick = idx.heaviest_outside({0, 1}, shun);
  ASSERT_TRUE(pick.has_value());
  EXPECT_EQ(*pick, 2u);
  excluded.insert(2);
  EXPECT_FALSE(idx.heaviest_outside({0, 1}, shun).has_value());
  auto none = [](EdgeId) { return false; };
  EXPECT_FALSE(idx.heaviest_outside({5, 6}, none).has_value());
}

TEST(PairIndex, BatchRemoveEqualsSequential) {
  GenParams p;
  p.n = 12;
  p.m = 200;
  p.r = 4;
  p.seed = 99;
  Hypergraph h = random_hypergraph(p);

  // Remove every third edge, batch vs one-by-one, under both schedulers.
  std::vector<EdgeId> victims;
  for (EdgeId id = 0; id < 200; id += 3) victims.push_back(id);

  for (Scheduler sched : {Scheduler::Sequential, Scheduler::Parallel}) {
    PairIndex batch = PairIndex::build(h);
    batch.remove_edges_batch(victims, sched);

    PairIndex seq = PairIndex::build(h);
    for (EdgeId id : victims) seq.remove_edge(id);

    EXPECT_EQ(batch.edge_count(), seq.edge_count());
    EXPECT_EQ(batch.pair_count(), seq.pair_count());
    EXPECT_EQ(batch.entry_count(), seq.entry_count());
    batch.for_each_pair([&](const PairKey& key, const Bucket& b) {
      const Bucket* other = seq.bucket_of(key);
      ASSERT_NE(other, nullptr);
      ASSERT_EQ(b.size(), other->size());
      auto it = other->begin();
      for (const BucketEntry& e : b) {
        EXPECT_EQ(e.id, it->id);
        ++it;
      }
    });
  }
}

TEST(PairIndex, BatchRemoveValidatesInput) {
  PairIndex idx;
  idx.insert(0, {0}, {1}, 1.0);
  std::vector<EdgeId> dup = {0, 0};
  std::vector<EdgeId> unknown = {5};
  EXPECT_THROW(idx.remove_edges_batch(dup, Scheduler::Sequential), std::invalid_argument);
  EXPECT_THROW(idx.remove_edges_batch(unknown, Scheduler::Sequential), std::out_of_range);
  // Failed batch must not have mutated anything.
  EXPECT_TRUE(idx.contains(0));
}
