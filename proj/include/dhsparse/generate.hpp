#pragma once

// Deterministic random instance generation.  Same parameters and seed
// always produce the same hypergraph, on any platform, because every
// draw is a counter-indexed function of the seed.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypergraph.hpp"
#include "rng.hpp"

namespace dhsparse {

enum class WeightDist { Uniform, Pareto, Constant };

struct GenParams {
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  std::uint32_t r = 2;  // max |tail ∪ head|
  WeightDist dist = WeightDist::Uniform;
  double pareto_alpha = 1.5;
  double const_weight = 1.0;
  std::uint64_t seed = 0;
  bool allow_self = false;  // permit r = 1 (tail == head == one vertex)
};

namespace detail {

class CounterStream {
 public:
  explicit CounterStream(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next_u64() { return hash_combine(seed_, counter_++); }
  // Uniform in [0, bound); bound > 0.  Rejection keeps it unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }
  double next_unit() {  // (0, 1]
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// k distinct vertices from [0, n); k <= n.
inline std::vector<VertexId> distinct_vertices(CounterStream& rng, std::uint32_t n,
                                               std::uint32_t k) {
  std::vector<VertexId> out;
  out.reserve(k);
  while (out.size() < k) {
    VertexId v = static_cast<VertexId>(rng.next_below(n));
    bool fresh = true;
    for (VertexId u : out)
      if (u == v) { fresh = false; break; }
    if (fresh) out.push_back(v);
  }
  return out;
}

inline EdgeSpec random_edge_spec(CounterStream& rng, const GenParams& p) {
  EdgeSpec spec;
  if (p.r == 1) {
    VertexId v = static_cast<VertexId>(rng.next_below(p.n));
    spec.tail = {v};
    spec.head = {v};
  } else {
    // Tail up to r/2 vertices, head fills the remaining span budget;
    // tail and head may overlap, so |T ∪ H| <= a + b <= r.
    std::uint32_t tail_cap = p.r / 2 > 0 ? p.r / 2 : 1;
    std::uint32_t a = 1 + static_cast<std::uint32_t>(rng.next_below(tail_cap));
    std::uint32_t b = 1 + static_cast<std::uint32_t>(rng.next_below(p.r - a));
    spec.tail = distinct_vertices(rng, p.n, a);
    spec.head = distinct_vertices(rng, p.n, b);
  }
  switch (p.dist) {
    case WeightDist::Uniform: spec.weight = rng.next_unit(); break;
    case WeightDist::Pareto:
      spec.weight = std::pow(rng.next_unit(), -1.0 / p.pareto_alpha);
      break;
    case WeightDist::Constant: spec.weight = p.const_weight; break;
  }
  return spec;
}

}  // namespace detail

inline Hypergraph random_hypergraph(const GenParams& p) {
  if (p.n == 0) throw std::invalid_argument("vertex count must be positive");
  if (p.r > p.n)
    throw std::invalid_argument("rank bound " + std::to_string(p.r) +
                                " exceeds vertex count " + std::to_string(p.n));
  if (p.r < 2 && !p.allow_self)
    throw std::invalid_argument("rank bound below 2 produces only self-loop edges; "
                                "pass allow_self to permit them");
  if (p.r < 1) throw std::invalid_argument("rank bound must be positive");
  if (p.dist == WeightDist::Pareto && !(p.pareto_alpha > 0.0))
    throw std::invalid_argument("pareto alpha must be positive");
  if (p.dist == WeightDist::Constant && !(p.const_weight > 0.0))
    throw std::invalid_argument("constant weight must be positive");

  std::vector<EdgeSpec> specs;
  specs.reserve(p.m);
  for (std::uint64_t i = 0; i < p.m; ++i) {
    detail::CounterStream rng(derive_seed(p.seed, "edge", i));
    specs.push_back(detail::random_edge_spec(rng, p));
  }
  return Hypergraph(p.n, std::move(specs));
}

}  // namespace dhsparse
