#pragma once

// Directed, weighted hypergraphs and their quadratic energy form.
//
// A hyperedge has a non-empty tail set and a non-empty head set (the
// two may overlap).  For a vertex potential x, an edge contributes
//     w * max(0, max_{u in tail} x[u] - min_{v in head} x[v])^2
// and the energy of a hypergraph is the sum over its edges.  Edges are
// stored sorted by id and all aggregates accumulate in ascending id
// order, so every derived quantity is a deterministic function of the
// edge set alone.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dhsparse {

using VertexId = std::uint32_t;
using EdgeId = std::uint64_t;
using EnergyVector = std::vector<double>;

// Tail/head/weight triple without an id; used for construction and for
// insertion APIs that assign ids themselves.
struct EdgeSpec {
  std::vector<VertexId> tail;
  std::vector<VertexId> head;
  double weight = 1.0;
};

struct Hyperedge {
  EdgeId id = 0;
  std::vector<VertexId> tail;  // sorted, unique, non-empty
  std::vector<VertexId> head;  // sorted, unique, non-empty
  double weight = 1.0;

  // Number of distinct incident vertices, |tail ∪ head|.
  std::size_t span_size() const {
    std::size_t count = 0;
    std::size_t i = 0, j = 0;
    while (i < tail.size() || j < head.size()) {
      if (j == head.size() || (i < tail.size() && tail[i] < head[j])) {
        ++i;
      } else if (i == tail.size() || head[j] < tail[i]) {
        ++j;
      } else {
        ++i;
        ++j;
      }
      ++count;
    }
    return count;
  }

  bool operator==(const Hyperedge& o) const {
    return id == o.id && tail == o.tail && head == o.head && weight == o.weight;
  }
};

namespace detail {

inline void canonicalize_vertex_set(std::vector<VertexId>& vs, std::uint32_t n,
                                    const char* what) {
  if (vs.empty()) throw std::invalid_argument(std::string(what) + " set is empty");
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  if (vs.back() >= n)
    throw std::out_of_range(std::string(what) + " vertex " + std::to_string(vs.back()) +
                            " out of range for n=" + std::to_string(n));
}

inline void validate_weight(double w) {
  if (!(w > 0.0) || !std::isfinite(w))
    throw std::invalid_argument("edge weight must be positive and finite");
}

}  // namespace detail

class Hypergraph {
 public:
  Hypergraph() = default;

  explicit Hypergraph(std::uint32_t n) : n_(n) {}

  // Builds from specs; edge ids are assigned 0..m-1 in input order.
  Hypergraph(std::uint32_t n, std::vector<EdgeSpec> specs) : n_(n) {
    edges_.reserve(specs.size());
    EdgeId next = 0;
    for (auto& s : specs) {
      Hyperedge e;
      e.id = next++;
      e.tail = std::move(s.tail);
      e.head = std::move(s.head);
      e.weight = s.weight;
      detail::canonicalize_vertex_set(e.tail, n_, "tail");
      detail::canonicalize_vertex_set(e.head, n_, "head");
      detail::validate_weight(e.weight);
      edges_.push_back(std::move(e));
    }
  }

  // Builds from fully-formed edges with arbitrary distinct ids.
  static Hypergraph with_edges(std::uint32_t n, std::vector<Hyperedge> edges) {
    Hypergraph h(n);
    for (auto& e : edges) {
      detail::canonicalize_vertex_set(e.tail, n, "tail");
      detail::canonicalize_vertex_set(e.head, n, "head");
      detail::validate_weight(e.weight);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Hyperedge& a, const Hyperedge& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < edges.size(); ++i) {
      if (edges[i - 1].id == edges[i].id)
        throw std::invalid_argument("duplicate edge id " + std::to_string(edges[i].id));
    }
    h.edges_ = std::move(edges);
    return h;
  }

  std::uint32_t vertex_count() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  // Edges in ascending id order.
  const std::vector<Hyperedge>& edges() const { return edges_; }

  const Hyperedge* find(EdgeId id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Hyperedge& e, EdgeId v) { return e.id < v; });
    if (it == edges_.end() || it->id != id) return nullptr;
    return &*it;
  }

  const Hyperedge& at(EdgeId id) const {
    const Hyperedge* e = find(id);
    if (!e) throw std::out_of_range("unknown edge id " + std::to_string(id));
    return *e;
  }

  // Largest |tail ∪ head| over all edges; 0 for an empty hypergraph.
  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& e : edges_) r = std::max(r, e.span_size());
    return r;
  }

  // Contribution of one edge to the energy at potential x.
  static double edge_energy(const Hyperedge& e, const EnergyVector& x) {
    double tail_max = -std::numeric_limits<double>::infinity();
    for (VertexId u : e.tail) tail_max = std::max(tail_max, x[u]);
    double head_min = std::numeric_limits<double>::infinity();
    for (VertexId v : e.head) head_min = std::min(head_min, x[v]);
    double d = tail_max - head_min;
    return d > 0.0 ? e.weight * (d * d) : 0.0;
  }

  double energy(const EnergyVector& x) const {
    if (x.size() != n_)
      throw std::invalid_argument("potential vector length " + std::to_string(x.size()) +
                                  " does not match vertex count " + std::to_string(n_));
    double q = 0.0;
    for (const auto& e : edges_) q += edge_energy(e, x);
    return q;
  }

  // Total weight of edges leaving s: tail meets s and head is not
  // contained in s.  Equals energy at the indicator vector of s.
  double directed_cut_value(const std::vector<VertexId>& s) const {
    std::vector<char> in_s(n_, 0);
    for (VertexId v : s) {
      if (v >= n_) throw std::out_of_range("cut vertex " + std::to_string(v) + " out of range");
      in_s[v] = 1;
    }
    double total = 0.0;
    for (const auto& e : edges_) {
      bool tail_meets = false;
      for (VertexId u : e.tail) {
        if (in_s[u]) { tail_meets = true; break; }
      }
      if (!tail_meets) continue;
      bool head_escapes = false;
      for (VertexId v : e.head) {
        if (!in_s[v]) { head_escapes = true; break; }
      }
      if (head_escapes) total += e.weight;
    }
    return total;
  }

  bool operator==(const Hypergraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  std::uint32_t n_ = 0;
  std::vector<Hyperedge> edges_;
};

inline EnergyVector indicator(const std::vector<VertexId>& s, std::uint32_t n) {
  EnergyVector x(n, 0.0);
  for (VertexId v : s) {
    if (v >= n) throw std::out_of_range("indicator vertex out of range");
    x[v] = 1.0;
  }
  return x;
}

// Union of edge-id-disjoint hypergraphs over the same vertex set.
inline Hypergraph union_disjoint(std::span<const Hypergraph> parts) {
  if (parts.empty()) throw std::invalid_argument("union of zero hypergraphs is undefined");
  std::uint32_t n = parts[0].vertex_count();
  std::vector<Hyperedge> merged;
  for (const auto& p : parts) {
    if (p.vertex_count() != n)
      throw std::invalid_argument("vertex count mismatch in union");
    merged.insert(merged.end(), p.edges().begin(), p.edges().end());
  }
  return Hypergraph::with_edges(n, std::move(merged));  // rejects duplicate ids
}

inline Hypergraph union_disjoint(std::initializer_list<Hypergraph> parts) {
  std::vector<Hypergraph> v(parts);
  return union_disjoint(std::span<const Hypergraph>(v));
}

}  // namespace dhsparse
