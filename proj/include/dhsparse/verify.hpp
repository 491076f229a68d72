#pragma once

// Brute-force verification oracles.  These are deliberately independent
// of the sparsifier construction: they evaluate energies directly and
// compare against multiplicative bounds, so they can confirm or refute
// a sparsifier without trusting any of its internals.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact_sum.hpp"
#include "hypergraph.hpp"
#include "rng.hpp"
#include "static_sparsifier.hpp"

namespace dhsparse {

struct ApproxWitness {
  EnergyVector x;
  double energy_input = 0.0;
  double energy_sparsifier = 0.0;
};

struct ApproxReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  std::size_t defined_ratios = 0;  // probes where at least one energy was nonzero
  double worst_ratio_low = 1.0;    // min of energy_input / energy_sparsifier
  double worst_ratio_high = 1.0;   // max of the same ratio
  std::vector<ApproxWitness> witnesses;  // first 10 violating probes

  bool pass() const { return violations == 0; }
};

namespace detail {

// Classifies one probe.  A pair of zero energies is a pass; exactly one
// zero is a violation regardless of eps.
inline void record_probe(ApproxReport& rep, double eps, const EnergyVector& x,
                         double q_in, double q_sp) {
  rep.trials += 1;
  bool violation;
  double ratio;
  if (q_in == 0.0 && q_sp == 0.0) {
    return;  // ratio undefined, counts as a pass
  } else if (q_sp == 0.0) {
    ratio = std::numeric_limits<double>::infinity();
    violation = true;
  } else {
    ratio = q_in / q_sp;
    violation = ratio < 1.0 - eps || ratio > 1.0 + eps;
  }
  rep.defined_ratios += 1;
  if (rep.defined_ratios == 1 || rep.worst_ratio_low > ratio) rep.worst_ratio_low = ratio;
  if (rep.defined_ratios == 1 || rep.worst_ratio_high < ratio) rep.worst_ratio_high = ratio;
  if (violation) {
    rep.violations += 1;
    if (rep.witnesses.size() < 10) rep.witnesses.push_back({x, q_in, q_sp});
  }
}

}  // namespace detail

inline void require_compatible(const Hypergraph& input, const Hypergraph& sparsifier,
                               double eps) {
  if (input.vertex_count() != sparsifier.vertex_count())
    throw std::invalid_argument("vertex count mismatch between input and sparsifier");
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
}

// Probes with standard normal potentials.
inline ApproxReport check_random_vectors(const Hypergraph& input,
                                         const Hypergraph& sparsifier, double eps,
                                         std::size_t trials, std::uint64_t seed) {
  require_compatible(input, sparsifier, eps);
  ApproxReport rep;
  std::uint32_t n = input.vertex_count();
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t probe_seed = derive_seed(seed, "probe", i);
    EnergyVector x(n);
    for (std::uint32_t v = 0; v < n; ++v) x[v] = standard_normal(probe_seed, v);
    detail::record_probe(rep, eps, x, input.energy(x), sparsifier.energy(x));
  }
  return rep;
}

// Probes every 0/1 potential, i.e. every directed cut.  Exponential in
// the vertex count, hence the hard cap.
inline ApproxReport check_all_cuts(const Hypergraph& input, const Hypergraph& sparsifier,
                                   double eps) {
  require_compatible(input, sparsifier, eps);
  std::uint32_t n = input.vertex_count();
  if (n > 16)
    throw std::invalid_argument("cut enumeration limited to 16 vertices, got " +
                                std::to_string(n));
  // Per-edge incidence masks; cut values accumulate in id order exactly
  // as directed_cut_value does.
  auto masks = [](const Hypergraph& h) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> mm;
    mm.reserve(h.size());
    for (const auto& e : h.edges()) {
      std::uint32_t t = 0, hd = 0;
      for (VertexId u : e.tail) t |= (1u << u);
      for (VertexId v : e.head) hd |= (1u << v);
      mm.emplace_back(t, hd);
    }
    return mm;
  };
  auto in_masks = masks(input);
  auto sp_masks = masks(sparsifier);
  auto cut_value = [](const Hypergraph& h,
                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& mm,
                      std::uint32_t s) {
    double total = 0.0;
    for (std::size_t i = 0; i < mm.size(); ++i) {
      if ((mm[i].first & s) != 0 && (mm[i].second & ~s) != 0) total += h.edges()[i].weight;
    }
    return total;
  };
  ApproxReport rep;
  std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    double q_in = cut_value(input, in_masks, static_cast<std::uint32_t>(s));
    double q_sp = cut_value(sparsifier, sp_masks, static_cast<std::uint32_t>(s));
    EnergyVector x(n, 0.0);
    for (std::uint32_t v = 0; v < n; ++v)
      if (s & (std::uint64_t{1} << v)) x[v] = 1.0;
    detail::record_probe(rep, eps, x, q_in, q_sp);
  }
  return rep;
}

struct UnbiasednessReport {
  std::size_t runs = 0;
  double expected = 0.0;
  double mean = 0.0;
  double stderr_mean = 0.0;
  double deviation = 0.0;  // |mean - expected|
  bool pass = false;
};

// Monte-Carlo check that one sampling level preserves energy in
// expectation.  The coreset is disabled (lambda forced to 0) so that
// only the sampled, weight-doubled edges contribute.
inline UnbiasednessReport sampling_unbiasedness(const Hypergraph& h, double eps_effective,
                                                std::size_t runs, const EnergyVector& x,
                                                std::uint64_t seed) {
  if (runs < 100)
    throw std::invalid_argument("at least 100 runs required, got " + std::to_string(runs));
  SparsifyConfig cfg;
  cfg.eps = 0.5;  // irrelevant with the override below
  cfg.lambda_override = 0;
  UnbiasednessReport rep;
  rep.runs = runs;
  rep.expected = h.energy(x);
  std::vector<double> energies(runs);
  for (std::size_t i = 0; i < runs; ++i) {
    cfg.seed = derive_seed(seed, "run", i);
    auto [coreset, sample] = coreset_and_sample(h, eps_effective, cfg);
    energies[i] = coreset.energy(x) + sample.energy(x);
  }
  double sum = 0.0;
  for (double e : energies) sum += e;
  rep.mean = sum / static_cast<double>(runs);
  double ss = 0.0;
  for (double e : energies) ss += (e - rep.mean) * (e - rep.mean);
  double variance = ss / static_cast<double>(runs - 1);
  rep.stderr_mean = std::sqrt(variance / static_cast<double>(runs));
  rep.deviation = std::fabs(rep.mean - rep.expected);
  rep.pass = rep.deviation <= 4.0 * rep.stderr_mean;
  return rep;
}

// Checks that energy is additive over edge-disjoint parts.  Sums are
// accumulated error-free (see ExactSum), so equality here is exact and
// independent of how terms are grouped; probes are the supplied x plus
// `trials` random normal vectors.
inline bool decomposability_check(std::span<const Hypergraph> parts, const EnergyVector& x,
                                  std::size_t trials) {
  if (parts.empty()) return true;
  Hypergraph whole = union_disjoint(parts);  // rejects overlapping ids
  std::uint32_t n = whole.vertex_count();
  auto check_probe = [&](const EnergyVector& probe) {
    ExactSum whole_sum;
    for (const auto& e : whole.edges()) whole_sum.add(Hypergraph::edge_energy(e, probe));
    ExactSum part_total;
    for (const auto& part : parts) {
      ExactSum ps;
      for (const auto& e : part.edges()) ps.add(Hypergraph::edge_energy(e, probe));
      part_total.add(ps);
    }
    return whole_sum.same_value(part_total);
  };
  if (!check_probe(x)) return false;
  std::uint64_t seed = derive_seed(0x6164646974697665ULL, "decomposability");
  for (std::size_t t = 0; t < trials; ++t) {
    std::uint64_t probe_seed = derive_seed(seed, "probe", t);
    EnergyVector probe(n);
    for (std::uint32_t v = 0; v < n; ++v) probe[v] = standard_normal(probe_seed, v);
    if (!check_probe(probe)) return false;
  }
  return true;
}

}  // namespace dhsparse
