#pragma once

// Command implementations behind the `dhs` tool.  Kept separate from
// argv parsing so tests can drive them in-process.
//
// Exit code convention: 0 success, 1 verification failure, 2 usage or
// parse error.  Main translates exceptions into 2.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fully_dynamic.hpp"
#include "generate.hpp"
#include "hypergraph.hpp"
#include "io.hpp"
#include "scheduler.hpp"
#include "static_sparsifier.hpp"
#include "verify.hpp"

namespace dhsparse {

inline Scheduler parse_scheduler(const std::string& s) {
  if (s == "seq") return Scheduler::Sequential;
  if (s == "par") return Scheduler::Parallel;
  throw std::invalid_argument("scheduler must be 'seq' or 'par', got '" + s + "'");
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  GenParams params;
  std::string out_path;
};

inline int cmd_gen(const GenOptions& opt, std::ostream& log) {
  Hypergraph h = random_hypergraph(opt.params);
  write_dhg_file(h, opt.out_path);
  log << "wrote " << h.size() << " edges on " << h.vertex_count() << " vertices to "
      << opt.out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------- run

struct RunOptions {
  std::string graph_path;            // empty with empty_n set = start empty
  std::optional<std::uint32_t> empty_n;
  std::string stream_path;
  double eps = 0.1;
  std::uint64_t seed = 0;
  double c_lambda = 1.0;
  double c = 3.0;
  std::optional<std::int64_t> lambda_override;
  std::optional<std::int64_t> mstar_override;
  std::optional<std::uint64_t> max_m;
  Scheduler scheduler = Scheduler::Sequential;
  std::uint64_t batch_size = 0;      // >1 regroups the stream into batches
  std::string out_json_path;         // empty = write metrics to `log`
  std::string dump_sparsifier_path;  // empty = no dump
};

namespace detail {

inline SparsifyConfig config_of(double eps, std::uint64_t seed, double c_lambda, double c,
                                std::optional<std::int64_t> lambda_override,
                                std::optional<std::int64_t> mstar_override) {
  SparsifyConfig cfg;
  cfg.eps = eps;
  cfg.seed = seed;
  cfg.c_lambda = c_lambda;
  cfg.c = c;
  cfg.lambda_override = lambda_override;
  cfg.mstar_override = mstar_override;
  return cfg;
}

// Applies one replay unit.  Mixed batches run deletions first, then
// insertions, each as one batch call.
inline void apply_group(DynamicSparsifier& ds, const UpdateGroup& g, Scheduler sched) {
  if (!g.is_batch) {
    for (const UpdateOp& op : g.ops) {
      if (op.kind == UpdateOp::Kind::Add) {
        ds.add(op.spec);
      } else {
        ds.delete_edge(op.id);
      }
    }
    return;
  }
  std::vector<EdgeId> dels;
  std::vector<EdgeSpec> adds;
  for (const UpdateOp& op : g.ops) {
    if (op.kind == UpdateOp::Kind::Del) {
      dels.push_back(op.id);
    } else {
      adds.push_back(op.spec);
    }
  }
  if (!dels.empty()) ds.delete_batch(dels, sched);
  if (!adds.empty()) ds.add_batch(std::move(adds));
}

inline std::vector<UpdateGroup> regroup(const std::vector<UpdateGroup>& groups,
                                        std::uint64_t batch_size) {
  if (batch_size <= 1) return groups;
  std::vector<UpdateGroup> out;
  UpdateGroup current{true, {}};
  for (const UpdateGroup& g : groups) {
    for (const UpdateOp& op : g.ops) {
      current.ops.push_back(op);
      if (current.ops.size() == batch_size) {
        out.push_back(std::move(current));
        current = UpdateGroup{true, {}};
      }
    }
  }
  if (!current.ops.empty()) out.push_back(std::move(current));
  return out;
}

}  // namespace detail

inline int cmd_run(const RunOptions& opt, std::ostream& log,
                   nlohmann::json* metrics_out = nullptr) {
  Hypergraph initial;
  if (!opt.graph_path.empty()) {
    initial = read_dhg_file(opt.graph_path);
  } else if (opt.empty_n) {
    initial = Hypergraph(*opt.empty_n);
  } else {
    throw std::invalid_argument("either a graph path or an explicit vertex count is required");
  }
  std::vector<UpdateGroup> stream = read_dhu_file(opt.stream_path);
  stream = detail::regroup(stream, opt.batch_size);

  std::uint64_t add_count = 0;
  for (const UpdateGroup& g : stream)
    for (const UpdateOp& op : g.ops)
      if (op.kind == UpdateOp::Kind::Add) ++add_count;
  std::uint64_t max_m = opt.max_m ? *opt.max_m : initial.size() + add_count;
  if (max_m == 0) max_m = 1;

  SparsifyConfig cfg = detail::config_of(opt.eps, opt.seed, opt.c_lambda, opt.c,
                                         opt.lambda_override, opt.mstar_override);
  DynamicSparsifier ds(initial.vertex_count(), max_m, cfg);
  if (!initial.empty()) {
    std::vector<EdgeSpec> specs;
    specs.reserve(initial.size());
    for (const auto& e : initial.edges()) specs.push_back({e.tail, e.head, e.weight});
    ds.add_batch(std::move(specs));  // initial edges get ids 0..m-1
  }
  for (const UpdateGroup& g : stream) detail::apply_group(ds, g, opt.scheduler);

  const DynamicStats& st = ds.stats();
  nlohmann::json metrics;
  metrics["config"] = {
      {"eps", opt.eps},
      {"seed", opt.seed},
      {"c_lambda", opt.c_lambda},
      {"c", opt.c},
      {"lambda_override",
       opt.lambda_override ? nlohmann::json(*opt.lambda_override) : nlohmann::json(nullptr)},
      {"mstar_override",
       opt.mstar_override ? nlohmann::json(*opt.mstar_override) : nlohmann::json(nullptr)},
      {"max_m", max_m},
      {"scheduler", opt.scheduler == Scheduler::Sequential ? "seq" : "par"},
      {"batch_size", opt.batch_size},
  };
  metrics["updates"] = st.updates;
  metrics["rebuilds"] = st.rebuilds_per_level;
  metrics["recourse_total"] = st.recourse_total;
  metrics["sparsifier_size"] = ds.sparsifier_ids().size();
  metrics["live_edges"] = ds.live_size();
  metrics["amortized_us"] =
      st.updates == 0 ? 0.0 : st.wall_seconds_total * 1e6 / static_cast<double>(st.updates);

  if (!opt.dump_sparsifier_path.empty())
    write_dhg_file(ds.output_sparsifier(), opt.dump_sparsifier_path);
  if (!opt.out_json_path.empty()) {
    std::ofstream out(opt.out_json_path);
    if (!out) throw std::runtime_error("cannot open '" + opt.out_json_path + "' for writing");
    out << metrics.dump(2) << "\n";
  } else {
    log << metrics.dump(2) << "\n";
  }
  if (metrics_out) *metrics_out = std::move(metrics);
  return 0;
}

// ------------------------------------------------------------- verify

struct VerifyOptions {
  std::string graph_path;
  double eps = 0.1;
  std::uint64_t seed = 0;
  double c_lambda = 1.0;
  double c = 3.0;
  std::optional<std::int64_t> lambda_override;
  std::optional<std::int64_t> mstar_override;
  std::string mode = "both";  // cuts | random | both
  std::size_t trials = 100;
  bool test_corrupt = false;
};

inline int cmd_verify(const VerifyOptions& opt, std::ostream& log) {
  if (opt.mode != "cuts" && opt.mode != "random" && opt.mode != "both")
    throw std::invalid_argument("mode must be cuts, random, or both");
  Hypergraph h = read_dhg_file(opt.graph_path);
  if (opt.mode != "random" && h.vertex_count() > 16)
    throw std::invalid_argument("cut enumeration limited to 16 vertices; use --mode random");
  SparsifyConfig cfg = detail::config_of(opt.eps, opt.seed, opt.c_lambda, opt.c,
                                         opt.lambda_override, opt.mstar_override);
  SparsifierBundle bundle = spectral_sparsify(h, cfg);
  Hypergraph sparsifier = bundle.sparsifier;
  if (opt.test_corrupt && !sparsifier.empty()) {
    // Scale all weights so every nonzero ratio lands outside the band.
    double f = 2.0 / (1.0 - opt.eps);
    std::vector<Hyperedge> edges = sparsifier.edges();
    for (auto& e : edges) e.weight *= f;
    sparsifier = Hypergraph::with_edges(sparsifier.vertex_count(), std::move(edges));
    log << "corrupting sparsifier: weights scaled by " << f << "\n";
  }
  log << "levels " << bundle.i_last << ", sparsifier " << sparsifier.size() << " of "
      << h.size() << " edges\n";
  bool ok = true;
  auto show = [&](const char* name, const ApproxReport& rep) {
    log << name << ": trials " << rep.trials << ", violations " << rep.violations
        << ", ratio range [" << rep.worst_ratio_low << ", " << rep.worst_ratio_high << "]\n";
    if (!rep.pass()) ok = false;
  };
  if (opt.mode == "random" || opt.mode == "both")
    show("random", check_random_vectors(h, sparsifier, opt.eps, opt.trials, opt.seed));
  if (opt.mode == "cuts" || opt.mode == "both")
    show("cuts", check_all_cuts(h, sparsifier, opt.eps));
  log << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

// -------------------------------------------------------------- bench

struct BenchCell {
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  std::uint32_t r = 4;
};

struct BenchOptions {
  std::vector<BenchCell> cells;
  double eps = 0.1;
  std::uint64_t seed = 0;
  Scheduler scheduler = Scheduler::Sequential;
  std::uint64_t batch_size = 0;
  std::uint64_t updates = 0;  // 0 = one mixed op per initial edge
  bool json = false;
};

struct BenchCellResult {
  BenchCell cell;
  std::uint64_t updates = 0;
  double amortized_us = 0.0;
  std::size_t live = 0;
  std::size_t sparsifier_size = 0;
};

// Builds a random instance edge by edge, then replays a 50/50 mix of
// insertions and deletions.  Everything is timed through the dynamic
// structure's own counters, so the result is the amortized per-update
// wall cost.
inline BenchCellResult bench_cell(const BenchCell& cell, double eps, std::uint64_t seed,
                                  Scheduler sched, std::uint64_t batch_size,
                                  std::uint64_t updates) {
  GenParams gp;
  gp.n = cell.n;
  gp.m = cell.m;
  gp.r = cell.r;
  gp.seed = derive_seed(seed, "bench-gen");
  SparsifyConfig cfg;
  cfg.eps = eps;
  cfg.seed = seed;
  DynamicSparsifier ds(cell.n, 2 * cell.m + 2, cfg);

  std::vector<EdgeId> live;
  auto flush_batch = [&](std::vector<EdgeId>& dels, std::vector<EdgeSpec>& adds) {
    if (!dels.empty()) ds.delete_batch(dels, sched);
    if (!adds.empty()) {
      UpdateMetrics um = ds.add_batch(std::move(adds));
      live.insert(live.end(), um.new_ids.begin(), um.new_ids.end());
    }
    dels.clear();
    adds = {};
  };

  for (std::uint64_t i = 0; i < cell.m; ++i) {
    detail::CounterStream rng(derive_seed(gp.seed, "edge", i));
    live.push_back(ds.add(detail::random_edge_spec(rng, gp)).first);
  }
  if (updates == 0) updates = cell.m;
  detail::CounterStream oprng(derive_seed(seed, "bench-ops"));
  std::vector<EdgeId> pending_dels;
  std::vector<EdgeSpec> pending_adds;
  for (std::uint64_t i = 0; i < updates; ++i) {
    bool do_add = (oprng.next_u64() & 1) != 0;
    if (live.empty()) do_add = true;
    if (ds.live_size() + pending_adds.size() + 1 > ds.max_m()) do_add = false;
    if (do_add) {
      detail::CounterStream rng(derive_seed(seed, "bench-add", i));
      pending_adds.push_back(detail::random_edge_spec(rng, gp));
    } else {
      std::size_t pick = static_cast<std::size_t>(oprng.next_below(live.size()));
      pending_dels.push_back(live[pick]);
      live[pick] = live.back();
      live.pop_back();
    }
    if (batch_size <= 1) {
      flush_batch(pending_dels, pending_adds);
    } else if (pending_dels.size() + pending_adds.size() >= batch_size) {
      flush_batch(pending_dels, pending_adds);
    }
  }
  flush_batch(pending_dels, pending_adds);

  BenchCellResult res;
  res.cell = cell;
  res.updates = ds.stats().updates;
  res.amortized_us = ds.stats().updates == 0
                         ? 0.0
                         : ds.stats().wall_seconds_total * 1e6 /
                               static_cast<double>(ds.stats().updates);
  res.live = ds.live_size();
  res.sparsifier_size = ds.sparsifier_ids().size();
  return res;
}

inline int cmd_bench(const BenchOptions& opt, std::ostream& log) {
  if (opt.cells.empty()) throw std::invalid_argument("no bench cells given");
  nlohmann::json rows = nlohmann::json::array();
  if (!opt.json) log << "n,m,r,updates,amortized_us,live,sparsifier\n";
  for (const BenchCell& cell : opt.cells) {
    BenchCellResult res =
        bench_cell(cell, opt.eps, opt.seed, opt.scheduler, opt.batch_size, opt.updates);
    if (opt.json) {
      rows.push_back({{"n", cell.n},
                      {"m", cell.m},
                      {"r", cell.r},
                      {"updates", res.updates},
                      {"amortized_us", res.amortized_us},
                      {"live", res.live},
                      {"sparsifier", res.sparsifier_size}});
    } else {
      log << cell.n << ',' << cell.m << ',' << cell.r << ',' << res.updates << ','
          << res.amortized_us << ',' << res.live << ',' << res.sparsifier_size << "\n";
    }
  }
  if (opt.json) log << rows.dump(2) << "\n";
  return 0;
}

}  // namespace dhsparse
