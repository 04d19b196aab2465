// sgm: seeded graph matching command line.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "sgm/bench.hpp"
#include "sgm/collapse.hpp"
#include "sgm/errors.hpp"
#include "sgm/io.hpp"
#include "sgm/kernels.hpp"
#include "sgm/matcher.hpp"
#include "sgm/real.hpp"
#include "sgm/synth.hpp"
#include "sgm/theory.hpp"

namespace {

using json = nlohmann::json;
using namespace sgm;
using namespace sgm::bench;

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out = ".";
  std::string kernel;
};

std::string out_path(const Globals& g, const std::string& name) {
  return (std::filesystem::path(g.out) / name).string();
}

std::string edges_text(const Graph& g) {
  std::string text;
  for (const auto& [u, v] : g.edges()) text += std::to_string(u) + " " + std::to_string(v) + "\n";
  return text;
}

std::string pairs_text(const VertexMapping& m, const IdTable* left = nullptr,
                       const IdTable* right = nullptr) {
  std::string text;
  for (Vertex u = 0; u < m.domain_size(); ++u) {
    if (!m.is_defined(u)) continue;
    const Vertex v = m.image_or_none(u);
    text += (left ? left->name(u) : std::to_string(u)) + " " +
            (right ? right->name(v) : std::to_string(v)) + "\n";
  }
  return text;
}

// Rebuilds g over every interned id so names seen only in pair files become
// isolated vertices.
Graph widen(const Graph& g, std::size_t n) { return build_graph(n, g.edges()); }

VertexMapping mapping_from_pairs(const std::vector<std::pair<Vertex, Vertex>>& pairs,
                                 std::size_t n1, std::size_t n2, const std::string& what) {
  VertexMapping m(n1, n2);
  for (const auto& [u, v] : pairs) {
    if (m.is_defined(u) && m.image_or_none(u) != v) {
      throw IoError(what + " maps one vertex twice");
    }
    try {
      m.assign(u, v);
    } catch (const DomainError& e) {
      throw IoError(what + ": " + e.what());
    }
  }
  return m;
}

json bounds_json(const theory::BoundReport& r) {
  auto threshold = [](const theory::Threshold& t) {
    return json{{"value", t.value}, {"vacuous", t.vacuous}};
  };
  json two = threshold(r.beta_req_2hop_ours);
  two["terms"] = r.beta_req_2hop_ours.terms;
  json noisy = threshold(r.beta_req_noisyseeds);
  noisy["in_window"] = r.beta_req_noisyseeds.in_window;
  return json{{"epsilon", r.epsilon},
              {"psi_max", r.psi_max},
              {"tau", r.tau},
              {"x_min_1hop", r.x_min_1hop},
              {"y_min_1hop", r.y_min_1hop},
              {"delta_1", r.delta_1},
              {"l_min", r.l_min},
              {"m_min", r.m_min},
              {"x_max_2hop", r.x_max_2hop},
              {"y_max_2hop", r.y_max_2hop},
              {"z_max", r.z_max},
              {"beta_req_1hop_ours", threshold(r.beta_req_1hop_ours)},
              {"beta_req_2hop_ours", two},
              {"beta_req_1hop_prior", threshold(r.beta_req_1hop_prior)},
              {"beta_req_noisyseeds", noisy},
              {"flags",
               {{"np2_le_inv_log_n", r.sparse_enough},
                {"nps2_ge_128_log_n", r.dense_enough},
                {"epsilon_le_third", r.epsilon_small},
                {"noisyseeds_window", r.noisyseeds_window}}}};
}

json stats_json(const theory::NeighborhoodStats& s) {
  return json{{"d_u", s.d_u},       {"a_u", s.a_u},
              {"a_v", s.a_v},       {"b_u", s.b_u},
              {"b_v", s.b_v},       {"c_uu", s.c_uu},
              {"c_vv", s.c_vv},     {"c_uv", s.c_uv},
              {"a_u_minus_v", s.a_u_minus_v}, {"b_u_minus_v", s.b_u_minus_v},
              {"b_v_minus_u", s.b_v_minus_u}, {"w1_vu", s.w1_vu}};
}

std::vector<Curve> curves_from_csv(const std::vector<CsvRow>& rows, Rescale rescale) {
  std::map<std::size_t, Curve> by_n;
  for (const CsvRow& r : rows) {
    if (r.trial_or_median != "median") continue;
    Curve& c = by_n[r.n];
    c.n = r.n;
    c.p = r.p;
    c.points.push_back({r.beta / rescale_factor(rescale, static_cast<double>(r.n), r.p), r.accuracy});
  }
  std::vector<Curve> out;
  for (auto& [n, c] : by_n) {
    std::sort(c.points.begin(), c.points.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.x < b.x; });
    out.push_back(std::move(c));
  }
  return out;
}

json collapse_json(const CollapseResult& r) {
  json j;
  j["rescale"] = rescale_name(r.rescale);
  j["n"] = json::array();
  for (const Curve& c : r.curves) j["n"].push_back(c.n);
  j["crossings"] = json::array();
  for (const Crossing& c : r.crossings) {
    json x = json::array();
    for (const auto& v : c.x) x.push_back(v ? json(*v) : json(nullptr));
    j["crossings"].push_back({{"level", c.level},
                              {"x", x},
                              {"spread", c.spread ? json(*c.spread) : json(nullptr)}});
  }
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded graph matching with partially correct seeds"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master random seed");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--kernel", g.kernel, "Force kernel ISA (scalar, avx2)");

  // synth
  auto* synth = app.add_subcommand("synth", "Sample a correlated Erdos-Renyi pair with seeds");
  ModelParams sp{1000, 0.01, 0.9, 0.5};
  synth->add_option("--n", sp.n, "Vertices")->required();
  synth->add_option("--p", sp.p, "Parent edge probability")->required();
  synth->add_option("--s", sp.s, "Edge sampling probability")->required();
  synth->add_option("--beta", sp.beta, "Fraction of correct seeds")->required();

  // match
  auto* match = app.add_subcommand("match", "Match two edge-list graphs from seed pairs");
  std::string g1_path, g2_path, seeds_path, truth_path, algo_text = "two_hop", method_text = "auto";
  unsigned iterations = 0;
  bool complete_random = false;
  match->add_option("--g1", g1_path, "First graph edge list")->required();
  match->add_option("--g2", g2_path, "Second graph edge list")->required();
  match->add_option("--seeds", seeds_path, "Seed pairs (G1 name, G2 name)")->required();
  match->add_option("--truth", truth_path, "True pairs, for scoring");
  match->add_option("--algorithm", algo_text, "one_hop, two_hop, j_hop(j), noisy_seeds(r), parallel_argmax");
  match->add_option("--iterations", iterations, "Extra re-seeding rounds");
  match->add_option("--method", method_text, "Witness method: auto, explore, bitsets, lists");
  match->add_flag("--complete-random", complete_random, "Pair leftover vertices at random");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep over (n, beta)");
  std::string config_path, sw_algo, sw_n, sw_p, sw_beta, sw_x, sw_rescale, sw_svg, sw_csv;
  double sw_s = -1;
  std::size_t sw_trials = 0;
  unsigned sw_iterations = 0;
  bool sw_timing = false;
  sweep->add_option("--config", config_path, "key = value config file");
  sweep->add_option("--algorithm", sw_algo, "Algorithm");
  sweep->add_option("--n", sw_n, "Comma-separated n values");
  sweep->add_option("--p", sw_p, "p constant or n^-gamma");
  sweep->add_option("--s", sw_s, "Edge sampling probability");
  sweep->add_option("--beta", sw_beta, "Comma-separated beta grid");
  sweep->add_option("--x", sw_x, "Comma-separated rescaled grid");
  sweep->add_option("--beta-rescale", sw_rescale, "Scale for --x");
  sweep->add_option("--trials", sw_trials, "Trials per point");
  sweep->add_option("--iterations", sw_iterations, "Extra re-seeding rounds");
  sweep->add_option("--csv", sw_csv, "CSV output path");
  sweep->add_option("--svg", sw_svg, "SVG output path");
  sweep->add_flag("--timing", sw_timing, "Fill runtime_ms");

  // collapse
  auto* collapse = app.add_subcommand("collapse", "Rescaled crossing points from a sweep CSV");
  std::string co_csv, co_rescale = "raw", co_svg;
  collapse->add_option("--csv", co_csv, "Sweep CSV")->required();
  collapse->add_option("--rescale", co_rescale, "raw, one_hop_dense, one_hop_sparse, two_hop_t1, two_hop_t2, two_hop_t3");
  collapse->add_option("--svg", co_svg, "Write rescaled curves as SVG");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate thresholds and concentration bounds (JSON)");
  ModelParams bp{10000, 0.01, 0.9, 0.5};
  bool from_instance = false;
  Vertex bu = 0, bv = 1;
  bounds->add_option("--n", bp.n)->required();
  bounds->add_option("--p", bp.p)->required();
  bounds->add_option("--s", bp.s)->required();
  bounds->add_option("--beta", bp.beta)->required();
  bounds->add_flag("--from-instance", from_instance, "Take pair statistics from a sampled instance");
  bounds->add_option("--u", bu, "First vertex of the pair");
  bounds->add_option("--v", bv, "Second vertex of the pair");

  // real
  auto* real = app.add_subcommand("real", "Subsampling protocol on an edge-list graph");
  std::string re_graph, re_algo = "two_hop";
  double re_s = 0.9, re_alpha = 0.8, re_beta = 0.6;
  std::size_t re_trials = 10;
  unsigned re_iterations = 0;
  real->add_option("--graph", re_graph, "Parent graph edge list")->required();
  real->add_option("--s", re_s);
  real->add_option("--alpha", re_alpha);
  real->add_option("--beta", re_beta);
  real->add_option("--algorithm", re_algo);
  real->add_option("--iterations", re_iterations);
  real->add_option("--trials", re_trials);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Parse an edge list and report its counts (JSON)");
  std::string in_graph;
  ingest->add_option("--graph", in_graph, "Edge list")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!g.kernel.empty()) kernels::select(kernels::parse_isa(g.kernel));

    if (*synth) {
      Rng rng = make_stream(g.seed);
      const CorrelatedInstance inst = make_correlated_pair(sp, rng);
      write_file(out_path(g, "g1.edges"), edges_text(inst.g1));
      write_file(out_path(g, "g2.edges"), edges_text(inst.g2));
      write_file(out_path(g, "truth.pairs"), pairs_text(inst.truth));
      write_file(out_path(g, "seeds.pairs"), pairs_text(inst.seeds));
      std::cout << json{{"n", sp.n},
                        {"g1_edges", inst.g1.num_edges()},
                        {"g2_edges", inst.g2.num_edges()},
                        {"correct_seeds", sp.correct_seed_count()}}
                       .dump()
                << "\n";
    } else if (*match) {
      EdgeList e1 = ingest_edge_list(g1_path);
      EdgeList e2 = ingest_edge_list(g2_path);
      const auto seed_pairs = parse_pairs(read_file(seeds_path), e1.ids, e2.ids);
      std::vector<std::pair<Vertex, Vertex>> truth_pairs;
      if (!truth_path.empty()) truth_pairs = parse_pairs(read_file(truth_path), e1.ids, e2.ids);
      const std::size_t n1 = e1.ids.size();
      const std::size_t n2 = e2.ids.size();
      const Graph g1 = widen(e1.graph, n1);
      const Graph g2 = widen(e2.graph, n2);
      const VertexMapping seeds = mapping_from_pairs(seed_pairs, n1, n2, "seed file");

      RunOptions options;
      options.threads = g.threads;
      if (method_text == "auto") options.method = WitnessMethod::automatic;
      else if (method_text == "explore") options.method = WitnessMethod::explore;
      else if (method_text == "bitsets") options.method = WitnessMethod::product_bitsets;
      else if (method_text == "lists") options.method = WitnessMethod::product_lists;
      else throw UsageError("unknown witness method '" + method_text + "'");
      if (complete_random) options.complete_random_seed = g.seed;
      const MatchResult result =
          iterate(g1, g2, seeds, Algorithm::parse(algo_text), iterations, options);
      write_file(out_path(g, "matching.pairs"), pairs_text(result.mapping, &e1.ids, &e2.ids));
      json report{{"matched", result.matched_count}, {"failure", result.failure}};
      if (!truth_pairs.empty()) {
        const VertexMapping truth = mapping_from_pairs(truth_pairs, n1, n2, "truth file");
        report["accuracy"] = accuracy(result.mapping, truth);
      }
      std::cout << report.dump() << "\n";
    } else if (*sweep) {
      ExperimentConfig cfg;
      if (!config_path.empty()) cfg = ExperimentConfig::load(config_path);
      if (!sw_algo.empty()) cfg.algorithm = Algorithm::parse(sw_algo);
      if (!sw_n.empty() || !sw_p.empty() || !sw_beta.empty() || !sw_x.empty()) {
        ExperimentConfig flags = ExperimentConfig::parse(
            (sw_n.empty() ? "" : "n = " + sw_n + "\n") + (sw_p.empty() ? "" : "p = " + sw_p + "\n") +
            (sw_beta.empty() ? "" : "beta = " + sw_beta + "\n") + (sw_x.empty() ? "" : "x = " + sw_x + "\n"));
        if (!sw_n.empty()) cfg.n_values = flags.n_values;
        if (!sw_p.empty()) cfg.p = flags.p;
        if (!sw_beta.empty()) cfg.betas = flags.betas;
        if (!sw_x.empty()) cfg.x_values = flags.x_values;
      }
      if (!sw_rescale.empty()) cfg.beta_rescale = parse_rescale(sw_rescale);
      if (sw_s >= 0) cfg.s = sw_s;
      if (sweep->count("--trials") > 0) cfg.trials = sw_trials;
      if (sweep->count("--iterations") > 0) cfg.iterations = sw_iterations;
      if (sw_timing) cfg.timing = true;
      if (app.count("--seed") > 0 || config_path.empty()) cfg.seed = g.seed;
      if (!sw_csv.empty()) cfg.csv_path = sw_csv;
      if (!sw_svg.empty()) cfg.svg_path = sw_svg;
      if (cfg.csv_path.empty()) cfg.csv_path = out_path(g, "sweep.csv");

      const SweepResult result = run_sweep(cfg, g.threads);
      emit_csv(result, cfg.csv_path);
      if (!cfg.svg_path.empty()) {
        emit_svg(rescaled_curves(result, Rescale::raw), "beta", cfg.svg_path);
      }
      std::cout << cfg.csv_path << "\n";
    } else if (*collapse) {
      const Rescale rescale = parse_rescale(co_rescale);
      auto curves = curves_from_csv(parse_csv(read_file(co_csv)), rescale);
      if (curves.size() < 2) throw DomainError("collapse needs at least two n values in the CSV");
      const CollapseResult r = collapse_curves(curves, rescale);
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      if (!co_svg.empty()) {
        const std::string label =
            rescale == Rescale::raw ? "beta" : "beta / " + rescale_name(rescale) + " scale";
        emit_svg(r.curves, label, co_svg);
      }
      std::cout << collapse_json(r).dump(2) << "\n";
    } else if (*bounds) {
      bp.validate();
      theory::NeighborhoodStats stats;
      if (from_instance) {
        if (bu == bv || bu >= bp.n || bv >= bp.n) throw DomainError("--u and --v must be distinct vertices");
        Rng rng = make_stream(g.seed);
        stats = theory::neighborhood_stats(make_correlated_pair(bp, rng), bu, bv);
      } else {
        // Expected one-hop sizes.
        const double deg = (static_cast<double>(bp.n) - 1.0) * bp.p * bp.s;
        stats.a_u_minus_v = stats.b_u_minus_v = stats.b_v_minus_u = std::floor(deg);
      }
      json out = bounds_json(theory::bound_report(bp, stats));
      out["params"] = {{"n", bp.n}, {"p", bp.p}, {"s", bp.s}, {"beta", bp.beta}};
      out["stats"] = stats_json(stats);
      out["old_criteria"] = theory::beta_threshold_old_criteria(static_cast<double>(bp.n), bp.p, bp.s);
      std::cout << out.dump(2) << "\n";
    } else if (*real) {
      const EdgeList e = ingest_edge_list(re_graph);
      const Algorithm algorithm = Algorithm::parse(re_algo);
      RunOptions options;
      options.threads = g.threads;
      std::string csv = "trial,accuracy,ceiling,common,seed\n";
      json trials = json::array();
      for (std::size_t t = 0; t < re_trials; ++t) {
        const std::uint64_t seed = derive_seed({g.seed, t});
        Rng rng = make_stream(seed);
        const RealTrialResult r =
            real_protocol(e.graph, re_s, re_alpha, re_beta, algorithm, re_iterations, rng, options);
        csv += std::to_string(t) + "," + format_double(r.trial.accuracy) + "," +
               format_double(r.ceiling) + "," + std::to_string(r.common) + "," +
               std::to_string(seed) + "\n";
        trials.push_back({{"accuracy", r.trial.accuracy}, {"ceiling", r.ceiling}, {"common", r.common}});
      }
      write_file(out_path(g, "real.csv"), csv);
      std::cout << json{{"algorithm", algorithm.name()}, {"trials", trials}}.dump() << "\n";
    } else if (*ingest) {
      const EdgeList e = ingest_edge_list(in_graph);
      json out{{"nodes", e.graph.num_vertices()},
               {"edges", e.graph.num_edges()},
               {"self_loops", e.self_loops},
               {"duplicates", e.duplicates}};
      if (e.declared_nodes) {
        out["declared_nodes"] = *e.declared_nodes;
        out["declared_edges"] = *e.declared_edges;
        out["matches_header"] =
            *e.declared_nodes == e.graph.num_vertices() && *e.declared_edges == e.graph.num_edges();
      }
      std::cout << out.dump() << "\n";
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
