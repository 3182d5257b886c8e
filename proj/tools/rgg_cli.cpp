// Command-line front end: graph generation, property detection with
// witnesses, Monte Carlo sweeps, threshold localization, exponent fits, and
// pinned reproduction recipes. Exit codes: 0 success, 2 usage/validation,
// 3 I/O failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rgg/detectors.hpp"
#include "rgg/montecarlo.hpp"
#include "rgg/pointset_io.hpp"
#include "rgg/serialize.hpp"
#include "rgg/strfmt.hpp"
#include "rgg/version.hpp"

namespace fs = std::filesystem;
using rgg::Json;
using rgg::Metric;
using rgg::Property;

namespace {

std::string g_command_line;

Json meta_json(std::uint64_t seed) {
  Json m;
  m["version"] = rgg::kVersion;
  m["command"] = g_command_line;
  m["seed"] = seed;
  return m;
}

std::string csv_meta(std::uint64_t seed) {
  std::ostringstream out;
  out << "# version: " << rgg::kVersion << '\n';
  out << "# command: " << g_command_line << '\n';
  out << "# seed: " << seed << '\n';
  return out.str();
}

Metric parse_metric(const std::string& name) {
  if (name == "square") return Metric::Square;
  if (name == "torus") return Metric::Torus;
  throw rgg::Error("metric must be 'square' or 'torus'");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw rgg::IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw rgg::IoError("write failed: " + path);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) std::cout << text;
  else write_text(out_path, text);
}

// ---------------------------------------------------------------------------
// detect
// ---------------------------------------------------------------------------

Json detect_verdict(const rgg::RggGraph& g, Property prop) {
  using Kind = rgg::TriStateDecision::Kind;
  Json j;
  j["property"] = rgg::property_name(prop.kind);
  j["k"] = prop.k;
  j["n"] = g.n();
  j["r"] = g.r();
  j["metric"] = rgg::metric_name(g.metric());

  switch (prop.kind) {
    case rgg::PropertyKind::HasEdge: {
      const bool have = !g.edges().empty();
      j["result"] = have;
      if (have) j["witness"] = Json::array({g.edges()[0].first, g.edges()[0].second});
      break;
    }
    case rgg::PropertyKind::ConnectedK: {
      j["result"] = rgg::has_connected_k(g, prop.k);
      j["max_component_size"] = rgg::max_component_size(g);
      break;
    }
    case rgg::PropertyKind::CliqueK: {
      const auto tri = rgg::has_clique_k(g, prop.k);
      j["result"] = tri.kind == Kind::Yes ? "yes" : "no";
      if (tri.kind == Kind::Yes) j["witness"] = tri.witness;
      break;
    }
    case rgg::PropertyKind::Plane: {
      const auto pairs = rgg::crossing_pairs(g, true);
      j["result"] = pairs.empty();
      if (!pairs.empty()) {
        const auto& cp = pairs[0];
        j["crossing"] = Json{{"e1", {cp.e1.first, cp.e1.second}},
                             {"e2", {cp.e2.first, cp.e2.second}}};
        const auto inv = rgg::check_crossing_invariants(g, cp);
        j["self_checks"] = Json{{"clm1_adjacent_sides", inv.adjacent_sides},
                                {"two_hop_pairwise_2r", inv.pairwise_2r},
                                {"two_hop_hub_within_r", inv.hub_within_r}};
      }
      break;
    }
    case rgg::PropertyKind::Planar: {
      const auto res = rgg::check_planarity(g, true);
      j["result"] = res.planar;
      if (!res.planar) {
        Json edges = Json::array();
        std::vector<rgg::VertexId> verts;
        for (const auto& [a, b] : res.kuratowski) {
          edges.push_back(Json::array({a, b}));
          verts.push_back(a);
          verts.push_back(b);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        j["kuratowski_edges"] = std::move(edges);
        j["kuratowski_vertices"] = verts;
      }
      break;
    }
    case rgg::PropertyKind::HasFreeEdge:
    case rgg::PropertyKind::AllEdgesFree: {
      const auto free = rgg::free_edges(g);
      const bool result = prop.kind == rgg::PropertyKind::HasFreeEdge
                              ? !free.empty()
                              : free.size() == g.edges().size();
      j["result"] = result;
      j["free_edge_count"] = free.size();
      j["edge_count"] = g.edges().size();
      break;
    }
    case rgg::PropertyKind::IndependentK: {
      const auto tri = rgg::independent_k(g, prop.k);
      if (tri.kind == Kind::Yes) {
        j["result"] = "yes";
        j["witness"] = tri.witness;
      } else if (tri.kind == Kind::No) {
        j["result"] = "no";
        j["certificate"] = Json{{"description", tri.certificate},
                                {"value", tri.certificate_value}};
      } else {
        j["result"] = "unknown";
        j["bounds"] = Json{{"lower", tri.lower}, {"upper", tri.upper}};
      }
      break;
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// recipes
// ---------------------------------------------------------------------------

std::uint64_t property_tag(Property p) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char* c = rgg::property_name(p.kind); *c; ++c) {
    h ^= static_cast<std::uint64_t>(*c);
    h *= 1099511628211ULL;
  }
  h ^= static_cast<std::uint64_t>(p.k);
  return h * 1099511628211ULL;
}

std::string property_key(Property p) {
  std::string key = rgg::property_name(p.kind);
  if (rgg::property_has_k(p.kind)) key += std::to_string(p.k);
  return key;
}

struct SlopeTarget {
  Property prop;
  double predicted_slope = 0.0;
};

constexpr std::int64_t kRecipeTrialsPerProbe = 400;
constexpr double kRecipeTolerance = 0.02;
constexpr double kRecipeBracketFactor = 8.0;

void run_exponent_recipe(const std::string& dir, Metric metric,
                         const std::vector<SlopeTarget>& targets,
                         std::uint64_t master_seed, bool resume) {
  const std::vector<std::int64_t> ns{1024, 2048, 4096, 8192, 16384, 32768};
  for (const auto& target : targets) {
    const std::string key = property_key(target.prop);
    std::ostringstream rows;
    rows << csv_meta(master_seed) << rgg::kSweepCsvHeader << '\n';

    std::vector<rgg::FitPoint> points;
    for (const std::int64_t n : ns) {
      const std::string tpath = dir + "/threshold_" + key + "_n" +
                                std::to_string(n) + ".json";
      if (resume && fs::exists(tpath)) {
        std::ifstream in(tpath);
        Json j;
        in >> j;
        points.push_back({n, rgg::threshold_from_json(j).r_star});
        continue;
      }
      const double predicted = std::pow(static_cast<double>(n), target.predicted_slope);
      rgg::ThresholdParams tp;
      tp.n = n;
      tp.metric = metric;
      tp.property = target.prop;
      tp.trials_per_probe = kRecipeTrialsPerProbe;
      tp.tolerance = kRecipeTolerance;
      tp.master_seed = rgg::derive_seed(master_seed ^ property_tag(target.prop),
                                        static_cast<std::uint64_t>(n));
      tp.r_lo = predicted / kRecipeBracketFactor;
      tp.r_hi = predicted * kRecipeBracketFactor;
      const auto res = rgg::locate_threshold(tp);
      for (const auto& row : res.probes) rows << rgg::to_csv_row(row) << '\n';

      Json j = rgg::to_json(res.estimate);
      j["meta"] = meta_json(master_seed);
      write_text(tpath, j.dump(2) + "\n");
      points.push_back({n, res.estimate.r_star});
    }

    const auto fit = rgg::fit_exponent(points);
    Json j = rgg::to_json(fit);
    j["meta"] = meta_json(master_seed);
    j["predicted_slope"] = target.predicted_slope;
    write_text(dir + "/fit_" + key + ".json", j.dump(2) + "\n");
    write_text(dir + "/rows_" + key + ".csv", rows.str());
  }
}

void run_free_edge_recipe(const std::string& dir, std::uint64_t master_seed) {
  const std::int64_t n = 10000;
  const Metric metric = Metric::Torus;
  std::ostringstream rows;
  rows << csv_meta(master_seed) << rgg::kSweepCsvHeader << '\n';

  // sparse regime: with r = 1e-5 there is almost surely no edge at all
  const auto sparse = rgg::estimate(
      {n, 1e-5, metric, {rgg::PropertyKind::HasEdge, 0}, 200, master_seed});
  rows << rgg::to_csv_row(sparse) << '\n';

  // plane regime: every edge free, conditioned on having an edge
  const double r_plane = std::pow(static_cast<double>(n), -0.8);
  const auto counts = rgg::parallel_tally(
      200, rgg::resolve_workers(0), 2,
      [&](std::int64_t t, std::vector<std::int64_t>& acc) {
        rgg::GraphConfig cfg{n, r_plane, metric,
                             rgg::derive_seed(master_seed, static_cast<std::uint64_t>(t))};
        const auto g = rgg::generate(cfg);
        if (g.edges().empty()) return;
        acc[0] += 1;
        acc[1] += rgg::all_edges_free(g) ? 1 : 0;
      });

  // free-edge regime
  const double r_free = std::pow(static_cast<double>(n), -0.58);
  const auto free_row = rgg::estimate(
      {n, r_free, metric, {rgg::PropertyKind::HasFreeEdge, 0}, 200, master_seed});
  rows << rgg::to_csv_row(free_row) << '\n';

  // dense regime: sampled long edges are crossed
  const std::int64_t dense_n = 5000;
  const double dense_r = 0.15;
  const std::int64_t dense_seeds = 100;
  const std::int64_t samples_per_graph = 100;
  const auto long_counts = rgg::parallel_tally(
      dense_seeds, rgg::resolve_workers(0), 2,
      [&](std::int64_t t, std::vector<std::int64_t>& acc) {
        rgg::GraphConfig cfg{dense_n, dense_r, metric,
                             rgg::derive_seed(master_seed ^ 0x10ad5eedULL,
                                              static_cast<std::uint64_t>(t))};
        const auto g = rgg::generate(cfg);
        const auto longs = rgg::long_edges(g);
        if (longs.empty()) return;
        rgg::Xoshiro256pp pick(rgg::derive_seed(master_seed ^ 0x5a4d91eULL,
                                                static_cast<std::uint64_t>(t)));
        for (std::int64_t s = 0; s < samples_per_graph; ++s) {
          const auto idx = static_cast<std::size_t>(pick.uniform01() *
                                                    static_cast<double>(longs.size()));
          const auto& e = longs[std::min(idx, longs.size() - 1)];
          acc[0] += 1;
          acc[1] += rgg::edge_is_free(g, e) ? 0 : 1;
        }
      });

  Json j;
  j["meta"] = meta_json(master_seed);
  j["n"] = n;
  j["has_edge_at_r_1e-5"] = sparse.p_hat;
  j["all_free_given_edge"] =
      Json{{"r", r_plane},
           {"trials_with_edge", counts[0]},
           {"all_free", counts[1]},
           {"p", counts[0] > 0 ? static_cast<double>(counts[1]) /
                                     static_cast<double>(counts[0])
                               : 0.0}};
  j["has_free_edge"] = Json{{"r", r_free}, {"p", free_row.p_hat}};
  j["long_edges"] = Json{{"n", dense_n},
                         {"r", dense_r},
                         {"sampled", long_counts[0]},
                         {"crossed", long_counts[1]},
                         {"crossed_fraction",
                          long_counts[0] > 0
                              ? static_cast<double>(long_counts[1]) /
                                    static_cast<double>(long_counts[0])
                              : 0.0}};
  write_text(dir + "/free_edge_regimes.json", j.dump(2) + "\n");
  write_text(dir + "/rows_free-edge.csv", rows.str());
}

void run_is_upper_recipe(const std::string& dir, std::uint64_t master_seed) {
  const std::int64_t n = 10000;
  const int k = 1000;
  const double r = std::sqrt(6.0 * std::log(std::numbers::e * static_cast<double>(n) /
                                            static_cast<double>(k)) /
                             static_cast<double>(k));
  const std::int64_t seeds = 200;
  const auto counts = rgg::parallel_tally(
      seeds, rgg::resolve_workers(0), 2,
      [&](std::int64_t t, std::vector<std::int64_t>& acc) {
        rgg::GraphConfig cfg{n, r, Metric::Torus,
                             rgg::derive_seed(master_seed, static_cast<std::uint64_t>(t))};
        const auto g = rgg::generate(cfg);
        const auto tri = rgg::independent_k(g, k);
        if (tri.kind == rgg::TriStateDecision::Kind::No) {
          acc[0] += 1;
          acc[1] = std::max(acc[1], tri.certificate_value);
        }
      });
  Json j;
  j["meta"] = meta_json(master_seed);
  j["n"] = n;
  j["k"] = k;
  j["r"] = r;
  j["seeds"] = seeds;
  j["certified_no"] = counts[0];
  j["certified_no_rate"] =
      static_cast<double>(counts[0]) / static_cast<double>(seeds);
  write_text(dir + "/is_upper.json", j.dump(2) + "\n");
}

void run_is_lower_recipe(const std::string& dir, std::uint64_t master_seed) {
  const std::int64_t n = 10000;
  const int k = 271;  // floor(n / (4 ln n))
  const double r = 1.0 / (2.0 * std::sqrt(static_cast<double>(k)));
  const std::int64_t seeds = 200;
  const auto counts = rgg::parallel_tally(
      seeds, rgg::resolve_workers(0), 1,
      [&](std::int64_t t, std::vector<std::int64_t>& acc) {
        rgg::GraphConfig cfg{n, r, Metric::Torus,
                             rgg::derive_seed(master_seed, static_cast<std::uint64_t>(t))};
        const auto g = rgg::generate(cfg);
        if (rgg::grid_witness_is(g, k).has_value()) acc[0] += 1;
      });
  Json j;
  j["meta"] = meta_json(master_seed);
  j["n"] = n;
  j["k"] = k;
  j["r"] = r;
  j["seeds"] = seeds;
  j["witness_found"] = counts[0];
  j["witness_success_rate"] =
      static_cast<double>(counts[0]) / static_cast<double>(seeds);
  write_text(dir + "/is_lower.json", j.dump(2) + "\n");
}

void run_recipe(const std::string& name, const std::string& out_dir,
                std::uint64_t master_seed, bool resume) {
  if (out_dir.empty()) throw rgg::Error("--recipe requires --out <dir>");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw rgg::IoError("cannot create output directory: " + out_dir);

  if (name == "connected-k") {
    run_exponent_recipe(out_dir, Metric::Square,
                        {{{rgg::PropertyKind::ConnectedK, 3}, -3.0 / 4.0},
                         {{rgg::PropertyKind::ConnectedK, 4}, -2.0 / 3.0}},
                        master_seed, resume);
  } else if (name == "clique-k") {
    run_exponent_recipe(out_dir, Metric::Square,
                        {{{rgg::PropertyKind::HasEdge, 0}, -1.0},
                         {{rgg::PropertyKind::CliqueK, 3}, -3.0 / 4.0},
                         {{rgg::PropertyKind::CliqueK, 5}, -5.0 / 8.0}},
                        master_seed, resume);
  } else if (name == "plane") {
    run_exponent_recipe(out_dir, Metric::Square,
                        {{{rgg::PropertyKind::Plane, 0}, -2.0 / 3.0}},
                        master_seed, resume);
  } else if (name == "planar") {
    run_exponent_recipe(out_dir, Metric::Square,
                        {{{rgg::PropertyKind::Planar, 0}, -5.0 / 8.0}},
                        master_seed, resume);
  } else if (name == "free-edge-regimes") {
    run_free_edge_recipe(out_dir, master_seed);
  } else if (name == "is-upper") {
    run_is_upper_recipe(out_dir, master_seed);
  } else if (name == "is-lower") {
    run_is_lower_recipe(out_dir, master_seed);
  } else {
    throw rgg::Error("unknown recipe: " + name +
                     " (expected connected-k, clique-k, plane, planar, "
                     "free-edge-regimes, is-upper, is-lower)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::ostringstream cmd;
  for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
  g_command_line = cmd.str();

  CLI::App app{"random geometric graph threshold toolkit"};
  app.set_version_flag("--version", rgg::kVersion);
  app.require_subcommand(0, 1);

  std::string recipe_name, recipe_out;
  std::uint64_t recipe_seed = 1729;
  bool recipe_resume = false;
  app.add_option("--recipe", recipe_name,
                 "run a pinned reproduction recipe: connected-k, clique-k, "
                 "plane, planar, free-edge-regimes, is-upper, is-lower");
  app.add_option("--out", recipe_out, "output directory for --recipe");
  app.add_option("--seed", recipe_seed, "master seed for --recipe");
  app.add_flag("--resume", recipe_resume,
               "reuse threshold JSONs already present in --out");

  // generate
  auto* gen = app.add_subcommand("generate", "write a seeded point set");
  std::int64_t gen_n = 0;
  double gen_r = 0.0;
  std::string gen_metric = "square", gen_out;
  std::uint64_t gen_seed = 0;
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--r", gen_r)->required();
  gen->add_option("--metric", gen_metric)->check(CLI::IsMember({"square", "torus"}));
  gen->add_option("--seed", gen_seed)->required();
  gen->add_option("--out", gen_out)->required();

  // detect
  auto* det = app.add_subcommand("detect", "decide a property, with witness");
  std::string det_in, det_metric = "square", det_prop, det_out;
  std::int64_t det_n = 0;
  double det_r = 0.0;
  std::uint64_t det_seed = 0;
  int det_k = 0;
  det->add_option("--in", det_in, "point-set file");
  det->add_option("--n", det_n);
  det->add_option("--r", det_r);
  det->add_option("--metric", det_metric)->check(CLI::IsMember({"square", "torus"}));
  det->add_option("--seed", det_seed);
  det->add_option("--property", det_prop)->required();
  det->add_option("--k", det_k);
  det->add_option("--out", det_out);

  // sweep
  auto* sw = app.add_subcommand("sweep", "probability estimates over a radius grid");
  std::int64_t sw_n = 0, sw_trials = 0;
  std::string sw_metric = "square", sw_prop, sw_out;
  int sw_k = 0, sw_steps = 0;
  double sw_rmin = 0.0, sw_rmax = 0.0;
  std::vector<double> sw_grid;
  std::uint64_t sw_seed = 0;
  sw->add_option("--n", sw_n)->required();
  sw->add_option("--metric", sw_metric)->check(CLI::IsMember({"square", "torus"}));
  sw->add_option("--property", sw_prop)->required();
  sw->add_option("--k", sw_k);
  sw->add_option("--trials", sw_trials)->required();
  sw->add_option("--seed", sw_seed)->required();
  sw->add_option("--r-grid", sw_grid, "explicit radii (comma separated)")->delimiter(',');
  sw->add_option("--r-min", sw_rmin);
  sw->add_option("--r-max", sw_rmax);
  sw->add_option("--r-steps", sw_steps, "log-spaced grid size");
  sw->add_option("--out", sw_out);

  // threshold
  auto* th = app.add_subcommand("threshold", "bisect for the 50% radius");
  std::int64_t th_n = 0, th_trials = 0;
  std::string th_metric = "square", th_prop, th_out, th_probes;
  int th_k = 0;
  double th_target = 0.5, th_tol = 0.02, th_rlo = 0.0, th_rhi = 0.0;
  std::uint64_t th_seed = 0;
  th->add_option("--n", th_n)->required();
  th->add_option("--metric", th_metric)->check(CLI::IsMember({"square", "torus"}));
  th->add_option("--property", th_prop)->required();
  th->add_option("--k", th_k);
  th->add_option("--target-p", th_target);
  th->add_option("--trials", th_trials)->required();
  th->add_option("--tol", th_tol);
  th->add_option("--r-lo", th_rlo)->required();
  th->add_option("--r-hi", th_rhi)->required();
  th->add_option("--seed", th_seed)->required();
  th->add_option("--out", th_out);
  th->add_option("--probes-csv", th_probes, "write probe rows as CSV");

  // fit
  auto* ft = app.add_subcommand("fit", "log-log slope of r_star against n");
  std::vector<std::string> ft_inputs;
  std::string ft_out;
  ft->add_option("inputs", ft_inputs, "threshold JSON files")->required();
  ft->add_option("--out", ft_out);

  // crossings
  auto* cr = app.add_subcommand("crossings", "crossing-count moments");
  std::int64_t cr_n = 0, cr_trials = 0;
  double cr_r = 0.0;
  std::string cr_metric = "square", cr_out;
  std::uint64_t cr_seed = 0;
  cr->add_option("--n", cr_n)->required();
  cr->add_option("--r", cr_r)->required();
  cr->add_option("--metric", cr_metric)->check(CLI::IsMember({"square", "torus"}));
  cr->add_option("--trials", cr_trials)->required();
  cr->add_option("--seed", cr_seed)->required();
  cr->add_option("--out", cr_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (!recipe_name.empty()) {
      run_recipe(recipe_name, recipe_out, recipe_seed, recipe_resume);
      return 0;
    }

    if (gen->parsed()) {
      const rgg::GraphConfig cfg{gen_n, gen_r, parse_metric(gen_metric), gen_seed};
      const auto g = rgg::generate(cfg);
      rgg::write_pointset(gen_out, {g.points(), g.r(), g.metric()});
      std::cout << "# version: " << rgg::kVersion << "\n# command: "
                << g_command_line << "\n# seed: " << gen_seed << "\nwrote "
                << gen_out << " (" << g.n() << " points, " << g.edges().size()
                << " edges)\n";
      return 0;
    }

    if (det->parsed()) {
      const Property prop = rgg::parse_property(det_prop, det_k);
      std::optional<rgg::RggGraph> g;
      std::uint64_t seed = 0;
      if (!det_in.empty()) {
        g.emplace(rgg::load_graph(det_in));
      } else {
        if (det_n <= 0 || det_r <= 0.0)
          throw rgg::Error("detect needs --in or (--n, --r, --metric, --seed)");
        seed = det_seed;
        g.emplace(rgg::generate({det_n, det_r, parse_metric(det_metric), det_seed}));
      }
      Json j = detect_verdict(*g, prop);
      j["meta"] = meta_json(seed);
      emit(det_out, j.dump(2) + "\n");
      return 0;
    }

    if (sw->parsed()) {
      const Property prop = rgg::parse_property(sw_prop, sw_k);
      std::vector<double> grid = sw_grid;
      if (grid.empty()) {
        if (sw_steps < 1 || !(sw_rmin > 0.0) || !(sw_rmax > sw_rmin))
          throw rgg::Error("sweep needs --r-grid or --r-min/--r-max/--r-steps");
        for (int i = 0; i < sw_steps; ++i) {
          const double f = sw_steps == 1 ? 0.0
                                         : static_cast<double>(i) /
                                               static_cast<double>(sw_steps - 1);
          grid.push_back(sw_rmin * std::pow(sw_rmax / sw_rmin, f));
        }
      }
      const auto rows = rgg::sweep(sw_n, parse_metric(sw_metric), prop, grid,
                                   sw_trials, sw_seed);
      std::ostringstream out;
      out << csv_meta(sw_seed) << rgg::kSweepCsvHeader << '\n';
      for (const auto& row : rows) out << rgg::to_csv_row(row) << '\n';
      emit(sw_out, out.str());
      return 0;
    }

    if (th->parsed()) {
      rgg::ThresholdParams tp;
      tp.n = th_n;
      tp.metric = parse_metric(th_metric);
      tp.property = rgg::parse_property(th_prop, th_k);
      tp.target_p = th_target;
      tp.trials_per_probe = th_trials;
      tp.tolerance = th_tol;
      tp.master_seed = th_seed;
      tp.r_lo = th_rlo;
      tp.r_hi = th_rhi;
      const auto res = rgg::locate_threshold(tp);
      if (!th_probes.empty()) {
        std::ostringstream out;
        out << csv_meta(th_seed) << rgg::kSweepCsvHeader << '\n';
        for (const auto& row : res.probes) out << rgg::to_csv_row(row) << '\n';
        write_text(th_probes, out.str());
      }
      Json j = rgg::to_json(res.estimate);
      j["meta"] = meta_json(th_seed);
      emit(th_out, j.dump(2) + "\n");
      return 0;
    }

    if (ft->parsed()) {
      std::vector<rgg::FitPoint> points;
      Property prop{};
      bool first = true;
      for (const auto& path : ft_inputs) {
        std::ifstream in(path);
        if (!in) throw rgg::IoError("cannot open for reading: " + path);
        Json j;
        try {
          in >> j;
        } catch (const std::exception& e) {
          throw rgg::FormatError("bad threshold JSON in " + path + ": " + e.what());
        }
        const auto t = rgg::threshold_from_json(j);
        if (first) {
          prop = t.property;
          first = false;
        } else if (t.property.kind != prop.kind || t.property.k != prop.k) {
          throw rgg::Error("fit inputs mix properties");
        }
        points.push_back({t.n, t.r_star});
      }
      const auto fit = rgg::fit_exponent(points);
      Json j = rgg::to_json(fit);
      j["meta"] = meta_json(0);
      j["property"] = rgg::property_name(prop.kind);
      j["k"] = prop.k;
      emit(ft_out, j.dump(2) + "\n");
      return 0;
    }

    if (cr->parsed()) {
      const auto [mean, var] = rgg::crossing_moments(
          cr_n, cr_r, parse_metric(cr_metric), cr_trials, cr_seed);
      Json j;
      j["meta"] = meta_json(cr_seed);
      j["n"] = cr_n;
      j["r"] = cr_r;
      j["trials"] = cr_trials;
      j["mean"] = mean;
      j["variance"] = var;
      emit(cr_out, j.dump(2) + "\n");
      return 0;
    }

    std::cerr << app.help();
    return 2;
  } catch (const rgg::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const rgg::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const rgg::UnknownRateExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const rgg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
