// Acceptance suite: one pass/fail line per criterion. Exit code 0 iff every
// criterion passes. A subset of criteria can be selected by number on the
// command line, e.g. `rgg_acceptance 1 2 3`.
//
//  1  accelerated detectors equal their brute-force oracles
//  2  plane <=> no anchor on 10^4 random graphs
//  3  quadrilateral-side and 2r invariants on every crossing from 1-2
//  4  crossing-count scaling, ratio bands for r-doubling and n-doubling
//  5  threshold exponent fits (via CLI recipes)
//  6  free-edge regime probabilities (via CLI recipe)
//  7  independent-set witness and certificate rates (via CLI recipes)
//  8  recipes are byte-identical across worker counts

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "rgg/detectors.hpp"
#include "rgg/montecarlo.hpp"
#include "rgg/pointset_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using rgg::Metric;

namespace {

int g_failures = 0;
std::int64_t g_crossings_checked = 0;
std::int64_t g_crossing_invariant_violations = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void report(int criterion, bool pass, const std::string& detail, double secs) {
  std::printf("criterion %d: %s  (%s) [%.1fs]\n", criterion,
              pass ? "PASS" : "FAIL", detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void tally_crossing_invariants(const rgg::RggGraph& g) {
  for (const auto& cp : rgg::crossing_pairs(g, false)) {
    ++g_crossings_checked;
    if (!rgg::check_crossing_invariants(g, cp).all())
      ++g_crossing_invariant_violations;
  }
}

// --- criterion 1 -------------------------------------------------------------

bool oracle_equivalence(std::string& detail) {
  bool ok = true;
  std::ostringstream msg;

  {  // geometry predicate vs plain-double oracle
    rgg::Xoshiro256pp rng(0xACC1);
    std::int64_t mismatches = 0;
    for (int i = 0; i < 100000; ++i) {
      rgg::Point a{rng.uniform01(), rng.uniform01()};
      rgg::Point b{rng.uniform01(), rng.uniform01()};
      rgg::Point c{rng.uniform01(), rng.uniform01()};
      rgg::Point d{rng.uniform01(), rng.uniform01()};
      const bool expect = oracle::segments_cross_double(a, b, c, d);
      const bool got =
          rgg::segments_cross(rgg::make_segment(a, b, Metric::Square),
                              rgg::make_segment(c, d, Metric::Square),
                              Metric::Square);
      mismatches += got != expect;
    }
    ok &= mismatches == 0;
    msg << "geometry 1e5:" << (mismatches ? "FAIL" : "ok");
  }

  {  // grid adjacency + components + crossings + free edges, n <= 300
    rgg::Xoshiro256pp rng(0xACC2);
    std::int64_t bad = 0;
    for (int inst = 0; inst < 1000; ++inst) {
      const std::int64_t n = 4 + static_cast<std::int64_t>(rng.uniform01() * 296);
      const Metric m = inst % 2 ? Metric::Torus : Metric::Square;
      const double r = 0.005 + rng.uniform01() * 0.06;
      const auto g = rgg::generate({n, r, m, rng.next()});

      if (g.edges() != oracle::edges_bruteforce(g.points(), r, m)) ++bad;
      if (rgg::components(g) != oracle::components_bfs(g.n(), g.edges())) ++bad;

      const auto pruned = rgg::crossing_pairs(g, false);
      const auto brute = oracle::crossing_pairs_allpairs(g);
      if (pruned.size() != brute.size()) ++bad;
      else
        for (std::size_t i = 0; i < pruned.size(); ++i)
          if (pruned[i].e1 != brute[i].e1 || pruned[i].e2 != brute[i].e2) {
            ++bad;
            break;
          }

      if (rgg::free_edges(g) != oracle::free_edges_allpairs(g)) ++bad;
      tally_crossing_invariants(g);
    }
    ok &= bad == 0;
    msg << " small-n 1000:" << (bad ? "FAIL" : "ok");
  }

  {  // grid vs brute force at module scale, n <= 2000
    rgg::Xoshiro256pp rng(0xACC3);
    std::int64_t bad = 0;
    for (int inst = 0; inst < 1000; ++inst) {
      const std::int64_t n = 1 + static_cast<std::int64_t>(rng.uniform01() * 2000);
      const Metric m = inst % 2 ? Metric::Torus : Metric::Square;
      const double r = 0.002 + rng.uniform01() * 0.2;
      const auto g = rgg::generate({n, r, m, rng.next()});
      if (g.edges() != oracle::edges_bruteforce(g.points(), r, m)) ++bad;
    }
    ok &= bad == 0;
    msg << " grid 1000xn2000:" << (bad ? "FAIL" : "ok");
  }

  {  // subset-enumeration oracles, n <= 30
    rgg::Xoshiro256pp rng(0xACC4);
    std::int64_t bad = 0;
    for (int inst = 0; inst < 1000; ++inst) {
      const std::int64_t n = 5 + static_cast<std::int64_t>(rng.uniform01() * 26);
      const double r = 0.05 + rng.uniform01() * 0.45;
      const auto g = rgg::generate({n, r, Metric::Square, rng.next()});
      for (int k : {3, 4})
        if (rgg::has_connected_k(g, k) != oracle::has_connected_k_enum(g, k)) ++bad;
      for (int k : {3, 4, 5}) {
        const bool got = rgg::has_clique_k(g, k).kind ==
                         rgg::TriStateDecision::Kind::Yes;
        if (got != oracle::has_clique_k_enum(g, k)) ++bad;
      }
    }
    ok &= bad == 0;
    msg << " subsets 1000:" << (bad ? "FAIL" : "ok");
  }

  {  // independent-set tri-state soundness vs enumeration, n <= 25
    rgg::Xoshiro256pp rng(0xACC5);
    std::int64_t bad = 0;
    for (int inst = 0; inst < 1000; ++inst) {
      const std::int64_t n = 4 + static_cast<std::int64_t>(rng.uniform01() * 22);
      const double r = 0.05 + rng.uniform01() * 0.45;
      const auto g = rgg::generate({n, r, Metric::Square, rng.next()});
      const int k = 2 + static_cast<int>(rng.uniform01() * 5);
      if (k > n) continue;
      const auto tri = rgg::independent_k(g, k);
      const bool truth = oracle::has_independent_k_enum(g, k);
      if (tri.kind == rgg::TriStateDecision::Kind::Yes && !truth) ++bad;
      if (tri.kind == rgg::TriStateDecision::Kind::No && truth) ++bad;
    }
    ok &= bad == 0;
    msg << " mis 1000:" << (bad ? "FAIL" : "ok");
  }

  {  // planarity vs exhaustive minor search, n <= 12
    rgg::Xoshiro256pp rng(0xACC6);
    std::int64_t bad = 0;
    for (int inst = 0; inst < 1000; ++inst) {
      const std::int64_t n = 4 + static_cast<std::int64_t>(rng.uniform01() * 9);
      const double r = 0.15 + rng.uniform01() * 0.55;
      const auto g = rgg::generate({n, r, Metric::Square, rng.next()});
      if (rgg::is_planar(g) != oracle::planar_by_minor_search(g)) ++bad;
    }
    ok &= bad == 0;
    msg << " planarity 1000:" << (bad ? "FAIL" : "ok");
  }

  detail = msg.str();
  return ok;
}

// --- criterion 2 -------------------------------------------------------------

bool plane_anchor_equivalence(std::string& detail) {
  const std::int64_t n = 200;
  rgg::Xoshiro256pp rng(0xACC7);
  std::int64_t disagreements = 0;
  int nonplane = 0;
  for (int inst = 0; inst < 10000; ++inst) {
    const double lo = std::log(1.0 / static_cast<double>(n));
    const double hi = std::log(1.0 / std::sqrt(static_cast<double>(n)));
    const double r = std::exp(lo + (hi - lo) * rng.uniform01());
    const auto g = rgg::generate({n, r, Metric::Square, rng.next()});
    const bool plane = rgg::is_plane(g);
    const bool anchored = rgg::find_anchor(g).has_value();
    if (plane == anchored) ++disagreements;
    nonplane += anchored;
    tally_crossing_invariants(g);
  }
  std::ostringstream msg;
  msg << "disagreements=" << disagreements << " nonplane=" << nonplane << "/10000";
  detail = msg.str();
  return disagreements == 0 && nonplane > 500 && nonplane < 9500;
}

// --- criterion 4 -------------------------------------------------------------

bool crossing_scaling(std::string& detail) {
  const auto [m1, v1] = rgg::crossing_moments(3000, 0.01, Metric::Square, 500, 0xACC8);
  const auto [m2, v2] = rgg::crossing_moments(3000, 0.02, Metric::Square, 500, 0xACC8);
  const double ratio_r = m2 / m1;

  const auto [a1, w1] = rgg::crossing_moments(2000, 0.01, Metric::Square, 500, 0xACC9);
  const auto [a2, w2] = rgg::crossing_moments(4000, 0.01, Metric::Square, 500, 0xACC9);
  const double ratio_n = a2 / a1;

  std::ostringstream msg;
  msg << "mean(r=.02)/mean(r=.01)=" << ratio_r << " in [48,80]; "
      << "mean(n=4000)/mean(n=2000)=" << ratio_n << " in [12,20]";
  detail = msg.str();
  return ratio_r >= 48.0 && ratio_r <= 80.0 && ratio_n >= 12.0 && ratio_n <= 20.0;
}

// --- criteria 5-8: CLI recipes ----------------------------------------------

const char* kCli = RGG_CLI_PATH;

int run_cli(const std::string& env, const std::string& args) {
  const std::string cmd = env + " " + kCli + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("missing " + p.string());
  json j;
  in >> j;
  return j;
}

struct SlopeCheck {
  std::string key;
  double predicted;
  double tolerance;
};

const std::vector<std::pair<std::string, std::vector<SlopeCheck>>> kRecipeSlopes = {
    {"clique-k",
     {{"has-edge", -1.0, 0.05},
      {"clique-k3", -0.75, 0.08},
      {"clique-k5", -0.625, 0.08}}},
    {"connected-k",
     {{"connected-k3", -0.75, 0.08}, {"connected-k4", -2.0 / 3.0, 0.08}}},
    {"plane", {{"plane", -2.0 / 3.0, 0.08}}},
    {"planar", {{"planar", -0.625, 0.08}}},
};

fs::path recipe_dir(const std::string& tag, const std::string& recipe) {
  return fs::path("acceptance_out") / tag / recipe;
}

bool run_all_recipes(const std::string& tag, const std::string& env,
                     std::string& detail) {
  for (const char* recipe : {"clique-k", "connected-k", "plane", "planar",
                             "free-edge-regimes", "is-upper", "is-lower"}) {
    const auto dir = recipe_dir(tag, recipe);
    fs::create_directories(dir);
    const int rc = run_cli(env, std::string("--recipe ") + recipe + " --out " +
                                    dir.string() + " --seed 1729");
    if (rc != 0) {
      detail = std::string("recipe ") + recipe + " exited " + std::to_string(rc);
      return false;
    }
  }
  return true;
}

bool exponent_fits(std::string& detail) {
  std::ostringstream msg;
  bool ok = true;
  for (const auto& [recipe, checks] : kRecipeSlopes) {
    for (const auto& check : checks) {
      const auto path = recipe_dir("w2", recipe) / ("fit_" + check.key + ".json");
      const auto fit = read_json(path);
      const double slope = fit.at("slope").get<double>();
      const bool pass = std::abs(slope - check.predicted) <= check.tolerance;
      ok &= pass;
      msg << check.key << ": slope=" << slope << " vs " << check.predicted
          << (pass ? " ok; " : " FAIL; ");
    }
  }
  detail = msg.str();
  return ok;
}

bool free_edge_regimes(std::string& detail) {
  const auto j = read_json(recipe_dir("w2", "free-edge-regimes") /
                           "free_edge_regimes.json");
  const double p_edge = j.at("has_edge_at_r_1e-5").get<double>();
  const double p_allfree = j.at("all_free_given_edge").at("p").get<double>();
  const double p_free = j.at("has_free_edge").at("p").get<double>();
  const double p_long = j.at("long_edges").at("crossed_fraction").get<double>();

  std::ostringstream msg;
  msg << "P(edge@1e-5)=" << p_edge << "<=0.05; P(allfree|edge)=" << p_allfree
      << ">=0.95; P(freeedge)=" << p_free << ">=0.95; longcrossed=" << p_long
      << ">=0.99";
  detail = msg.str();
  return p_edge <= 0.05 && p_allfree >= 0.95 && p_free >= 0.95 && p_long >= 0.99;
}

bool independent_set_rates(std::string& detail) {
  const auto lower = read_json(recipe_dir("w2", "is-lower") / "is_lower.json");
  const auto upper = read_json(recipe_dir("w2", "is-upper") / "is_upper.json");
  const double witness_rate = lower.at("witness_success_rate").get<double>();
  const double no_rate = upper.at("certified_no_rate").get<double>();
  std::ostringstream msg;
  msg << "grid witness rate=" << witness_rate << ">=0.95; certified-no rate="
      << no_rate << "==1";
  detail = msg.str();
  return witness_rate >= 0.95 && no_rate == 1.0;
}

bool recipes_deterministic(std::string& detail) {
  std::ostringstream msg;
  bool ok = true;
  for (const char* recipe : {"clique-k", "connected-k", "plane", "planar",
                             "free-edge-regimes", "is-upper", "is-lower"}) {
    const auto d2 = recipe_dir("w2", recipe);
    const auto d1 = recipe_dir("w1", recipe);
    std::set<std::string> names;
    for (const auto& e : fs::directory_iterator(d2)) names.insert(e.path().filename());
    for (const auto& e : fs::directory_iterator(d1)) names.insert(e.path().filename());
    for (const auto& name : names) {
      std::ifstream a(d2 / name), b(d1 / name);
      std::stringstream sa, sb;
      sa << a.rdbuf();
      sb << b.rdbuf();
      if (!a || !b || sa.str() != sb.str()) {
        ok = false;
        msg << recipe << "/" << name << " differs; ";
      }
    }
  }
  if (ok) msg << "all recipe outputs byte-identical across RGG_THREADS=2 and 1";
  detail = msg.str();
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  const auto selected = [&](int c) { return wanted.empty() || wanted.count(c); };

  if (selected(1)) {
    Timer t;
    std::string detail;
    const bool ok = oracle_equivalence(detail);
    report(1, ok, detail, t.seconds());
  }
  if (selected(2)) {
    Timer t;
    std::string detail;
    const bool ok = plane_anchor_equivalence(detail);
    report(2, ok, detail, t.seconds());
  }
  if (selected(3)) {
    Timer t;
    std::ostringstream msg;
    msg << g_crossings_checked << " crossings checked, "
        << g_crossing_invariant_violations << " violations";
    const bool have_sample = g_crossings_checked > 1000;
    report(3, have_sample && g_crossing_invariant_violations == 0, msg.str(),
           t.seconds());
  }
  if (selected(4)) {
    Timer t;
    std::string detail;
    const bool ok = crossing_scaling(detail);
    report(4, ok, detail, t.seconds());
  }

  const bool need_recipes = selected(5) || selected(6) || selected(7) || selected(8);
  if (need_recipes) {
    Timer t;
    std::string detail;
    if (!run_all_recipes("w2", "RGG_THREADS=2", detail)) {
      std::printf("recipe execution failed: %s\n", detail.c_str());
      return 1;
    }
    std::printf("recipes (RGG_THREADS=2) done [%.1fs]\n", t.seconds());
    std::fflush(stdout);
  }

  if (selected(5)) {
    Timer t;
    std::string detail;
    const bool ok = exponent_fits(detail);
    report(5, ok, detail, t.seconds());
  }
  if (selected(6)) {
    Timer t;
    std::string detail;
    const bool ok = free_edge_regimes(detail);
    report(6, ok, detail, t.seconds());
  }
  if (selected(7)) {
    Timer t;
    std::string detail;
    const bool ok = independent_set_rates(detail);
    report(7, ok, detail, t.seconds());
  }
  if (selected(8)) {
    Timer t;
    std::string detail;
    bool ok = run_all_recipes("w1", "RGG_THREADS=1", detail);
    if (ok) ok = recipes_deterministic(detail);
    report(8, ok, detail, t.seconds());
  }

  if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
  else std::printf("all selected criteria passed\n");
  return g_failures ? 1 : 0;
}
