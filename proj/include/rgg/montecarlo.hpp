#pragma once
// Seeded Monte Carlo estimation. Trials are independent tasks whose seeds are
// derived from (master_seed, trial_index) alone, so results are bit-identical
// for any worker count, and every probe radius at a fixed master seed sees the
// same point sets (edges are nested in r, which keeps per-seed success
// monotone and makes threshold bisection well behaved).

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rgg/detectors.hpp"
#include "rgg/errors.hpp"
#include "rgg/graph.hpp"
#include "rgg/rng.hpp"

namespace rgg {

// Worker count: explicit value, else RGG_THREADS, else hardware concurrency.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RGG_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(trial, counters) for every trial index and sums the counter vectors.
// Integer accumulation makes the reduction order irrelevant.
template <typename Fn>
std::vector<std::int64_t> parallel_tally(std::int64_t trials, int workers,
                                         std::size_t counters, Fn&& fn) {
  std::vector<std::int64_t> total(counters, 0);
  workers = std::max(1, workers);
  if (workers == 1 || trials <= 1) {
    std::vector<std::int64_t> acc(counters, 0);
    for (std::int64_t t = 0; t < trials; ++t) {
      std::fill(acc.begin(), acc.end(), 0);
      fn(t, acc);
      for (std::size_t c = 0; c < counters; ++c) total[c] += acc[c];
    }
    return total;
  }

  std::atomic<std::int64_t> next{0};
  std::vector<std::vector<std::int64_t>> partial(
      static_cast<std::size_t>(workers), std::vector<std::int64_t>(counters, 0));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      std::vector<std::int64_t> acc(counters, 0);
      for (;;) {
        const std::int64_t t = next.fetch_add(1);
        if (t >= trials) break;
        std::fill(acc.begin(), acc.end(), 0);
        fn(t, acc);
        for (std::size_t c = 0; c < counters; ++c)
          partial[static_cast<std::size_t>(w)][c] += acc[c];
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& p : partial)
    for (std::size_t c = 0; c < counters; ++c) total[c] += p[c];
  return total;
}

// 95% Wilson score interval.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

inline Interval wilson_interval(std::int64_t successes, std::int64_t n,
                                double z = 1.959963984540054) {
  if (n <= 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct SweepRow {
  std::int64_t n = 0;
  double r = 0.0;
  Property property;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  std::int64_t unknown_count = 0;
  std::uint64_t master_seed = 0;
};

struct EstimateParams {
  std::int64_t n = 0;
  double r = 0.0;
  Metric metric = Metric::Square;
  Property property;
  std::int64_t trials = 0;
  std::uint64_t master_seed = 0;
  int workers = 0;  // 0 = resolve from environment
};

// Empirical probability that the property holds, over `trials` independently
// seeded graphs. Unknown tri-state outcomes are excluded from p_hat and
// reported separately.
inline SweepRow estimate(const EstimateParams& p) {
  if (p.trials < 1) throw Error("estimate requires trials >= 1");
  GraphConfig probe{p.n, p.r, p.metric, 0};
  validate(probe);

  const int workers = resolve_workers(p.workers);
  const auto counts = parallel_tally(
      p.trials, workers, 2, [&](std::int64_t t, std::vector<std::int64_t>& acc) {
        GraphConfig cfg{p.n, p.r, p.metric, derive_seed(p.master_seed, static_cast<std::uint64_t>(t))};
        const RggGraph g = generate(cfg);
        const EvalResult res = evaluate(g, p.property);
        if (std::holds_alternative<bool>(res)) {
          acc[0] += std::get<bool>(res) ? 1 : 0;
        } else {
          const auto& tri = std::get<TriStateDecision>(res);
          if (tri.kind == TriStateDecision::Kind::Yes) acc[0] += 1;
          else if (tri.kind == TriStateDecision::Kind::Unknown) acc[1] += 1;
        }
      });

  SweepRow row;
  row.n = p.n;
  row.r = p.r;
  row.property = p.property;
  row.trials = p.trials;
  row.successes = counts[0];
  row.unknown_count = counts[1];
  row.master_seed = p.master_seed;
  const std::int64_t decided = p.trials - row.unknown_count;
  row.p_hat = decided > 0 ? static_cast<double>(row.successes) / static_cast<double>(decided) : 0.0;
  const Interval ci = wilson_interval(row.successes, decided);
  row.ci_lo = ci.lo;
  row.ci_hi = ci.hi;
  return row;
}

// One estimate per grid radius. Aborts if the Unknown rate exceeds 10%.
inline std::vector<SweepRow> sweep(std::int64_t n, Metric metric, Property property,
                                   const std::vector<double>& r_grid,
                                   std::int64_t trials, std::uint64_t master_seed,
                                   int workers = 0) {
  std::vector<SweepRow> rows;
  rows.reserve(r_grid.size());
  for (double r : r_grid) {
    rows.push_back(estimate({n, r, metric, property, trials, master_seed, workers}));
    const auto& row = rows.back();
    if (10 * row.unknown_count > row.trials) {
      std::fprintf(stderr,
                   "warning: unknown rate %.1f%% exceeds 10%% at r=%g; aborting sweep\n",
                   100.0 * static_cast<double>(row.unknown_count) /
                       static_cast<double>(row.trials),
                   r);
      throw UnknownRateExceeded("sweep aborted: unknown rate above 10%");
    }
  }
  return rows;
}

struct ThresholdEstimate {
  std::int64_t n = 0;
  Property property;
  double r_star = 0.0;
  double r_lo = 0.0;
  double r_hi = 0.0;
  std::int64_t trials_per_probe = 0;
};

struct ThresholdParams {
  std::int64_t n = 0;
  Metric metric = Metric::Square;
  Property property;
  double target_p = 0.5;
  std::int64_t trials_per_probe = 0;
  double tolerance = 0.02;  // relative bracket width
  std::uint64_t master_seed = 0;
  double r_lo = 0.0;  // initial bracket, must straddle target_p
  double r_hi = 0.0;
  int workers = 0;
};

struct ThresholdResult {
  ThresholdEstimate estimate;
  std::vector<SweepRow> probes;
};

// Bisection on ln r for the radius where the property probability crosses
// target_p. Probes share the master seed, so all of them reuse the same
// per-trial point sets.
inline ThresholdResult locate_threshold(const ThresholdParams& p) {
  const Monotonicity mono = monotonicity(p.property.kind);
  if (mono == Monotonicity::None)
    throw NonMonotoneProperty(std::string(property_name(p.property.kind)) +
                              " has no threshold direction");
  if (!(p.r_lo > 0.0 && p.r_hi > p.r_lo)) throw Error("need 0 < r_lo < r_hi");
  if (p.trials_per_probe < 1) throw Error("trials_per_probe must be >= 1");
  if (!(p.tolerance > 0.0)) throw Error("tolerance must be positive");

  const bool increasing = mono == Monotonicity::Increasing;
  const auto crossed = [&](double phat) {
    return increasing ? phat >= p.target_p : phat < p.target_p;
  };

  ThresholdResult out;
  const auto probe = [&](double r) {
    out.probes.push_back(estimate(
        {p.n, r, p.metric, p.property, p.trials_per_probe, p.master_seed, p.workers}));
    return out.probes.back().p_hat;
  };

  double lo = p.r_lo, hi = p.r_hi;
  if (crossed(probe(lo)))
    throw BracketNotFound("target probability already crossed at r_lo");
  if (!crossed(probe(hi)))
    throw BracketNotFound("target probability not reached at r_hi");

  while (hi - lo > p.tolerance * std::sqrt(lo * hi)) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;  // bracket exhausted in double precision
    if (crossed(probe(mid))) hi = mid;
    else lo = mid;
  }

  out.estimate.n = p.n;
  out.estimate.property = p.property;
  out.estimate.r_lo = lo;
  out.estimate.r_hi = hi;
  out.estimate.r_star = std::sqrt(lo * hi);
  out.estimate.trials_per_probe = p.trials_per_probe;
  return out;
}

struct FitPoint {
  std::int64_t n = 0;
  double r_star = 0.0;
};

struct ExponentFit {
  std::vector<FitPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};

// Ordinary least squares of ln r_star on ln n.
inline ExponentFit fit_exponent(std::vector<FitPoint> points) {
  if (points.size() < 3)
    throw InsufficientPoints("exponent fit needs at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].n == points[j].n)
        throw InsufficientPoints("exponent fit needs distinct n values");

  const auto m = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& pt : points) {
    sx += std::log(static_cast<double>(pt.n));
    sy += std::log(pt.r_star);
  }
  const double xbar = sx / m, ybar = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& pt : points) {
    const double dx = std::log(static_cast<double>(pt.n)) - xbar;
    const double dy = std::log(pt.r_star) - ybar;
    sxx += dx * dx;
    sxy += dx * dy;
  }

  ExponentFit fit;
  fit.points = std::move(points);
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;

  double ssr = 0;
  for (const auto& pt : fit.points) {
    const double x = std::log(static_cast<double>(pt.n));
    const double resid = std::log(pt.r_star) - (fit.intercept + fit.slope * x);
    ssr += resid * resid;
  }
  fit.stderr_slope = std::sqrt(ssr / (m - 2.0) / sxx);
  return fit;
}

// Monte Carlo mean and (unbiased) variance of the crossing count.
inline std::pair<double, double> crossing_moments(std::int64_t n, double r,
                                                  Metric metric, std::int64_t trials,
                                                  std::uint64_t master_seed,
                                                  int workers = 0) {
  if (trials < 1) throw Error("crossing_moments requires trials >= 1");
  const auto counts = parallel_tally(
      trials, resolve_workers(workers), 2,
      [&](std::int64_t t, std::vector<std::int64_t>& acc) {
        GraphConfig cfg{n, r, metric, derive_seed(master_seed, static_cast<std::uint64_t>(t))};
        const std::int64_t c = count_crossings(generate(cfg));
        acc[0] += c;
        acc[1] += c * c;
      });
  const double tt = static_cast<double>(trials);
  const double mean = static_cast<double>(counts[0]) / tt;
  double var = 0.0;
  if (trials > 1)
    var = (static_cast<double>(counts[1]) -
           static_cast<double>(counts[0]) * static_cast<double>(counts[0]) / tt) /
          (tt - 1.0);
  return {mean, var};
}

}  // namespace rgg
