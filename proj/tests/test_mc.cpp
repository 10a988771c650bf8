#include "ceqc/mc.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "ceqc/code.hpp"
#include "ceqc/extraction.hpp"

using namespace ceqc;

TEST_CASE("wilson interval brackets the point estimate") {
  auto [l0, h0] = wilson_interval(0, 1000);
  CHECK(l0 == 0.0);
  CHECK(h0 > 0.0);
  CHECK(h0 < 0.01);

  auto [l1, h1] = wilson_interval(1000, 1000);
  CHECK(h1 == 1.0);
  CHECK(l1 > 0.99);

  for (std::uint64_t f : {1ULL, 17ULL, 500ULL, 999ULL}) {
    auto [lo, hi] = wilson_interval(f, 1000);
    double ph = static_cast<double>(f) / 1000.0;
    CHECK(lo < ph);
    CHECK(hi > ph);
    CHECK(lo > 0.0);
  }

  auto [wl, wh] = wilson_interval(10, 100);
  auto [nl, nh] = wilson_interval(100, 1000);
  CHECK(nh - nl < wh - wl);  // more data, tighter interval
}

TEST_CASE("identity-line crossing by log-log interpolation") {
  const double pth = 9.28e-4;
  std::vector<std::pair<double, double>> quad;
  for (double p : log_grid(2e-4, 3e-3, 8)) quad.push_back({p, p * p / pth});
  CHECK(crossing_point(quad) == doctest::Approx(pth).epsilon(1e-9));

  std::vector<std::pair<double, double>> above;
  for (double p : log_grid(1e-4, 1e-3, 4)) above.push_back({p, 3.0 * p});
  CHECK_THROWS_AS(crossing_point(above), EstimationError);
  std::vector<std::pair<double, double>> below;
  for (double p : log_grid(1e-4, 1e-3, 4)) below.push_back({p, 0.1 * p});
  CHECK_THROWS_WITH_AS(crossing_point(below),
                       doctest::Contains("no crossing"), EstimationError);

  // Zero-failure points are skipped, not treated as crossings.
  std::vector<std::pair<double, double>> with_zero = {
      {1e-4, 0.0}, {3e-4, 1e-4}, {1e-3, 2e-3}};
  double c = crossing_point(with_zero);
  CHECK(c > 3e-4);
  CHECK(c < 1e-3);
}

TEST_CASE("pseudo-threshold propagates confidence bounds") {
  std::vector<RunSummary> pts;
  for (double p : log_grid(2e-4, 3e-3, 8)) {
    RunSummary s;
    s.p = p;
    s.trials = 1000000;
    s.failures = static_cast<std::uint64_t>(p * p / 9.28e-4 * 1e6);
    s.p_l = static_cast<double>(s.failures) / 1e6;
    auto [lo, hi] = wilson_interval(s.failures, s.trials);
    s.ci_low = lo;
    s.ci_high = hi;
    pts.push_back(s);
  }
  Crossing c = pseudo_threshold(pts);
  CHECK(c.p_star == doctest::Approx(9.28e-4).epsilon(0.01));
  CHECK(c.low < c.p_star);
  CHECK(c.high > c.p_star);
  CHECK(c.high / c.low < 1.5);  // tight at a million trials per point
}

TEST_CASE("log grid spacing") {
  std::vector<double> g = log_grid(1e-4, 1e-3, 8);
  CHECK(g.size() == 9);
  CHECK(g.front() == doctest::Approx(1e-4));
  CHECK(g.back() == doctest::Approx(1e-3));
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    CHECK(g[i + 1] > g[i]);
    CHECK(g[i + 1] / g[i] == doctest::Approx(std::pow(10.0, 0.125)));
  }
  CHECK_THROWS_AS(log_grid(0.0, 1e-3, 8), std::invalid_argument);
}

TEST_CASE("rate estimation is deterministic and honest at zero noise") {
  CssCode c12 = builtin("c12");
  ExtractionRound round = build_shor_round(c12);
  PerfectDecoder dec = PerfectDecoder::build(c12);
  SyndromeTable table = build_lookup_table(c12, round, dec);

  NoiseModel quiet;
  quiet.p = 0.0;
  quiet.cc_policy = CcPolicy::Off;
  RunSummary z = estimate_logical_rate(round, table, dec, quiet, 5000);
  CHECK(z.failures == 0);
  CHECK(z.p_l == 0.0);
  CHECK(z.ci_low == 0.0);
  CHECK(z.trials == 5000);

  NoiseModel m;
  m.p = 2e-3;
  m.gamma = 1.0;
  m.cc_policy = CcPolicy::Off;
  m.seed = 11;
  RunSummary a = estimate_logical_rate(round, table, dec, m, 20000);
  RunSummary b = estimate_logical_rate(round, table, dec, m, 20000);
  CHECK(a.failures == b.failures);
  CHECK(a.p_l == b.p_l);
  CHECK(a.failures > 0);
  CHECK(a.ci_low <= a.p_l);
  CHECK(a.ci_high >= a.p_l);

  RunSummary two = estimate_logical_rate(round, table, dec, m, 20000, 2);
  CHECK(two.failures == a.failures);  // worker split never changes counts
}

TEST_CASE("summary rows serialize with fixed columns") {
  CHECK(run_summary_csv_header() ==
        "p,gamma,cc_policy,theta_policy,trials,failures,p_L,ci_low,ci_high,"
        "seed");
  RunSummary s;
  s.p = 1e-3;
  s.gamma = 0.01;
  s.cc_policy = CcPolicy::Off;
  s.trials = 1000;
  s.failures = 3;
  s.p_l = 3e-3;
  s.ci_low = 1e-3;
  s.ci_high = 9e-3;
  s.seed = 42;
  std::string row = run_summary_csv_row(s);
  CHECK(row.find("off,none") != std::string::npos);
  CHECK(row.find(",42") == row.size() - 3);

  s.cc_policy = CcPolicy::Fixed;
  s.theta = 0.3;
  CHECK(run_summary_csv_row(s).find("on,fixed:0.3") != std::string::npos);
  s.cc_policy = CcPolicy::RandomPerTrial;
  CHECK(run_summary_csv_row(s).find("on,random_per_trial") !=
        std::string::npos);
}

TEST_CASE("threshold sweep locates the crossing region") {
  ThresholdConfig cfg;
  cfg.code = "c12";
  cfg.method = ExtractionMethod::Shor;
  cfg.gamma = 0.01;
  cfg.cc_policy = CcPolicy::Off;
  cfg.p_min = 3e-4;
  cfg.p_max = 3e-3;
  cfg.points_per_decade = 4;
  cfg.trials = 4000;
  cfg.max_trials = 8000;
  cfg.seed = 5;
  ThresholdResult r = run_threshold(cfg);
  CHECK(r.points.size() == 5);
  for (const RunSummary& s : r.points) {
    CHECK(s.trials >= 4000);
    CHECK(s.gamma == 0.01);
  }
  CHECK(r.crossing.p_star > cfg.p_min);
  CHECK(r.crossing.p_star < cfg.p_max);
  CHECK(r.crossing.low <= r.crossing.p_star);
  CHECK(r.crossing.high >= r.crossing.p_star);
}
