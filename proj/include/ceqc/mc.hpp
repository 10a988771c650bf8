#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ceqc/ftec.hpp"

namespace ceqc {

/*
 * One Monte Carlo estimate of the logical error rate at a single operating
 * point. The confidence interval is the 95% Wilson score interval, which
 * always contains the point estimate failures/trials.
 */
struct RunSummary {
  double p = 0.0;
  double gamma = 1.0;
  CcPolicy cc_policy = CcPolicy::Off;
  double theta = 0.0;  // only meaningful under the fixed policy
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double p_l = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds; excluded from serialized output
};

// 95% Wilson score interval for `failures` successes in `trials` draws.
std::pair<double, double> wilson_interval(std::uint64_t failures,
                                          std::uint64_t trials);

/*
 * Runs `trials` independent protocol trials (trial indices 0..trials-1) and
 * aggregates failure counts. `jobs` > 1 splits the index range across a
 * worker pool; counts are order-independent, so the result is identical for
 * any worker count.
 */
RunSummary estimate_logical_rate(const ExtractionRound& round,
                                 const SyndromeTable& table,
                                 const PerfectDecoder& dec,
                                 const NoiseModel& m, std::uint64_t trials,
                                 int jobs = 1, const TrialConfig& tc = {});

std::string run_summary_csv_header();
std::string run_summary_csv_row(const RunSummary& s);

struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/*
 * Crossing of the curve p_L(p) with the identity line p_L = p, located by
 * log-log linear interpolation between the bracketing grid points. `low`
 * and `high` propagate the per-point confidence bounds through the same
 * interpolation.
 */
struct Crossing {
  double p_star = 0.0;
  double low = 0.0, high = 0.0;
};

// Curve points are (p, p_L) pairs in increasing p. Throws EstimationError
// (listing the curve) when no sign change brackets a crossing.
double crossing_point(const std::vector<std::pair<double, double>>& points);

Crossing pseudo_threshold(const std::vector<RunSummary>& points);

/*
 * Threshold sweep configuration. The grid is log-spaced with
 * `points_per_decade` values per decade spanning [p_min, p_max]; every
 * point gets `trials` trials, topped up to `max_trials` when the estimate
 * lands within a factor of 2 of the identity line.
 */
struct ThresholdConfig {
  std::string code = "c12";
  ExtractionMethod method = ExtractionMethod::Shor;
  double gamma = 1.0;
  CcPolicy cc_policy = CcPolicy::Off;
  double theta = 0.0;
  double p_min = 1e-4;
  double p_max = 3e-3;
  int points_per_decade = 8;
  std::uint64_t trials = 100000;
  std::uint64_t max_trials = 1000000;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct ThresholdResult {
  std::vector<RunSummary> points;
  Crossing crossing;
};

std::vector<double> log_grid(double p_min, double p_max, int per_decade);

ThresholdResult run_threshold(const ThresholdConfig& cfg);

}  // namespace ceqc
