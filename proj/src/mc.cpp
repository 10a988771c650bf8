#include "ceqc/mc.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ceqc/code.hpp"

namespace ceqc {

std::pair<double, double> wilson_interval(std::uint64_t failures,
                                          std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 97.5th normal percentile
  const double n = static_cast<double>(trials);
  const double ph = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (ph + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
  // Exact edges: rounding must not push the bound past the point estimate.
  const double lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = failures == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

namespace {

/* Counts failures over the half-open trial-index range. Trials are keyed by
 * index alone, so any partition of the range yields the same count. */
std::uint64_t count_failures(const ExtractionRound& round,
                             const SyndromeTable& table,
                             const PerfectDecoder& dec,
                             const FaultSampler& sampler, const NoiseModel& m,
                             std::uint64_t begin, std::uint64_t end, int jobs,
                             const TrialConfig& tc) {
  auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t fails = 0;
    for (std::uint64_t t = lo; t < hi; ++t)
      if (run_ftec_trial(round, table, dec, sampler, m, t, tc).failed) ++fails;
    return fails;
  };

  if (jobs <= 1 || end - begin < 2) return count_range(begin, end);

  const std::uint64_t span = end - begin;
  const std::uint64_t workers = std::min<std::uint64_t>(jobs, span);
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  for (std::uint64_t w = 0; w < workers; ++w) {
    std::uint64_t lo = begin + span * w / workers;
    std::uint64_t hi = begin + span * (w + 1) / workers;
    pool.emplace_back(
        [&, w, lo, hi]() { partial[w] = count_range(lo, hi); });
  }
  std::uint64_t total = 0;
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool[w].join();
    total += partial[w];
  }
  return total;
}

RunSummary summarize(const NoiseModel& m, std::uint64_t trials,
                     std::uint64_t failures, double wall) {
  RunSummary s;
  s.p = m.p;
  s.gamma = m.gamma;
  s.cc_policy = m.cc_policy;
  s.theta = m.theta;
  s.trials = trials;
  s.failures = failures;
  s.p_l = trials ? static_cast<double>(failures) / trials : 0.0;
  auto [lo, hi] = wilson_interval(failures, trials);
  s.ci_low = lo;
  s.ci_high = hi;
  s.seed = m.seed;
  s.wall_time = wall;
  return s;
}

std::string theta_policy_string(CcPolicy policy, double theta) {
  switch (policy) {
    case CcPolicy::Off: return "none";
    case CcPolicy::Fixed: {
      std::ostringstream os;
      os << "fixed:" << std::setprecision(12) << theta;
      return os.str();
    }
    case CcPolicy::RandomPerTrial: return "random_per_trial";
    case CcPolicy::RandomPerLayer: return "random_per_layer";
  }
  return "?";
}

}  // namespace

RunSummary estimate_logical_rate(const ExtractionRound& round,
                                 const SyndromeTable& table,
                                 const PerfectDecoder& dec,
                                 const NoiseModel& m, std::uint64_t trials,
                                 int jobs, const TrialConfig& tc) {
  const auto t0 = std::chrono::steady_clock::now();
  const FaultSampler sampler(round.circuit);
  std::uint64_t failures =
      count_failures(round, table, dec, sampler, m, 0, trials, jobs, tc);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return summarize(m, trials, failures, dt.count());
}

std::string run_summary_csv_header() {
  return "p,gamma,cc_policy,theta_policy,trials,failures,p_L,ci_low,ci_high,"
         "seed";
}

std::string run_summary_csv_row(const RunSummary& s) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << s.p << "," << s.gamma << ","
     << (s.cc_policy == CcPolicy::Off ? "off" : "on") << ","
     << theta_policy_string(s.cc_policy, s.theta) << "," << s.trials << ","
     << s.failures << "," << s.p_l << "," << s.ci_low << "," << s.ci_high
     << "," << s.seed;
  return os.str();
}

namespace {

std::string curve_listing(const std::vector<std::pair<double, double>>& pts) {
  std::ostringstream os;
  os << std::setprecision(6);
  for (const auto& [p, pl] : pts) os << " (p=" << p << ", p_L=" << pl << ")";
  return os.str();
}

}  // namespace

double crossing_point(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    throw EstimationError("crossing needs at least two curve points; got" +
                          curve_listing(points));
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    auto [p1, l1] = points[i];
    auto [p2, l2] = points[i + 1];
    if (!(p1 > 0) || !(p2 > p1) || l1 < 0 || l2 < 0)
      throw EstimationError("curve is not an increasing positive grid:" +
                            curve_listing(points));
    if (l1 <= 0 || l2 <= 0) continue;  // zero-rate points never bracket
    const double g1 = std::log(l1) - std::log(p1);
    const double g2 = std::log(l2) - std::log(p2);
    if (g1 == 0.0) return p1;
    if (g1 < 0.0 && g2 >= 0.0) {
      const double x1 = std::log(p1), x2 = std::log(p2);
      const double y1 = std::log(l1), y2 = std::log(l2);
      const double s = (y2 - y1) / (x2 - x1);
      return std::exp((y1 - s * x1) / (1.0 - s));
    }
  }
  throw EstimationError("no crossing of the identity line on the grid:" +
                        curve_listing(points));
}

Crossing pseudo_threshold(const std::vector<RunSummary>& points) {
  std::vector<std::pair<double, double>> mid, lo, hi;
  for (const RunSummary& s : points) {
    // Zero-failure points enter as half a failure so the log is defined;
    // they sit far below the identity line and never bracket a crossing.
    const double eps = s.trials ? 0.5 / static_cast<double>(s.trials) : 0.0;
    mid.push_back({s.p, s.failures ? s.p_l : eps});
    lo.push_back({s.p, std::max(s.ci_low, eps)});
    hi.push_back({s.p, std::max(s.ci_high, eps)});
  }
  Crossing c;
  c.p_star = crossing_point(mid);
  // The upper-CI curve crosses the identity line earlier, the lower-CI
  // curve later; points at the grid edge clamp to it.
  try {
    c.low = crossing_point(hi);
  } catch (const EstimationError&) {
    c.low = points.front().p;
  }
  try {
    c.high = crossing_point(lo);
  } catch (const EstimationError&) {
    c.high = points.back().p;
  }
  return c;
}

std::vector<double> log_grid(double p_min, double p_max, int per_decade) {
  if (!(p_min > 0.0) || p_max < p_min || per_decade < 1)
    throw std::invalid_argument("log grid needs 0 < p_min <= p_max, k >= 1");
  const int n = static_cast<int>(std::floor(
                    std::log10(p_max / p_min) * per_decade + 1e-9)) +
                1;
  std::vector<double> g;
  for (int i = 0; i < n; ++i)
    g.push_back(p_min * std::pow(10.0, static_cast<double>(i) / per_decade));
  return g;
}

ThresholdResult run_threshold(const ThresholdConfig& cfg) {
  CssCode code = builtin(cfg.code);
  ExtractionRound round = cfg.method == ExtractionMethod::Shor
                              ? build_shor_round(code)
                              : build_steane_round(code, cfg.code);
  PerfectDecoder dec = PerfectDecoder::build(code);
  SyndromeTable table = build_lookup_table(code, round, dec);
  if (cfg.cc_policy != CcPolicy::Off)
    round.circuit = insert_cc_layers(round.circuit);
  const FaultSampler sampler(round.circuit);

  ThresholdResult result;
  for (double p : log_grid(cfg.p_min, cfg.p_max, cfg.points_per_decade)) {
    NoiseModel m;
    m.p = p;
    m.gamma = cfg.gamma;
    m.cc_policy = cfg.cc_policy;
    m.theta = cfg.theta;
    m.seed = cfg.seed;

    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t trials = cfg.trials;
    std::uint64_t failures = count_failures(round, table, dec, sampler, m, 0,
                                            trials, cfg.jobs, {});
    // Top up near the identity line, where the crossing estimate is most
    // sensitive to statistical noise.
    if (cfg.max_trials > trials && failures > 0) {
      const double pl = static_cast<double>(failures) / trials;
      if (pl >= 0.5 * p && pl <= 2.0 * p) {
        failures += count_failures(round, table, dec, sampler, m, trials,
                                   cfg.max_trials, cfg.jobs, {});
        trials = cfg.max_trials;
      }
    }
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    result.points.push_back(summarize(m, trials, failures, dt.count()));
  }
  result.crossing = pseudo_threshold(result.points);
  return result;
}

}  // namespace ceqc
