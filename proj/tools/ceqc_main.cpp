#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ceqc/analysis.hpp"
#include "ceqc/calibrate.hpp"
#include "ceqc/code.hpp"
#include "ceqc/extraction.hpp"
#include "ceqc/ftec.hpp"
#include "ceqc/mc.hpp"
#include "ceqc/search.hpp"

using namespace ceqc;

namespace {

KeyValues read_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file " + path);
  out << text;
}

ExtractionMethod parse_method(const std::string& s) {
  if (s == "shor") return ExtractionMethod::Shor;
  if (s == "steane") return ExtractionMethod::Steane;
  throw std::invalid_argument("unknown extraction method " + s);
}

ExtractionRound build_round(const CssCode& code, const std::string& name,
                            ExtractionMethod method) {
  return method == ExtractionMethod::Shor ? build_shor_round(code)
                                          : build_steane_round(code, name);
}

int default_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

std::string distance_line(const StabilizerCode& base, int max_w) {
  std::ostringstream os;
  os << "distance(<=" << max_w << " search)=";
  if (auto d = distance_brute_force(base, max_w))
    os << *d;
  else
    os << ">" << max_w;
  os << "\n";
  return os.str();
}

// Config lookups with CLI-wins override semantics.
template <typename T>
void from_config(const KeyValues& kv, const std::string& key, T& value) {
  auto it = kv.find(key);
  if (it == kv.end()) return;
  std::istringstream is(it->second);
  T parsed;
  if (!(is >> parsed))
    throw std::invalid_argument("bad config value for " + key + ": " +
                                it->second);
  value = parsed;
}

void from_config(const KeyValues& kv, const std::string& key,
                 std::string& value) {
  auto it = kv.find(key);
  if (it != kv.end()) value = it->second;
}

struct SweepSpec {
  std::string key;
  double lo = 0.0, hi = 0.0;
  int steps = 1;
};

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec s;
  auto eq = text.find('=');
  auto c1 = text.find(':', eq == std::string::npos ? 0 : eq);
  auto c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
  if (eq == std::string::npos || c1 == std::string::npos ||
      c2 == std::string::npos)
    throw std::invalid_argument("sweep must be KEY=LO:HI:STEPS, got " + text);
  s.key = text.substr(0, eq);
  s.lo = std::stod(text.substr(eq + 1, c1 - eq - 1));
  s.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  s.steps = std::stoi(text.substr(c2 + 1));
  if (s.key != "lambda" && s.key != "p" && s.key != "theta")
    throw std::invalid_argument("sweep key must be lambda, p, or theta");
  if (s.steps < 1) throw std::invalid_argument("sweep needs at least 1 step");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "constant-excitation codes: construction, fault-tolerant syndrome "
      "extraction, and Monte Carlo under coherent collective noise"};
  app.set_version_flag("--version", "ceqc 1.0.0");
  app.require_subcommand(1);
  int rc = 0;

  // codes list | show | check
  CLI::App* codes = app.add_subcommand("codes", "inspect built-in codes");
  codes->require_subcommand(1);
  codes->add_subcommand("list", "names of the built-in codes")
      ->callback([]() {
        for (const std::string& n : builtin_names()) std::cout << n << "\n";
      });
  {
    CLI::App* show =
        codes->add_subcommand("show", "print a code's generators");
    auto name = std::make_shared<std::string>();
    show->add_option("name", *name, "code name")->required();
    show->callback([name]() {
      std::cout << serialize_code(builtin(*name), *name);
    });
  }
  {
    CLI::App* check = codes->add_subcommand(
        "check", "constant-excitation check plus a bounded distance search");
    auto name = std::make_shared<std::string>();
    check->add_option("name", *name, "code name")->required();
    check->callback([name, &rc]() {
      CssCode code = builtin(*name);
      CeReport r = code.is_css ? check_ce_full(code)
                               : check_ce_necessary(code.base());
      std::cout << "CE=" << (r.passed ? "true" : "false") << "\n";
      if (r.weight >= 0) std::cout << "w=" << r.weight << "\n";
      for (const std::string& v : r.violations)
        std::cout << "violation: " << v << "\n";
      std::cout << distance_line(code.base(), 3);
      if (!r.passed) rc = 1;
    });
  }

  // distance
  {
    CLI::App* dist = app.add_subcommand(
        "distance", "brute-force minimum distance up to a weight bound");
    auto name = std::make_shared<std::string>();
    auto max_w = std::make_shared<int>(4);
    dist->add_option("name", *name, "code name")->required();
    dist->add_option("--max-w", *max_w, "largest error weight to search");
    dist->callback([name, max_w]() {
      std::cout << distance_line(builtin(*name).base(), *max_w);
    });
  }

  // circuit build
  {
    CLI::App* circuit = app.add_subcommand("circuit", "extraction circuits");
    circuit->require_subcommand(1);
    CLI::App* build = circuit->add_subcommand(
        "build", "construct one syndrome-extraction round");
    auto code = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>("shor");
    auto out = std::make_shared<std::string>();
    build->add_option("--code", *code, "code name")->required();
    build->add_option("--method", *method, "shor or steane");
    build->add_option("-o,--out", *out, "output file (default stdout)");
    build->callback([code, method, out]() {
      CssCode c = builtin(*code);
      write_text(*out, serialize_round(build_round(c, *code,
                                                   parse_method(*method))));
    });
  }

  // verify-ft
  {
    CLI::App* verify = app.add_subcommand(
        "verify-ft", "exhaustive single-fault fault-tolerance check");
    auto code_name = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>("shor");
    verify->add_option("--code", *code_name, "code name")->required();
    verify->add_option("--method", *method, "shor or steane");
    verify->callback([code_name, method, &rc]() {
      CssCode code = builtin(*code_name);
      ExtractionRound round =
          build_round(code, *code_name, parse_method(*method));
      PerfectDecoder dec = PerfectDecoder::build(code);
      SyndromeTable table = build_lookup_table(code, round, dec);
      FtecReport r = verify_fault_tolerance(code, round, table, dec);
      std::cout << "single-fault cases: " << r.cases_a << "\n";
      std::cout << "clean-round weight-1 input cases: " << r.cases_b << "\n";
      std::cout << "unknown syndromes: "
                << (r.unknown_syndrome_seen ? "yes" : "no") << "\n";
      std::cout << "violations: " << r.violations.size() << "\n";
      for (std::size_t i : r.violations) {
        const FtecRecord& rec = r.records[i];
        std::cout << "  input=" << rec.input << " fault=" << rec.fault
                  << " residual=" << rec.residual << "\n";
      }
      std::cout << (r.passed() ? "PASS" : "FAIL") << "\n";
      if (!r.passed()) rc = 1;
    });
  }

  // sim
  {
    CLI::App* sim = app.add_subcommand(
        "sim", "logical error rate at one operating point");
    auto config = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto code_name = std::make_shared<std::string>("c12");
    auto method = std::make_shared<std::string>("shor");
    auto p = std::make_shared<double>(0.0);
    auto gamma = std::make_shared<double>(1.0);
    auto cc = std::make_shared<std::string>("random_per_trial");
    auto theta = std::make_shared<double>(0.0);
    auto trials = std::make_shared<std::uint64_t>(100000);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto jobs = std::make_shared<int>(default_jobs());
    sim->add_option("--config", *config, "key=value manifest");
    sim->add_option("-o,--out", *out, "CSV output file (default stdout)");
    sim->add_option("--code", *code_name, "code name");
    sim->add_option("--method", *method, "shor or steane");
    sim->add_option("--p", *p, "gate error rate");
    sim->add_option("--gamma", *gamma, "idle-to-gate error ratio");
    sim->add_option("--cc-policy", *cc,
                    "off, fixed, random_per_trial, or random_per_layer");
    sim->add_option("--theta", *theta, "fixed rotation angle");
    sim->add_option("--trials", *trials, "Monte Carlo trials");
    sim->add_option("--seed", *seed, "base RNG seed");
    sim->add_option("--jobs", *jobs, "worker threads");
    sim->callback([=]() {
      KeyValues kv = read_config(*config);
      NoiseModel m = noise_from_config(kv);
      std::string code_v = *code_name, method_v = *method;
      std::uint64_t trials_v = *trials;
      int jobs_v = *jobs;
      from_config(kv, "code", code_v);
      from_config(kv, "method", method_v);
      from_config(kv, "trials", trials_v);
      from_config(kv, "jobs", jobs_v);
      if (sim->count("--code")) code_v = *code_name;
      if (sim->count("--method")) method_v = *method;
      if (sim->count("--trials")) trials_v = *trials;
      if (sim->count("--jobs")) jobs_v = *jobs;
      if (sim->count("--p")) m.p = *p;
      if (sim->count("--gamma")) m.gamma = *gamma;
      if (sim->count("--cc-policy")) m.cc_policy = parse_cc_policy(*cc);
      if (sim->count("--theta")) m.theta = *theta;
      if (sim->count("--seed")) m.seed = *seed;

      CssCode code = builtin(code_v);
      ExtractionRound round =
          build_round(code, code_v, parse_method(method_v));
      if (m.cc_policy != CcPolicy::Off)
        round.circuit = insert_cc_layers(round.circuit);
      PerfectDecoder dec = PerfectDecoder::build(code);
      SyndromeTable table = build_lookup_table(code, round, dec);
      RunSummary s =
          estimate_logical_rate(round, table, dec, m, trials_v, jobs_v);
      write_text(*out, run_summary_csv_header() + "\n" +
                           run_summary_csv_row(s) + "\n");
    });
  }

  // threshold
  {
    CLI::App* th = app.add_subcommand(
        "threshold", "logical-rate sweep and pseudo-threshold estimate");
    auto config = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto plot = std::make_shared<std::string>();
    auto cfg = std::make_shared<ThresholdConfig>();
    auto method = std::make_shared<std::string>("shor");
    auto cc = std::make_shared<std::string>("off");
    th->add_option("--config", *config, "key=value manifest");
    th->add_option("-o,--out", *out, "CSV output file (default stdout)");
    th->add_option("--plot-data", *plot, "two-column p p_L file");
    th->add_option("--code", cfg->code, "code name");
    th->add_option("--method", *method, "shor or steane");
    th->add_option("--gamma", cfg->gamma, "idle-to-gate error ratio");
    th->add_option("--cc-policy", *cc,
                   "off, fixed, random_per_trial, or random_per_layer");
    th->add_option("--theta", cfg->theta, "fixed rotation angle");
    th->add_option("--p-min", cfg->p_min, "sweep start");
    th->add_option("--p-max", cfg->p_max, "sweep end");
    th->add_option("--points-per-decade", cfg->points_per_decade,
                   "log-grid density");
    th->add_option("--trials", cfg->trials, "trials per grid point");
    th->add_option("--max-trials", cfg->max_trials,
                   "adaptive cap near the crossing");
    th->add_option("--seed", cfg->seed, "base RNG seed");
    th->add_option("--jobs", cfg->jobs, "worker threads");
    th->callback([=]() {
      KeyValues kv = read_config(*config);
      std::string method_v = *method, cc_v = *cc;
      ThresholdConfig c = *cfg;
      if (!th->count("--jobs")) c.jobs = default_jobs();
      from_config(kv, "code", c.code);
      from_config(kv, "method", method_v);
      from_config(kv, "gamma", c.gamma);
      from_config(kv, "cc_policy", cc_v);
      from_config(kv, "theta", c.theta);
      from_config(kv, "p_min", c.p_min);
      from_config(kv, "p_max", c.p_max);
      from_config(kv, "points_per_decade", c.points_per_decade);
      from_config(kv, "trials", c.trials);
      from_config(kv, "max_trials", c.max_trials);
      from_config(kv, "seed", c.seed);
      from_config(kv, "jobs", c.jobs);
      if (th->count("--code")) c.code = cfg->code;
      if (th->count("--method")) method_v = *method;
      if (th->count("--gamma")) c.gamma = cfg->gamma;
      if (th->count("--cc-policy")) cc_v = *cc;
      if (th->count("--theta")) c.theta = cfg->theta;
      if (th->count("--p-min")) c.p_min = cfg->p_min;
      if (th->count("--p-max")) c.p_max = cfg->p_max;
      if (th->count("--points-per-decade"))
        c.points_per_decade = cfg->points_per_decade;
      if (th->count("--trials")) c.trials = cfg->trials;
      if (th->count("--max-trials")) c.max_trials = cfg->max_trials;
      if (th->count("--seed")) c.seed = cfg->seed;
      if (th->count("--jobs")) c.jobs = cfg->jobs;
      c.method = parse_method(method_v);
      c.cc_policy = parse_cc_policy(cc_v);

      ThresholdResult r = run_threshold(c);
      std::string csv = run_summary_csv_header() + "\n";
      for (const RunSummary& s : r.points)
        csv += run_summary_csv_row(s) + "\n";
      write_text(*out, csv);
      if (!plot->empty()) {
        std::ostringstream two;
        for (const RunSummary& s : r.points)
          two << s.p << " " << s.p_l << "\n";
        write_text(*plot, two.str());
      }
      std::cout << "pseudo-threshold: p*=" << r.crossing.p_star << " ci=["
                << r.crossing.low << ", " << r.crossing.high << "]\n";
    });
  }

  // twirl
  {
    CLI::App* tw = app.add_subcommand(
        "twirl", "Pauli-twirled mixed coherent/stochastic channel");
    auto lambda = std::make_shared<double>();
    auto p = std::make_shared<double>();
    auto theta = std::make_shared<double>();
    auto sweep = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    tw->add_option("--lambda", *lambda, "stochastic fraction")->required();
    tw->add_option("--p", *p, "stochastic error rate")->required();
    tw->add_option("--theta", *theta, "rotation angle")->required();
    tw->add_option("--sweep", *sweep, "KEY=LO:HI:STEPS over lambda|p|theta");
    tw->add_option("-o,--out", *out, "CSV output file (default stdout)");
    tw->callback([=]() {
      std::ostringstream csv;
      csv << twirl_csv_header() << "\n";
      if (sweep->empty()) {
        csv << twirl_csv_row(*lambda, *p, *theta) << "\n";
      } else {
        SweepSpec s = parse_sweep(*sweep);
        for (int i = 0; i < s.steps; ++i) {
          double v = s.steps == 1
                         ? s.lo
                         : s.lo + (s.hi - s.lo) * i / (s.steps - 1);
          double l = s.key == "lambda" ? v : *lambda;
          double pp = s.key == "p" ? v : *p;
          double t = s.key == "theta" ? v : *theta;
          csv << twirl_csv_row(l, pp, t) << "\n";
        }
      }
      write_text(*out, csv.str());
    });
  }

  // search lemma3 | lemma2
  {
    CLI::App* search = app.add_subcommand(
        "search", "exhaustive nonexistence scans for short codes");
    search->require_subcommand(1);
    search->add_subcommand("lemma3",
                           "distance-2 even subcode obstruction scan")
        ->callback([]() { std::cout << lemma3_report(lemma3_search()); });
    CLI::App* l2 = search->add_subcommand(
        "lemma2", "single-excitation distance-3 packing scan");
    auto n = std::make_shared<int>();
    l2->add_option("--n", *n, "block length (8 or 9)")->required();
    l2->callback([n]() {
      std::cout << lemma2_report_text(lemma2_check(*n));
    });
  }

  // calibrate
  {
    CLI::App* cal = app.add_subcommand(
        "calibrate",
        "sweep engine propagation constants against the dense simulator");
    auto samples = std::make_shared<int>(20000);
    auto seed = std::make_shared<std::uint64_t>(12);
    cal->add_option("--samples", *samples, "samples per probe point");
    cal->add_option("--seed", *seed, "base RNG seed");
    cal->callback([samples, seed, &rc]() {
      CalibrationReport r = run_calibration(*samples, *seed);
      std::cout << calibration_text(r);
      if (!r.consistent) rc = 1;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
