#include "ceqc/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ceqc {

std::string cc_policy_name(CcPolicy p) {
  switch (p) {
    case CcPolicy::Off: return "off";
    case CcPolicy::Fixed: return "fixed";
    case CcPolicy::RandomPerTrial: return "random_per_trial";
    case CcPolicy::RandomPerLayer: return "random_per_layer";
  }
  return "?";
}

CcPolicy parse_cc_policy(const std::string& s) {
  if (s == "off") return CcPolicy::Off;
  if (s == "fixed") return CcPolicy::Fixed;
  if (s == "random_per_trial") return CcPolicy::RandomPerTrial;
  if (s == "random_per_layer") return CcPolicy::RandomPerLayer;
  throw std::invalid_argument("unknown cc_policy: " + s);
}

TrialNoise TrialNoise::start(const NoiseModel& m, std::uint64_t trial_index) {
  TrialNoise tn;
  tn.rng = Rng::keyed(m.seed, trial_index);
  if (m.cc_policy == CcPolicy::RandomPerTrial)
    tn.theta_trial = tn.rng.next_double() * 2.0 * std::numbers::pi;
  return tn;
}

/*
 * Walks one location class with geometric skips: at per-location rate r the
 * number of non-faulty locations before the next fault is geometric, so at
 * small r we draw O(count * r) variates instead of one per location.
 */
template <typename Emit>
static void sample_class(const std::vector<int>& idx, double r, Rng& rng,
                         Emit&& emit) {
  if (idx.empty() || r <= 0.0) return;
  r = std::min(r, 1.0);
  std::size_t i = 0;
  if (r >= 1.0) {
    for (; i < idx.size(); ++i) emit(idx[i]);
    return;
  }
  const double denom = std::log1p(-r);
  while (true) {
    double u = 1.0 - rng.next_double();  // (0, 1]
    double skip = std::floor(std::log(u) / denom);
    if (skip > static_cast<double>(idx.size())) return;
    i += static_cast<std::size_t>(skip);
    if (i >= idx.size()) return;
    emit(idx[i]);
    ++i;
  }
}

FaultSampler::FaultSampler(const LayeredCircuit& c)
    : locations(enumerate_locations(c)), n_layers(c.layers.size()) {
  for (std::size_t i = 0; i < locations.size(); ++i) {
    switch (locations[i].kind) {
      case LocationKind::Gate2: gate2.push_back(static_cast<int>(i)); break;
      case LocationKind::Prep1: prep1.push_back(static_cast<int>(i)); break;
      case LocationKind::Idle: idle.push_back(static_cast<int>(i)); break;
      case LocationKind::Meas1: meas1.push_back(static_cast<int>(i)); break;
    }
  }
}

FaultAssignment FaultSampler::sample(const NoiseModel& m, TrialNoise& tn) const {
  FaultAssignment fa;
  auto emit_two = [&](int i) {
    fa.faults.push_back({locations[i], 1 + tn.rng.next_below(15)});
  };
  auto emit_one = [&](int i) {
    fa.faults.push_back({locations[i], 1 + tn.rng.next_below(3)});
  };
  auto emit_flip = [&](int i) { fa.faults.push_back({locations[i], 0}); };

  sample_class(gate2, m.p, tn.rng, emit_two);
  sample_class(prep1, m.p, tn.rng, emit_one);
  sample_class(idle, m.gamma * m.p, tn.rng, emit_one);
  sample_class(meas1, 2.0 * m.p / 3.0, tn.rng, emit_flip);

  std::sort(fa.faults.begin(), fa.faults.end(),
            [&](const Fault& a, const Fault& b) {
              if (a.loc.layer != b.loc.layer) return a.loc.layer < b.loc.layer;
              if (a.loc.kind != b.loc.kind) return a.loc.kind < b.loc.kind;
              return a.loc.q0 < b.loc.q0;
            });

  fa.cc_phases.assign(n_layers, 0.0);
  switch (m.cc_policy) {
    case CcPolicy::Off:
      break;
    case CcPolicy::Fixed:
      std::fill(fa.cc_phases.begin(), fa.cc_phases.end(), m.theta);
      break;
    case CcPolicy::RandomPerTrial:
      std::fill(fa.cc_phases.begin(), fa.cc_phases.end(), tn.theta_trial);
      break;
    case CcPolicy::RandomPerLayer:
      for (double& th : fa.cc_phases)
        th = tn.rng.next_double() * 2.0 * std::numbers::pi;
      break;
  }
  return fa;
}

FaultAssignment sample_faults(const LayeredCircuit& c, const NoiseModel& m,
                              TrialNoise& tn) {
  return FaultSampler(c).sample(m, tn);
}

FaultAssignment sample_faults(const LayeredCircuit& c, const NoiseModel& m,
                              std::uint64_t trial_index) {
  TrialNoise tn = TrialNoise::start(m, trial_index);
  return sample_faults(c, m, tn);
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      auto b = s.find_last_not_of(" \t");
      return s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    kv[key] = value;
  }
  return kv;
}

NoiseModel noise_from_config(const KeyValues& kv) {
  NoiseModel m;
  if (auto it = kv.find("p"); it != kv.end()) m.p = std::stod(it->second);
  if (auto it = kv.find("gamma"); it != kv.end())
    m.gamma = std::stod(it->second);
  if (auto it = kv.find("cc_policy"); it != kv.end())
    m.cc_policy = parse_cc_policy(it->second);
  if (auto it = kv.find("theta"); it != kv.end())
    m.theta = std::stod(it->second);
  if (auto it = kv.find("seed"); it != kv.end())
    m.seed = std::stoull(it->second);
  if (m.p < 0.0 || m.p > 1.0)
    throw std::invalid_argument("p must lie in [0, 1]");
  if (m.gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  return m;
}

}  // namespace ceqc
