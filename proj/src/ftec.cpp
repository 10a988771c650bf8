#include "ceqc/ftec.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace ceqc {

Syndrome pack_syndrome(const std::vector<int>& bits) {
  Syndrome s = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] & 1) s |= Syndrome{1} << i;
  return s;
}

std::string frame_error_string(const FrameError& e, int n) {
  Pauli p = Pauli::identity(n);
  p.x = e.x;
  p.z = e.z;
  p.phase = (e.x & e.z).popcount() & 3;  // plain letters, no phase prefix
  return format_pauli(p);
}

namespace {

Pauli as_pauli(const FrameError& e, int n) {
  Pauli p = Pauli::identity(n);
  p.x = e.x;
  p.z = e.z;
  return p;
}

FrameError xor_of(const FrameError& a, const FrameError& b) {
  return {a.x ^ b.x, a.z ^ b.z};
}

/* Letter cycling for weight-w enumeration: 1=X, 2=Y, 3=Z at each chosen
 * position. */
void enumerate_bodies(int n, int w,
                      const std::function<void(const FrameError&)>& visit) {
  std::vector<int> pos(w), letter(w);
  std::function<void(int, int)> rec = [&](int depth, int start) {
    if (depth == w) {
      FrameError e;
      for (int i = 0; i < w; ++i) {
        if (letter[i] != 3) e.x.set(pos[i]);
        if (letter[i] != 1) e.z.set(pos[i]);
      }
      visit(e);
      return;
    }
    for (int q = start; q < n; ++q) {
      pos[depth] = q;
      for (int l = 1; l <= 3; ++l) {
        letter[depth] = l;
        rec(depth + 1, q + 1);
      }
    }
  };
  if (w == 0)
    visit(FrameError{});
  else
    rec(0, 0);
}

}  // namespace

PerfectDecoder PerfectDecoder::build(const CssCode& c) {
  PerfectDecoder d;
  d.code = c.base();
  const int n = d.code.n;
  const int n_syn = static_cast<int>(d.code.generators.size());

  const int probe = std::min(n, 4);
  std::optional<int> dist = distance_brute_force(d.code, probe);
  d.distance = dist.value_or(probe + 1);
  d.t = (d.distance - 1) / 2;

  // Weights climb until every syndrome has a leader; typical codes finish
  // by weight 3 or 4, so the nominal n bound is rarely approached.
  const std::size_t want = std::size_t{1} << n_syn;
  for (int w = 0; w <= n && d.leaders.size() < want; ++w) {
    enumerate_bodies(n, w, [&](const FrameError& e) {
      Syndrome s = d.syndrome_bits(e);
      d.leaders.try_emplace(s, e);
    });
  }
  return d;
}

Syndrome PerfectDecoder::syndrome_bits(const FrameError& e) const {
  Syndrome s = 0;
  for (std::size_t g = 0; g < code.generators.size(); ++g) {
    const Pauli& gen = code.generators[g];
    if ((e.x.dot(gen.z) ^ e.z.dot(gen.x)) != 0) s |= Syndrome{1} << g;
  }
  return s;
}

bool PerfectDecoder::decode_success(const FrameError& residual) const {
  Syndrome s = syndrome_bits(residual);
  auto it = leaders.find(s);
  if (it == leaders.end()) return false;
  return in_group_body(code, as_pauli(xor_of(residual, it->second), code.n));
}

const TableEntry* SyndromeTable::find(Syndrome s) const {
  auto it = entries.find(s);
  return it == entries.end() ? nullptr : &it->second;
}

namespace {

struct ProtocolOutcome {
  Syndrome s1 = 0, s2 = 0;
  int rounds = 1;
  FrameError residual;  // data frame at the end, before any correction
};

/* Noiseless-apart-from-the-listed-faults run of the two-round schedule.
 * Deterministic: no rotation slots, so no records and no collapse draws. */
ProtocolOutcome run_schedule(const ExtractionRound& round,
                             const FrameError& input,
                             const std::vector<std::pair<int, Fault>>& faults) {
  const LayeredCircuit& c = round.circuit;
  EngineConfig cfg;
  Rng rng = Rng::keyed(0, 0);
  SimState s = SimState::fresh(c);
  s.a |= input.x;
  s.b |= input.z;

  FaultAssignment fa1, fa2;
  for (const auto& [ri, f] : faults) (ri == 0 ? fa1 : fa2).faults.push_back(f);

  ProtocolOutcome out;
  simulate(s, c, fa1, cfg, rng);
  out.s1 = pack_syndrome(interpret_flips(round, s.outcomes));
  if (out.s1 != 0) {
    const auto n1 = static_cast<std::ptrdiff_t>(s.outcomes.size());
    simulate(s, c, fa2, cfg, rng);
    std::vector<std::pair<int, int>> second(s.outcomes.begin() + n1,
                                            s.outcomes.end());
    out.s2 = pack_syndrome(interpret_flips(round, second));
    out.rounds = 2;
  }

  BitVec data_mask;
  for (int q = c.data_begin; q < c.data_end; ++q) data_mask.set(q);
  out.residual = {s.a & data_mask, s.b & data_mask};
  return out;
}

std::string describe_fault(const std::pair<int, Fault>& rf) {
  const auto& [ri, f] = rf;
  std::ostringstream os;
  os << "round " << ri + 1 << " layer " << f.loc.layer << " ";
  switch (f.loc.kind) {
    case LocationKind::Gate2:
      os << "gate q" << f.loc.q0 << ":q" << f.loc.q1;
      break;
    case LocationKind::Prep1: os << "prep q" << f.loc.q0; break;
    case LocationKind::Idle: os << "idle q" << f.loc.q0; break;
    case LocationKind::Meas1: os << "readout q" << f.loc.q0; break;
  }
  if (f.loc.kind != LocationKind::Meas1) os << " value " << f.pauli;
  return os.str();
}

std::vector<int> fault_values(const Location& loc) {
  switch (loc.kind) {
    case LocationKind::Gate2: {
      std::vector<int> v(15);
      for (int i = 0; i < 15; ++i) v[i] = i + 1;
      return v;
    }
    case LocationKind::Meas1: return {0};
    default: return {1, 2, 3};
  }
}

void table_insert(SyndromeTable& t, const StabilizerCode& code, Syndrome key,
                  const FrameError& corr, const std::string& origin,
                  const TableProvenance& prov,
                  const PerfectDecoder& dec) {
  auto it = t.entries.find(key);
  if (it == t.entries.end()) {
    t.entries.emplace(key, TableEntry{corr, origin, prov, 1});
    return;
  }
  TableEntry& e = it->second;
  ++e.sources;
  FrameError diff = xor_of(e.correction, corr);
  if (diff.none()) return;
  if (in_group_body(code, as_pauli(diff, code.n))) {
    ++t.merged_collisions;
    return;
  }
  if (dec.syndrome_bits(diff) == 0) {
    std::ostringstream os;
    os << "syndrome 0x" << std::hex << key << std::dec << ": "
       << e.origin << " -> " << frame_error_string(e.correction, code.n)
       << " vs " << origin << " -> " << frame_error_string(corr, code.n)
       << " differ by the logical operator "
       << frame_error_string(diff, code.n);
    throw LogicalCollisionError(os.str());
  }
  ++t.mixed_collisions;
}

}  // namespace

SyndromeTable build_lookup_table(const CssCode& code,
                                 const ExtractionRound& round,
                                 const PerfectDecoder& dec) {
  SyndromeTable table;
  const StabilizerCode& base = code.base();
  const int n = base.n;

  // Input errors up to the correctable weight, run noiselessly. For a
  // distance-2 code this stage is empty and the table stays detect-only.
  for (int w = 1; w <= dec.t; ++w) {
    enumerate_bodies(n, w, [&](const FrameError& e) {
      ProtocolOutcome out = run_schedule(round, e, {});
      if (out.rounds == 1 || out.s2 == 0) return;
      TableProvenance prov;
      prov.input = e;
      table_insert(table, base, out.s2, out.residual,
                   "input " + frame_error_string(e, n), prov, dec);
    });
  }

  if (dec.t >= 1) {
    for (int ri = 0; ri < 2; ++ri) {
      for (const Location& loc : enumerate_locations(round.circuit)) {
        for (int v : fault_values(loc)) {
          Fault f;
          f.loc = loc;
          f.pauli = v;
          ProtocolOutcome out = run_schedule(round, {}, {{ri, f}});
          if (out.rounds == 1 || out.s2 == 0) continue;
          TableProvenance prov;
          prov.fault = {ri, f};
          table_insert(table, base, out.s2, out.residual,
                       describe_fault({ri, f}), prov, dec);
        }
      }
    }
  }
  return table;
}

std::string serialize_table(const SyndromeTable& t, int n_qubits) {
  std::ostringstream os;
  for (const auto& [key, entry] : t.entries) {
    os << "0x" << std::hex << key << std::dec << " -> "
       << frame_error_string(entry.correction, n_qubits) << "\n";
  }
  return os.str();
}

Syndrome replay_syndrome(const ExtractionRound& round,
                         const TableProvenance& prov) {
  std::vector<std::pair<int, Fault>> faults;
  if (prov.fault) faults.push_back(*prov.fault);
  return run_schedule(round, prov.input, faults).s2;
}

ProtocolRun run_ftec(const ExtractionRound& round, const SyndromeTable& table,
                     const FrameError& input,
                     const std::vector<std::pair<int, Fault>>& faults) {
  ProtocolOutcome out = run_schedule(round, input, faults);
  ProtocolRun run;
  run.trace.s1 = out.s1;
  run.trace.s2 = out.s2;
  run.trace.rounds = out.rounds;
  if (out.rounds == 2 && out.s2 != 0) {
    if (const TableEntry* e = table.find(out.s2))
      run.trace.correction = e->correction;
    else
      run.trace.unknown_syndrome = true;
  }
  run.residual = xor_of(out.residual, run.trace.correction);
  return run;
}

TrialResult run_ftec_trial(const ExtractionRound& round,
                           const SyndromeTable& table,
                           const PerfectDecoder& dec,
                           const FaultSampler& sampler, const NoiseModel& m,
                           std::uint64_t trial, const TrialConfig& tc) {
  const LayeredCircuit& c = round.circuit;
  if (m.cc_policy != CcPolicy::Off && !c.cc_layers_enabled)
    throw EngineError("phase policy is on but the round has no rotation slots");

  TrialNoise tn = TrialNoise::start(m, trial);
  SimState s = SimState::fresh(c);

  FaultAssignment fa1 = sampler.sample(m, tn);
  simulate(s, c, fa1, tc.engine, tn.rng);

  TrialResult res;
  res.trace.s1 = pack_syndrome(interpret_flips(round, s.outcomes));
  if (res.trace.s1 != 0) {
    res.trace.rounds = 2;
    if (tc.cc_round2_fresh && m.cc_policy == CcPolicy::RandomPerTrial)
      tn.theta_trial = tn.rng.next_double() * 2.0 * std::numbers::pi;
    const auto n1 = static_cast<std::ptrdiff_t>(s.outcomes.size());
    FaultAssignment fa2 = sampler.sample(m, tn);
    simulate(s, c, fa2, tc.engine, tn.rng);
    std::vector<std::pair<int, int>> second(s.outcomes.begin() + n1,
                                            s.outcomes.end());
    res.trace.s2 = pack_syndrome(interpret_flips(round, second));
    if (res.trace.s2 != 0) {
      if (const TableEntry* e = table.find(res.trace.s2))
        res.trace.correction = e->correction;
      else
        res.trace.unknown_syndrome = true;
    }
  }

  s.a ^= res.trace.correction.x;
  s.b ^= res.trace.correction.z;
  finalize_records(s, tn.rng);

  BitVec data_mask;
  for (int q = c.data_begin; q < c.data_end; ++q) data_mask.set(q);
  res.residual = {s.a & data_mask, s.b & data_mask};
  res.failed = !dec.decode_success(res.residual);
  res.sign_ambiguous_merges = s.sign_ambiguous_merges;
  return res;
}

TrialResult run_ftec_trial(const ExtractionRound& round,
                           const SyndromeTable& table,
                           const PerfectDecoder& dec, const NoiseModel& m,
                           std::uint64_t trial, const TrialConfig& tc) {
  FaultSampler sampler(round.circuit);
  return run_ftec_trial(round, table, dec, sampler, m, trial, tc);
}

namespace {

std::vector<FrameError> span_bodies(const std::vector<Pauli>& gens) {
  std::vector<FrameError> out;
  out.push_back({});
  for (const Pauli& g : gens) {
    const std::size_t sz = out.size();
    for (std::size_t i = 0; i < sz; ++i)
      out.push_back({out[i].x ^ g.x, out[i].z ^ g.z});
  }
  return out;
}

int min_coset_weight(const FrameError& e, const std::vector<FrameError>& span) {
  int best = kMaxQubits;
  for (const FrameError& s : span) {
    int w = xor_of(e, s).weight();
    if (w < best) best = w;
    if (best == 0) break;
  }
  return best;
}

}  // namespace

FtecReport verify_fault_tolerance(const CssCode& code,
                                  const ExtractionRound& round,
                                  const SyndromeTable& table,
                                  const PerfectDecoder& dec) {
  const StabilizerCode& base = code.base();
  const int n = base.n;
  const int t = std::min(dec.t, 1);

  const std::vector<FrameError> stab_span = span_bodies(base.generators);
  std::vector<Pauli> nlgens = base.generators;
  nlgens.insert(nlgens.end(), base.logical_x.begin(), base.logical_x.end());
  nlgens.insert(nlgens.end(), base.logical_z.begin(), base.logical_z.end());
  const std::vector<FrameError> norm_span = span_bodies(nlgens);

  FtecReport report;

  auto run_case = [&](const FrameError& input,
                      const std::optional<std::pair<int, Fault>>& fault) {
    std::vector<std::pair<int, Fault>> faults;
    if (fault) faults.push_back(*fault);
    ProtocolOutcome out = run_schedule(round, input, faults);

    FrameError corr;
    bool unknown = false;
    if (out.rounds == 2 && out.s2 != 0) {
      if (const TableEntry* e = table.find(out.s2))
        corr = e->correction;
      else
        unknown = true;
    }
    FrameError residual = xor_of(out.residual, corr);

    FtecRecord rec;
    rec.input = input.none() ? "I" : frame_error_string(input, n);
    rec.fault = fault ? describe_fault(*fault) : "none";
    rec.rounds = out.rounds;
    rec.s2 = out.s2;
    rec.residual = frame_error_string(residual, n);
    if (unknown) report.unknown_syndrome_seen = true;

    const int in_w = input.weight();
    const int fault_n = fault ? 1 : 0;
    rec.checked_a = in_w + fault_n <= t;
    rec.checked_b = (fault_n == 1 && in_w == 0) || (fault_n == 0 && in_w == 1);

    bool bad = false;
    if (rec.checked_a) {
      ++report.cases_a;
      rec.decode_ok = dec.decode_success(residual);
      if (!rec.decode_ok) bad = true;
    }
    if (rec.checked_b) {
      ++report.cases_b;
      rec.coset_weight = min_coset_weight(residual, stab_span);
      rec.normalizer_weight = min_coset_weight(residual, norm_span);
      if (rec.coset_weight > 1) bad = true;
    }
    if (!bad)
      rec.status = "ok";
    else if (rec.checked_a && !rec.decode_ok && rec.checked_b &&
             rec.coset_weight > 1)
      rec.status = "violation:ab";
    else if (rec.checked_a && !rec.decode_ok)
      rec.status = "violation:a";
    else
      rec.status = "violation:b";

    if (rec.checked_a || rec.checked_b) {
      report.records.push_back(rec);
      if (bad) report.violations.push_back(report.records.size() - 1);
    }
  };

  run_case({}, std::nullopt);
  enumerate_bodies(n, 1,
                   [&](const FrameError& e) { run_case(e, std::nullopt); });
  for (int ri = 0; ri < 2; ++ri)
    for (const Location& loc : enumerate_locations(round.circuit))
      for (int v : fault_values(loc)) {
        Fault f;
        f.loc = loc;
        f.pauli = v;
        run_case({}, std::make_pair(ri, f));
      }
  return report;
}

std::string ftec_report_csv(const FtecReport& r) {
  std::ostringstream os;
  os << "input,fault,rounds,syndrome2,residual,checked_a,checked_b,"
        "decode_ok,coset_weight,normalizer_weight,status\n";
  for (const FtecRecord& rec : r.records) {
    os << rec.input << "," << rec.fault << "," << rec.rounds << ",0x"
       << std::hex << rec.s2 << std::dec << "," << rec.residual << ","
       << (rec.checked_a ? 1 : 0) << "," << (rec.checked_b ? 1 : 0) << ","
       << (rec.decode_ok ? 1 : 0) << "," << rec.coset_weight << ","
       << rec.normalizer_weight << "," << rec.status << "\n";
  }
  return os.str();
}

}  // namespace ceqc
