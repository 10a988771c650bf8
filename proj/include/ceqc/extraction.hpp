#pragma once

#include <string>
#include <vector>

#include "ceqc/circuit.hpp"
#include "ceqc/code.hpp"

namespace ceqc {

/*
 * The excitation-preserving cat resource on 2w qubits:
 * (|0101..> + |1010..>)/sqrt(2), the joint +1 eigenstate of X^{2w} and the
 * negated adjacent-pair chain -Z_i Z_{i+1}.
 */
struct CatSpec {
  int w = 0;
  std::vector<int> qubits;  // local indices 0..2w-1
  std::vector<Pauli> stabilizers;
};

CatSpec build_ce_cat(int w);  // throws CodeError for w < 1

enum class ExtractionMethod { Shor, Steane };

/*
 * One generator's classical readout: the measured ancilla qubits whose
 * outcome parity carries the eigenvalue, plus the generator's sign bit
 * (1 for a -1 phase). Absolute-outcome rule: bit = parity + sign; flip
 * rule: bit = parity (the sign offset lives in the fault-free reference).
 */
struct GeneratorReadout {
  int generator = -1;  // index into code.base().generators
  std::vector<int> ancillas;
  int sign_bit = 0;
  friend bool operator==(const GeneratorReadout&,
                         const GeneratorReadout&) = default;
};

struct ExtractionRound {
  ExtractionMethod method = ExtractionMethod::Shor;
  LayeredCircuit circuit;
  std::vector<GeneratorReadout> readouts;
  int n_generators = 0;
  friend bool operator==(const ExtractionRound&,
                         const ExtractionRound&) = default;
};

/*
 * One probe gadget per generator, measured with a fresh excitation-
 * preserving cat block: prepare cat(ceil(m/2)), couple ancilla j to the
 * j-th support qubit with the generator's letter, the control polarity
 * alternating with j (odd-position plain control, even-position zero
 * control), then read every ancilla in the X basis. Odd-weight generators
 * keep one idle padding ancilla. Z-type generators are probed first.
 */
ExtractionRound build_shor_round(const CssCode& code);

/*
 * Two logical ancilla blocks: block A prepared as the all-zeros logical
 * state couples onto the data (collecting Z information, read bitwise in
 * X), then the data couples onto block B prepared as the all-plus logical
 * state (collecting X information, read bitwise in Z). Transversal
 * couplings use a zero control exactly at the positions of the code's
 * basis shift, which keeps every block inside its shifted coset and
 * absorbs the polarity into the prepared blocks with no logical residue.
 * code_name must resolve for the logical preparations.
 */
ExtractionRound build_steane_round(const CssCode& code,
                                   const std::string& code_name);

// Single readout rule on absolute outcome bits.
int interpret_outcome_bits(const std::vector<int>& bits, int sign_bit);

/*
 * Full-syndrome interpretation. outcomes lists (qubit, bit) pairs exactly
 * as the simulators report them; the result is indexed by generator.
 * absolute mode consumes raw outcome bits; flip mode consumes flips
 * relative to the fault-free reference, where the sign offsets cancel.
 */
std::vector<int> interpret_absolute(
    const ExtractionRound& r,
    const std::vector<std::pair<int, int>>& outcomes);
std::vector<int> interpret_flips(
    const ExtractionRound& r, const std::vector<std::pair<int, int>>& flips);

// Circuit text plus a trailing meta: section carrying the readout map.
std::string serialize_round(const ExtractionRound& r);
ExtractionRound parse_round(const std::string& text);

}  // namespace ceqc
