#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ceqc/pauli.hpp"

namespace ceqc {

struct StabilizerCode {
  int n = 0;
  int k = 0;
  std::vector<Pauli> generators;  // phases restricted to {+1, -1}
  std::vector<Pauli> logical_x;
  std::vector<Pauli> logical_z;
};

// CSS view: generator indices split by type plus the basis-string shift that
// fixes which coset of C2 carries the all-plus-one-signs codewords.
struct CssCode {
  StabilizerCode code;
  bool is_css = false;
  std::vector<int> x_rows;
  std::vector<int> z_rows;
  std::uint64_t shift_y = 0;  // defined only when is_css

  const StabilizerCode& base() const { return code; }
};

struct CodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CeReport {
  bool passed = false;
  std::vector<std::string> violations;
  int weight = -1;  // excitation weight for the full check, -1 otherwise
};

struct ConcatenationResult {
  CssCode code;  // is_css mirrors the input
  std::vector<Pauli> symplectic_partners;  // X_{2j} (1-based even rail)
};

// --- validation and group structure -------------------------------------

// Throws CodeError naming the first violated invariant.
void validate(const StabilizerCode& c);

// Symplectic row (x | z << n) of a Pauli body; n <= 32.
std::uint64_t symplectic_row(const Pauli& p);

// Body-level membership: is P's (x,z) in the GF(2) span of the generators?
bool in_group_body(const StabilizerCode& c, const Pauli& p);

// When the body is in the group, replay the generator product and report
// whether the sign matches p's; nullopt when the body is outside the group.
std::optional<bool> sign_matches_group(const StabilizerCode& c,
                                       const Pauli& p);

std::vector<int> syndrome_of(const StabilizerCode& c, const Pauli& error);

// --- CE structure --------------------------------------------------------

Pauli tau(const Pauli& p);

ConcatenationResult dual_rail_concatenate(const StabilizerCode& c);

CeReport check_ce_necessary(const StabilizerCode& c);

// Full coset enumeration; requires is_css and |C1| <= 2^20.
CeReport check_ce_full(const CssCode& c);

// Minimum weight of a Pauli commuting with all generators whose body lies
// outside the generated group; nullopt when nothing is found up to max_w.
// Membership is body-level: a normalizer element equal to a stabilizer up to
// sign acts as a global phase on the code space and is not an error.
std::optional<int> distance_brute_force(const StabilizerCode& c, int max_w);

// Number of Pauli candidates distance_brute_force will enumerate.
std::uint64_t distance_search_cost(int n, int max_w);

// --- construction helpers ------------------------------------------------

// Classify generators as pure-X/pure-Z and solve for the shift; throws
// CodeError when a generator is mixed or the sign system is inconsistent.
CssCode make_css(const StabilizerCode& c);

// Derive a valid logical basis (symplectic Gram-Schmidt; CSS-aware fast
// path). Deterministic; replaces any logicals already present.
StabilizerCode derive_logicals(StabilizerCode c);

// --- built-ins and formats -----------------------------------------------

// Names: c4, c12, c14 (CSS) and c10 (non-CSS, flagged).
CssCode builtin(const std::string& name);
std::vector<std::string> builtin_names();

std::string serialize_code(const CssCode& c, const std::string& name);
std::pair<std::string, CssCode> parse_code(const std::string& text);

}  // namespace ceqc
