#pragma once

#include <array>
#include <string>

namespace ceqc {

/*
 * Pauli-channel weights of the twirled mixed channel
 *   M(rho) = lambda * depolarize_p(rho) + (1-lambda) * U rho U*,
 * with U = exp(-i theta Z). Twirling over the single-qubit Pauli group
 * leaves the stochastic part untouched and converts the rotation into
 * dephasing with probability sin^2(theta):
 *   q1 = q2 = lambda p / 3,  q3 = lambda p / 3 + (1-lambda) sin^2(theta),
 * and q0 fills to unit total. R compares the twirled phase-flip weight to
 * the bare rate p; it is reported as +infinity when p = 0.
 */
struct TwirlResult {
  std::array<double, 4> q{1.0, 0.0, 0.0, 0.0};  // I, X, Y, Z weights
  double R = 0.0;
};

// Closed form. Throws std::invalid_argument when lambda or p leave [0, 1].
TwirlResult twirl_mixture(double lambda, double p, double theta);

/*
 * Ground truth for the closed form: builds the channel's 4x4 Pauli
 * transfer matrix, averages it over Pauli conjugations, and reads the
 * weights off the twirled diagonal (q0 by normalization).
 */
TwirlResult twirl_numeric(double lambda, double p, double theta);

// Error-suppression factor R^(t+1) for a distance-(2t+1) code.
// Requires R > 0 and t >= 0.
double logical_gain(double R, int t);

std::string twirl_csv_header();
std::string twirl_csv_row(double lambda, double p, double theta);

}  // namespace ceqc
