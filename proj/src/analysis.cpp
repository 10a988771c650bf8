#include "ceqc/analysis.hpp"

#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ceqc {

TwirlResult twirl_mixture(double lambda, double p, double theta) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("lambda must lie in [0, 1]");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");

  TwirlResult r;
  const double s2 = std::sin(theta) * std::sin(theta);
  r.q[1] = lambda * p / 3.0;
  r.q[2] = lambda * p / 3.0;
  r.q[3] = lambda * p / 3.0 + (1.0 - lambda) * s2;
  r.q[0] = 1.0 - r.q[1] - r.q[2] - r.q[3];
  r.R = p > 0.0 ? r.q[3] / p : std::numeric_limits<double>::infinity();
  return r;
}

namespace {

using C = std::complex<double>;
using Mat2 = std::array<C, 4>;  // row-major 2x2

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 dag(const Mat2& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

C trace(const Mat2& a) { return a[0] + a[3]; }

const Mat2 kI{1, 0, 0, 1};
const Mat2 kX{0, 1, 1, 0};
const Mat2 kY{0, C(0, -1), C(0, 1), 0};
const Mat2 kZ{1, 0, 0, -1};
const std::array<Mat2, 4> kPauli{kI, kX, kY, kZ};

}  // namespace

TwirlResult twirl_numeric(double lambda, double p, double theta) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("lambda must lie in [0, 1]");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");

  const Mat2 u{std::exp(C(0, -theta)), 0, 0, std::exp(C(0, theta))};
  auto channel = [&](const Mat2& rho) {
    Mat2 out{};
    for (int k = 0; k < 4; ++k) {
      const double w = k == 0 ? lambda * (1.0 - p) : lambda * p / 3.0;
      Mat2 term = mul(kPauli[k], mul(rho, dag(kPauli[k])));
      for (int i = 0; i < 4; ++i) out[i] += w * term[i];
    }
    Mat2 rot = mul(u, mul(rho, dag(u)));
    for (int i = 0; i < 4; ++i) out[i] += (1.0 - lambda) * rot[i];
    return out;
  };

  // Transfer matrix R_ij = tr(P_i M(P_j)) / 2, twirled by averaging over
  // Pauli conjugations before and after the channel.
  std::array<double, 4> diag{};
  for (int j = 0; j < 4; ++j) {
    Mat2 acc{};
    for (int g = 0; g < 4; ++g) {
      Mat2 in = mul(kPauli[g], mul(kPauli[j], dag(kPauli[g])));
      Mat2 out = channel(in);
      Mat2 back = mul(dag(kPauli[g]), mul(out, kPauli[g]));
      for (int i = 0; i < 4; ++i) acc[i] += 0.25 * back[i];
    }
    diag[j] = 0.5 * std::real(trace(mul(kPauli[j], acc)));
  }

  TwirlResult r;
  r.q[1] = (1.0 + diag[1] - diag[2] - diag[3]) / 4.0;
  r.q[2] = (1.0 - diag[1] + diag[2] - diag[3]) / 4.0;
  r.q[3] = (1.0 - diag[1] - diag[2] + diag[3]) / 4.0;
  r.q[0] = 1.0 - r.q[1] - r.q[2] - r.q[3];
  r.R = p > 0.0 ? r.q[3] / p : std::numeric_limits<double>::infinity();
  return r;
}

double logical_gain(double R, int t) {
  if (!(R > 0.0)) throw std::invalid_argument("gain needs R > 0");
  if (t < 0) throw std::invalid_argument("gain needs t >= 0");
  return std::pow(R, t + 1);
}

std::string twirl_csv_header() {
  return "lambda,p,theta,q0,q1,q2,q3,R,gain_t1";
}

std::string twirl_csv_row(double lambda, double p, double theta) {
  TwirlResult r = twirl_mixture(lambda, p, theta);
  std::ostringstream os;
  os << std::setprecision(12) << lambda << "," << p << "," << theta;
  for (double q : r.q) os << "," << q;
  os << "," << r.R << "," << r.R * r.R;
  return os.str();
}

}  // namespace ceqc
