#pragma once

// One-parameter Mittag-Leffler function
//
//     E_b(z) = sum_{j >= 0} z^j / Gamma(b j + 1),   0 < b <= 1,  z complex.
//
// Two evaluation paths are provided.
//
// Series (ml_series). Terms are formed from z^j and Gamma(b j + 1) directly
// while both are finite and from log|z|, lgamma and the accumulated phase
// afterwards. Real and imaginary parts are accumulated with Neumaier
// compensated summation. The sum is truncated at the first term whose modulus
// falls below tol * |partial sum| once the terms are decreasing. The sum of
// term moduli bounds the rounding error; if eps * sum|t_j| exceeds
// tol * |result| the series is re-summed in MPFR with enough extra bits to
// absorb the cancellation.
//
// Contour (ml_contour). E_b(z) is the inverse Laplace transform at t = 1 of
//
//     F(s) = s^(b-1) / (s^b - z),
//
// whose singularities are the branch point s = 0 and the poles
// s_k = |z|^(1/b) exp(i (arg z + 2 k pi) / b) with |arg z + 2 k pi| <= b pi.
// The Bromwich line is deformed into the parabola
//
//     s(u) = mu (1 + i u)^2,   u in R,
//
// and the integral is approximated by the trapezoidal rule with step h on
// u_k = k h, |k| <= N. Poles left of the parabola contribute through the
// integral; poles right of it contribute residues exp(s_k) / b. The
// parabola is chosen by splitting the plane at the singularities, ordered
// by phi(s) = (Re s + |s|) / 2, and computing the optimal (mu, h, N) for each
// admissible strip: between two consecutive singularities the parameters
// balance discretisation and truncation error against the distance to both
// singularities; above the last one the unbounded-region estimate is used
// (R. Garrappa, SIAM J. Numer. Anal. 53 (2015) 1350-1369). The strip with
// the fewest nodes wins. The target error is tol / 10, and N is bounded by
// kMaxContourNodes. Residues are summed in long double so the phase of
// exp(s_k), which grows like |z|^(1/b), keeps its accuracy for small b.
//
// The dispatcher ml() uses the series inside series_radius(b) and the
// contour outside. For b = 1 it returns std::exp(z).

#include <complex>
#include <cstddef>

namespace fracdyn::mlf {

inline constexpr double kDefaultTol = 1e-12;
inline constexpr double kMinTol = 1e-14;
inline constexpr double kSeriesRadius = 5.0;
inline constexpr std::size_t kDefaultMaxTerms = 100000;
inline constexpr int kMaxContourNodes = 4000;

struct MlRequest {
  double beta = 1.0;
  std::complex<double> z{};
  double tol = kDefaultTol;
};

/// Throws DomainError unless 0 < beta <= 1, z is finite and tol >= kMinTol.
void validate(const MlRequest& req);

/// Truncated power series. Throws DomainError if |z| > radius and
/// NonConvergence if max_terms is reached first.
std::complex<double> ml_series(const MlRequest& req, std::size_t max_terms = kDefaultMaxTerms,
                               double radius = kSeriesRadius);

/// Laplace-transform inversion on an optimal parabolic contour.
std::complex<double> ml_contour(const MlRequest& req);

/// Radius inside which the dispatcher prefers the series for order beta.
/// Equals kSeriesRadius for beta near 1 and shrinks for small beta, where
/// the largest series term grows like exp(|z|^(1/beta)) and double-precision
/// cancellation would force the multiprecision fallback.
double series_radius(double beta);

std::complex<double> ml(double beta, std::complex<double> z, double tol = kDefaultTol);

}  // namespace fracdyn::mlf
