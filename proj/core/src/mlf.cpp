#include "fracdyn/mlf.hpp"

#include "fracdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracdyn::mlf {
namespace {

// Largest |z|^(1/beta) for which the double-precision series loses at most
// about two digits to cancellation (max term ~ exp of this value).
constexpr double kSeriesGrowth = 3.5;

}  // namespace

void validate(const MlRequest& req) {
  if (!(req.beta > 0.0 && req.beta <= 1.0)) {
    throw DomainError("Mittag-Leffler order must lie in (0, 1], got " + std::to_string(req.beta));
  }
  if (!std::isfinite(req.z.real()) || !std::isfinite(req.z.imag())) {
    throw DomainError("Mittag-Leffler argument must be finite");
  }
  if (!(req.tol >= kMinTol)) {
    throw DomainError("Mittag-Leffler tolerance must be at least 1e-14, got " + std::to_string(req.tol));
  }
}

double series_radius(double beta) { return std::min(kSeriesRadius, std::pow(kSeriesGrowth, beta)); }

std::complex<double> ml(double beta, std::complex<double> z, double tol) {
  const MlRequest req{beta, z, tol};
  validate(req);
  if (beta == 1.0) return std::exp(z);
  if (std::abs(z) <= series_radius(beta)) return ml_series(req);
  return ml_contour(req);
}

}  // namespace fracdyn::mlf
