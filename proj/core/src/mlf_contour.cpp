#include "fracdyn/errors.hpp"
#include "fracdyn/mlf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace fracdyn::mlf {
namespace {

constexpr double kPi = std::numbers::pi;
const double kLogEps = std::log(std::numeric_limits<double>::epsilon());
constexpr double kInf = std::numeric_limits<double>::infinity();

struct ContourParams {
  double mu = 0.0;
  double h = 0.0;
  double nodes = kInf;  // kept as double so "inadmissible" can be +inf
};

// Optimal parabola for the strip phi in (phi_lo, phi_hi) between two
// singularities with strengths p (below) and q (above).
ContourParams optimal_bounded(double phi_lo, double phi_hi, double p, double q, double log_tol) {
  constexpr double fac = 1.01;
  const double f_max = std::exp(log_tol - kLogEps);

  const double sq_lo = std::sqrt(phi_lo);
  const double threshold = 2.0 * std::sqrt(log_tol - kLogEps);
  const double sq_hi = std::min(std::sqrt(phi_hi), threshold - sq_lo);

  double sq_bar_lo = 0.0;
  double sq_bar_hi = 0.0;
  double f_bar = 1.0;
  bool admissible = false;

  if (p < 1e-14 && q < 1e-14) {
    sq_bar_lo = sq_lo;
    sq_bar_hi = sq_hi;
    admissible = true;
  } else if (p < 1e-14) {
    sq_bar_lo = sq_lo;
    const double f_min = sq_lo > 0.0 ? fac * std::pow(sq_lo / (sq_hi - sq_lo), q) : fac;
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fq = std::pow(f_bar, -1.0 / q);
      sq_bar_hi = (2.0 * sq_hi - fq * sq_lo) / (2.0 + fq);
      admissible = true;
    }
  } else if (q < 1e-14) {
    sq_bar_hi = sq_hi;
    const double f_min = fac * std::pow(sq_hi / (sq_hi - sq_lo), p);
    if (f_min < f_max) {
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / p);
      sq_bar_lo = (2.0 * sq_lo + fp * sq_hi) / (2.0 - fp);
      admissible = true;
    }
  } else {
    double f_min = fac * (sq_lo + sq_hi) / std::pow(sq_hi - sq_lo, std::max(p, q));
    if (f_min < f_max) {
      f_min = std::max(f_min, 1.5);
      f_bar = f_min + f_min / f_max * (f_max - f_min);
      const double fp = std::pow(f_bar, -1.0 / p);
      const double fq = std::pow(f_bar, -1.0 / q);
      const double w = -phi_hi / log_tol;
      const double den = 2.0 + w - (1.0 + w) * fp + fq;
      sq_bar_lo = ((2.0 + w + fq) * sq_lo + fp * sq_hi) / den;
      sq_bar_hi = (-(1.0 + w) * fq * sq_lo + (2.0 + w - (1.0 + w) * fp) * sq_hi) / den;
      admissible = true;
    }
  }
  if (!admissible || !(sq_bar_hi > sq_bar_lo)) return {};

  const double log_eff = log_tol - std::log(f_bar);
  const double w = -sq_bar_hi * sq_bar_hi / log_eff;
  const double mu = std::pow(((1.0 + w) * sq_bar_lo + sq_bar_hi) / (2.0 + w), 2);
  const double h = -2.0 * kPi / log_eff * (sq_bar_hi - sq_bar_lo) / ((1.0 + w) * sq_bar_lo + sq_bar_hi);
  const double nodes = std::ceil(std::sqrt(1.0 - log_eff / mu) / h);
  if (!(mu > 0.0) || !(h > 0.0) || !std::isfinite(nodes)) return {};
  return {mu, h, nodes};
}

// Optimal parabola for the unbounded strip above the last singularity.
ContourParams optimal_unbounded(double phi_lo, double p, double log_tol) {
  const double sq_phi = std::sqrt(phi_lo);
  double phi_bar = phi_lo > 0.0 ? phi_lo * 1.01 : 0.01;
  double sq_phi_bar = std::sqrt(phi_bar);

  constexpr double f_min = 1.0;
  constexpr double f_max = 10.0;
  constexpr double f_tar = 5.0;

  double nodes = 0.0;
  double a = 0.0;
  double sq_mu = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double log_eps_phi = log_tol / phi_bar;
    nodes = std::ceil(phi_bar / kPi * (1.0 - 1.5 * log_eps_phi + std::sqrt(1.0 - 2.0 * log_eps_phi)));
    a = kPi * nodes / phi_bar;
    sq_mu = sq_phi_bar * std::abs(4.0 - a) / std::abs(7.0 - std::sqrt(1.0 + 12.0 * a));
    const double f_bar = std::pow((sq_phi_bar - sq_phi) / sq_mu, -p);
    if (p < 1e-14 || (f_min < f_bar && f_bar < f_max)) break;
    sq_phi_bar = std::pow(f_tar, -1.0 / p) * sq_mu + sq_phi;
    phi_bar = sq_phi_bar * sq_phi_bar;
  }
  double mu = sq_mu * sq_mu;
  double h = (-3.0 * a - 2.0 + 2.0 * std::sqrt(1.0 + 12.0 * a)) / (4.0 - a) / nodes;

  // Keep exp(mu) from amplifying round-off beyond the target.
  const double threshold = log_tol - kLogEps;
  if (mu > threshold) {
    const double shift = p < 1e-14 ? 0.0 : std::pow(f_tar, -1.0 / p) * std::sqrt(mu);
    phi_bar = std::pow(shift + sq_phi, 2);
    if (phi_bar < threshold) {
      const double w = std::sqrt(kLogEps / (kLogEps - log_tol));
      const double u = std::sqrt(-phi_bar / kLogEps);
      mu = threshold;
      nodes = std::ceil(w * log_tol / 2.0 / kPi / (u * w - 1.0));
      h = w / nodes;
    } else {
      return {};
    }
  }
  if (!(mu > 0.0) || !(h > 0.0) || !(nodes > 0.0)) return {};
  return {mu, h, nodes};
}

struct Singularity {
  std::complex<long double> s;  // pole location (origin for the branch point)
  double phi;
};

}  // namespace

std::complex<double> ml_contour(const MlRequest& req) {
  validate(req);
  const double beta = req.beta;
  const std::complex<double> z = req.z;
  if (z == 0.0) return 1.0;
  if (beta == 1.0) return std::exp(z);

  const double log_tol = std::log(req.tol * 0.1);

  // Poles of s^(beta-1) / (s^beta - z) on the principal sheet, computed in
  // long double: exp(s_k) carries a phase of order |z|^(1/beta).
  const long double theta = std::atan2(static_cast<long double>(z.imag()), static_cast<long double>(z.real()));
  const long double radius = std::pow(std::hypot(static_cast<long double>(z.real()),
                                                 static_cast<long double>(z.imag())),
                                      1.0L / static_cast<long double>(beta));
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const auto k_min = static_cast<long>(std::ceil(-beta / 2.0 - static_cast<double>(theta / two_pi)));
  const auto k_max = static_cast<long>(std::floor(beta / 2.0 - static_cast<double>(theta / two_pi)));

  std::vector<Singularity> poles;
  for (long k = k_min; k <= k_max; ++k) {
    const long double angle = (theta + two_pi * static_cast<long double>(k)) / static_cast<long double>(beta);
    const std::complex<long double> s = std::polar(radius, angle);
    const double phi = static_cast<double>((s.real() + std::abs(s)) / 2.0L);
    // Poles on the negative real axis sit inside every parabola.
    if (phi > 1e-15) poles.push_back({s, phi});
  }
  std::sort(poles.begin(), poles.end(), [](const Singularity& a, const Singularity& b) { return a.phi < b.phi; });

  std::vector<Singularity> sing;
  sing.push_back({{0.0L, 0.0L}, 0.0});
  sing.insert(sing.end(), poles.begin(), poles.end());
  const std::size_t count = sing.size();

  // Strengths: the branch point at the origin has p = 0; simple poles 1.
  std::vector<double> p(count, 1.0);
  std::vector<double> q(count, 1.0);
  p[0] = 0.0;
  q[count - 1] = kInf;
  std::vector<double> phi(count + 1);
  for (std::size_t j = 0; j < count; ++j) phi[j] = sing[j].phi;
  phi[count] = kInf;

  const double round_off_limit = log_tol - kLogEps;
  std::size_t best = count;
  ContourParams best_params;
  for (std::size_t j = 0; j < count; ++j) {
    if (!(phi[j] < round_off_limit && phi[j] < phi[j + 1])) continue;
    const ContourParams cp = (j + 1 < count) ? optimal_bounded(phi[j], phi[j + 1], p[j], q[j], log_tol)
                                             : optimal_unbounded(phi[j], p[j], log_tol);
    if (cp.nodes < best_params.nodes) {
      best_params = cp;
      best = j;
    }
  }
  if (best == count || best_params.nodes > kMaxContourNodes) {
    throw NonConvergence("ml_contour: no admissible contour reaches tolerance " + std::to_string(req.tol) +
                         " within " + std::to_string(kMaxContourNodes) + " nodes (beta = " +
                         std::to_string(beta) + ", z = " + std::to_string(z.real()) + " + " +
                         std::to_string(z.imag()) + "i)");
  }

  const double mu = best_params.mu;
  const double h = best_params.h;
  const auto n = static_cast<long>(best_params.nodes);
  const std::complex<double> zz = z;
  auto integrand = [&](double u) {
    const std::complex<double> s = mu * std::pow(std::complex<double>(1.0, u), 2);
    const std::complex<double> ds = std::complex<double>(-2.0 * mu * u, 2.0 * mu);
    const std::complex<double> sb = std::pow(s, beta);
    return std::exp(s) * (sb / s) / (sb - zz) * ds;
  };

  // Trapezoidal sum; the k and -k nodes pair up symmetrically.
  std::complex<double> acc = integrand(0.0);
  for (long k = 1; k <= n; ++k) {
    const double u = h * static_cast<double>(k);
    acc += integrand(u) + integrand(-u);
  }
  const std::complex<double> integral = h * acc / std::complex<double>(0.0, 2.0 * kPi);

  std::complex<long double> residues{0.0L, 0.0L};
  for (std::size_t j = best + 1; j < count; ++j) {
    residues += std::exp(sing[j].s) / static_cast<long double>(beta);
  }

  std::complex<double> value = integral + std::complex<double>(static_cast<double>(residues.real()),
                                                               static_cast<double>(residues.imag()));
  if (z.imag() == 0.0) value = {value.real(), 0.0};
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw NumericalFailure("ml_contour: E_beta(z) overflows double precision");
  }
  return value;
}

}  // namespace fracdyn::mlf
