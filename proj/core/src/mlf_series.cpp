#include "fracdyn/errors.hpp"
#include "fracdyn/mlf.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fracdyn::mlf {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr long kMaxMpBits = 8192;

// Neumaier compensated sum of one real component.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Running log-sum-exp of term moduli, used to bound rounding error without
// overflowing when individual terms exceed the double range.
class LogAbsSum {
 public:
  void add(double log_abs) {
    if (log_abs == -std::numeric_limits<double>::infinity()) return;
    if (log_abs <= max_) {
      acc_ += std::exp(log_abs - max_);
    } else {
      acc_ = acc_ * std::exp(max_ - log_abs) + 1.0;
      max_ = log_abs;
    }
  }
  double log_value() const { return max_ + std::log(acc_); }
  double log_max() const { return max_; }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double acc_ = 0.0;
};

struct DoublePass {
  std::complex<double> value;
  double log_abs_sum;  // log of sum_j |t_j|
  double log_max_term;
  std::size_t terms;
};

DoublePass sum_in_double(const MlRequest& req, std::size_t max_terms) {
  const double beta = req.beta;
  const std::complex<double> z = req.z;
  const double abs_z = std::abs(z);
  const double log_abs_z = std::log(abs_z);
  const double arg_z = std::arg(z);

  CompensatedSum re;
  CompensatedSum im;
  LogAbsSum abs_sum;
  std::complex<double> zpow{1.0, 0.0};
  bool direct = true;
  double prev_abs = std::numeric_limits<double>::infinity();

  re.add(1.0);
  abs_sum.add(0.0);
  prev_abs = 1.0;
  for (std::size_t j = 1; j < max_terms; ++j) {
    const double x = beta * static_cast<double>(j) + 1.0;
    std::complex<double> term;
    double log_abs_term;
    if (abs_z == 0.0) {
      term = 0.0;
      log_abs_term = -std::numeric_limits<double>::infinity();
    } else {
      if (direct) {
        zpow *= z;
        if (x >= 170.0 || !std::isfinite(std::abs(zpow)) || std::abs(zpow) < 1e-280) direct = false;
      }
      if (direct) {
        term = zpow / std::tgamma(x);
        log_abs_term = std::log(std::abs(term));
      } else {
        const double jd = static_cast<double>(j);
        log_abs_term = jd * log_abs_z - std::lgamma(x);
        term = std::polar(std::exp(log_abs_term), jd * arg_z);
      }
    }

    const double abs_term = std::exp(log_abs_term);
    const double abs_partial = std::abs(std::complex<double>(re.value(), im.value()));
    // Truncating at tol * 1e-3 leaves the truncation error well inside tol;
    // the extra terms are cheap because they decay factorially.
    if (abs_term < prev_abs && abs_term <= req.tol * 1e-3 * abs_partial) {
      return {{re.value(), im.value()}, abs_sum.log_value(), abs_sum.log_max(), j};
    }
    re.add(term.real());
    im.add(term.imag());
    abs_sum.add(log_abs_term);
    prev_abs = abs_term;
  }
  throw NonConvergence("Mittag-Leffler series did not converge within " + std::to_string(max_terms) +
                       " terms");
}

// Minimal RAII holder for an MPFR variable.
class MpReal {
 public:
  explicit MpReal(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~MpReal() { mpfr_clear(v_); }
  MpReal(const MpReal&) = delete;
  MpReal& operator=(const MpReal&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

std::complex<double> sum_in_mpfr(const MlRequest& req, std::size_t max_terms, mpfr_prec_t bits) {
  MpReal zr(bits), zi(bits), pr(bits), pi(bits), tr(bits), ti(bits);
  MpReal sr(bits), si(bits), gam(bits), x(bits), tmp(bits), mag(bits), smag(bits), thresh(bits);

  mpfr_set_d(zr.get(), req.z.real(), MPFR_RNDN);
  mpfr_set_d(zi.get(), req.z.imag(), MPFR_RNDN);
  mpfr_set_ui(pr.get(), 1, MPFR_RNDN);
  mpfr_set_ui(pi.get(), 0, MPFR_RNDN);
  mpfr_set_ui(sr.get(), 1, MPFR_RNDN);
  mpfr_set_ui(si.get(), 0, MPFR_RNDN);

  const double stop_ratio = req.tol * 1e-3;
  double prev_abs = std::numeric_limits<double>::infinity();

  for (std::size_t j = 1; j < max_terms; ++j) {
    // (pr + i pi) *= (zr + i zi)
    mpfr_mul(tmp.get(), pr.get(), zr.get(), MPFR_RNDN);
    mpfr_mul(tr.get(), pi.get(), zi.get(), MPFR_RNDN);
    mpfr_sub(tr.get(), tmp.get(), tr.get(), MPFR_RNDN);
    mpfr_mul(tmp.get(), pr.get(), zi.get(), MPFR_RNDN);
    mpfr_mul(ti.get(), pi.get(), zr.get(), MPFR_RNDN);
    mpfr_add(pi.get(), tmp.get(), ti.get(), MPFR_RNDN);
    mpfr_set(pr.get(), tr.get(), MPFR_RNDN);

    mpfr_set_d(x.get(), req.beta, MPFR_RNDN);
    mpfr_mul_ui(x.get(), x.get(), static_cast<unsigned long>(j), MPFR_RNDN);
    mpfr_add_ui(x.get(), x.get(), 1, MPFR_RNDN);
    mpfr_gamma(gam.get(), x.get(), MPFR_RNDN);

    mpfr_div(tr.get(), pr.get(), gam.get(), MPFR_RNDN);
    mpfr_div(ti.get(), pi.get(), gam.get(), MPFR_RNDN);

    mpfr_hypot(mag.get(), tr.get(), ti.get(), MPFR_RNDN);
    mpfr_hypot(smag.get(), sr.get(), si.get(), MPFR_RNDN);
    mpfr_mul_d(thresh.get(), smag.get(), stop_ratio, MPFR_RNDN);
    // Moduli compared in log form; they can exceed the double range.
    long exp_mag = 0;
    const double mant = mpfr_get_d_2exp(&exp_mag, mag.get(), MPFR_RNDN);
    const double log_mag = (mant == 0.0) ? -std::numeric_limits<double>::infinity()
                                         : std::log(std::abs(mant)) + exp_mag * std::log(2.0);
    if (log_mag < prev_abs && mpfr_cmp(mag.get(), thresh.get()) <= 0) {
      const double re = mpfr_get_d(sr.get(), MPFR_RNDN);
      const double im = mpfr_get_d(si.get(), MPFR_RNDN);
      return {re, im};
    }
    mpfr_add(sr.get(), sr.get(), tr.get(), MPFR_RNDN);
    mpfr_add(si.get(), si.get(), ti.get(), MPFR_RNDN);
    prev_abs = log_mag;
  }
  throw NonConvergence("Mittag-Leffler multiprecision series did not converge within " +
                       std::to_string(max_terms) + " terms");
}

}  // namespace

std::complex<double> ml_series(const MlRequest& req, std::size_t max_terms, double radius) {
  validate(req);
  if (max_terms < 1) throw DomainError("ml_series: max_terms must be positive");
  if (std::abs(req.z) > radius) {
    throw DomainError("ml_series: |z| = " + std::to_string(std::abs(req.z)) +
                      " exceeds the series radius " + std::to_string(radius));
  }

  const DoublePass pass = sum_in_double(req, max_terms);
  const double abs_value = std::abs(pass.value);
  if (!std::isfinite(abs_value)) {
    throw NumericalFailure("ml_series: result overflows double precision");
  }
  // Worst-case rounding error of the compensated sum is a small multiple of
  // eps times the largest partial sum, itself bounded by sum_j |t_j|.
  const double log_err = std::log(4.0 * kEps) + pass.log_abs_sum;
  if (abs_value > 0.0 && log_err <= std::log(req.tol * abs_value)) {
    return pass.value;
  }

  // Cancellation: redo with enough bits to absorb the largest terms.
  const double cancel_bits = std::max(0.0, pass.log_abs_sum / std::log(2.0));
  long bits = 64 + static_cast<long>(std::ceil(cancel_bits - std::log2(req.tol)));
  for (int attempt = 0; attempt < 4 && bits <= kMaxMpBits; ++attempt) {
    const std::complex<double> value = sum_in_mpfr(req, max_terms, bits);
    const double abs_mp = std::abs(value);
    const double log_mp_err = (-static_cast<double>(bits) + 8.0) * std::log(2.0) + pass.log_abs_sum;
    if (abs_mp > 0.0 && std::isfinite(abs_mp) && log_mp_err <= std::log(req.tol * abs_mp)) {
      return value;
    }
    bits += 64 + static_cast<long>(std::ceil(std::max(0.0, -std::log2(std::max(abs_mp, 1e-300)))));
  }
  throw NonConvergence("ml_series: cancellation exceeds the multiprecision budget (beta = " +
                       std::to_string(req.beta) + ", |z| = " + std::to_string(std::abs(req.z)) + ")");
}

}  // namespace fracdyn::mlf
