#include "fracdyn/propagate.hpp"

#include "fracdyn/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fracdyn::propagate {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<VariantInfo, 4> kVariants{{
    {Variant::NaberI, "naber1", "Naber TFSE I", DerivativeKind::Caputo, "t -> t / (i hbar_b)",
     "E_b[(-i t / hbar_b)^b H]", false},
    {Variant::NaberII, "naber2", "Naber TFSE II", DerivativeKind::Caputo, "t -> t / (i hbar_b)^(1/b)",
     "E_b[-i t^b H / hbar_b]", false},
    {Variant::XGF, "xgf", "XGF TFSE", DerivativeKind::Conformable, "t -> t / (i hbar_b b^(1/b))",
     "exp[(-i / hbar_b)^b t^b H / b]", true},
    {Variant::NewTFSE, "new", "conformable TFSE", DerivativeKind::Conformable, "t -> t / (i hbar_b b)^(1/b)",
     "exp[-i t^b H / (hbar_b b)]", true},
}};

constexpr std::array<Variant, 4> kAll{Variant::NaberI, Variant::NaberII, Variant::XGF, Variant::NewTFSE};

// (-i)^beta on the principal branch. Written through the complementary
// angle so that beta = 1 gives exactly -i.
std::complex<double> minus_i_pow(double beta) {
  const double half_gap = kPi * (1.0 - beta) / 2.0;
  return {std::sin(half_gap), -std::cos(half_gap)};
}

}  // namespace

const VariantInfo& info(Variant v) { return kVariants[static_cast<std::size_t>(v)]; }

std::span<const Variant> all_variants() { return kAll; }

std::optional<Variant> parse_variant(std::string_view key) {
  for (const auto& v : kVariants) {
    if (v.key == key) return v.tag;
  }
  return std::nullopt;
}

std::complex<double> teo_scalar(Variant variant, double beta, double alpha, double t, double tol) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("teo_scalar: beta must lie in (0, 1]");
  if (!(t >= 0.0)) throw DomainError("teo_scalar: t must be non-negative");
  if (t == 0.0 || alpha == 0.0) return 1.0;

  const double scaled = std::pow(t, beta) * alpha;
  std::complex<double> f;
  switch (variant) {
    case Variant::NaberI:
      f = mlf::ml(beta, minus_i_pow(beta) * scaled, tol);
      break;
    case Variant::NaberII:
      f = mlf::ml(beta, {0.0, -scaled}, tol);
      break;
    case Variant::XGF:
      f = std::exp(minus_i_pow(beta) * (scaled / beta));
      break;
    case Variant::NewTFSE:
      f = std::polar(1.0, -scaled / beta);
      break;
  }
  if (!std::isfinite(f.real()) || !std::isfinite(f.imag())) {
    throw NumericalFailure("evolution factor overflows double precision");
  }
  return f;
}

void EvolutionSpec::validate() const {
  const std::size_t block = psi0.basis.block_size();
  if (spectrum.dimension() != block || static_cast<std::size_t>(spectrum.eigenvectors.rows()) != block) {
    throw DomainError("spectrum dimension does not match the excitation block");
  }
  if (psi0.amplitudes.size() != psi0.basis.size()) {
    throw DomainError("state vector length does not match its basis");
  }
  if (std::abs(psi0.norm_squared() - 1.0) > 1e-12) {
    throw DomainError("initial state must be normalised");
  }
}

model::TaggedStateVector evolve(const EvolutionSpec& spec, double t) {
  spec.validate();
  if (!(t >= 0.0)) throw DomainError("evolve: t must be non-negative");

  model::TaggedStateVector out = spec.psi0;
  if (t == 0.0) return out;

  const auto block = static_cast<Eigen::Index>(spec.psi0.basis.block_size());
  const double beta = spec.beta.value();
  Eigen::VectorXcd psi(block);
  for (Eigen::Index i = 0; i < block; ++i) psi(i) = spec.psi0.amplitudes[static_cast<std::size_t>(i)];

  Eigen::VectorXcd result = Eigen::VectorXcd::Zero(block);
  for (Eigen::Index q = 0; q < block; ++q) {
    const Eigen::VectorXd u = spec.spectrum.eigenvectors.col(q);
    const std::complex<double> overlap = u.cast<std::complex<double>>().dot(psi);
    if (overlap == 0.0) continue;
    const std::complex<double> f =
        teo_scalar(spec.variant, beta, spec.spectrum.eigenvalues[static_cast<std::size_t>(q)], t);
    result += (f * overlap) * u.cast<std::complex<double>>();
  }
  for (Eigen::Index i = 0; i < block; ++i) out.amplitudes[static_cast<std::size_t>(i)] = result(i);
  return out;
}

model::TaggedStateVector closed_form_amplitudes(Variant variant, const model::ModelParams& params,
                                                const model::InitialState& init, double beta, double t) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("closed_form_amplitudes: beta must lie in (0, 1]");
  if (!(t >= 0.0)) throw DomainError("closed_form_amplitudes: t must be non-negative");

  model::TaggedStateVector psi = model::initial_state(params, init);
  const double big_lambda = params.rabi_coupling();
  const double mult = params.qubits == 1 ? 1.0 : 2.0;

  // Principal branch of (-i t)^beta, taken straight from std::pow.
  const std::complex<double> mit_beta =
      t == 0.0 ? std::complex<double>(0.0) : std::pow(std::complex<double>(0.0, -t), beta);
  const double t_beta = std::pow(t, beta);
  const std::complex<double> i_unit(0.0, 1.0);

  // "first" and "second" are the factors entering the printed solutions as
  // (first - second) and (first + second).
  std::complex<double> first;
  std::complex<double> second;
  switch (variant) {
    case Variant::NaberI:
      first = mlf::ml(beta, mult * mit_beta * big_lambda);
      second = mlf::ml(beta, -mult * mit_beta * big_lambda);
      break;
    case Variant::NaberII:
      first = mlf::ml(beta, -mult * i_unit * t_beta * big_lambda);
      second = mlf::ml(beta, mult * i_unit * t_beta * big_lambda);
      break;
    case Variant::XGF:
      first = std::exp(mult * mit_beta * big_lambda / beta);
      second = std::exp(-mult * mit_beta * big_lambda / beta);
      break;
    case Variant::NewTFSE:
      first = std::exp(-mult * i_unit * t_beta * big_lambda / beta);
      second = std::exp(mult * i_unit * t_beta * big_lambda / beta);
      break;
  }
  const std::complex<double> diff = first - second;
  const std::complex<double> sum = first + second;

  const double half_sqrt2 = std::numbers::sqrt2 / 2.0;
  if (params.qubits == 1) {
    const double a1 = half_sqrt2;  // a'
    const double b1 = half_sqrt2;  // b'
    psi.amplitudes[0] = a1 * b1 * diff;  // (g, n+1)
    psi.amplitudes[1] = b1 * b1 * sum;   // (e, n)
    return psi;
  }

  const double c = 0.5, d = 0.5, f = 0.5, h = 0.5;
  const double m = half_sqrt2, k = half_sqrt2;
  const double b = init.b;
  psi.amplitudes[0] = sum * c * h * b - m * k * b;  // (gg, n+1 n+1)
  psi.amplitudes[1] = diff * d * h * b;             // (ge, n+1 n)
  psi.amplitudes[2] = diff * f * h * b;             // (eg, n n+1)
  psi.amplitudes[3] = sum * h * h * b + k * k * b;  // (ee, n n)
  psi.amplitudes[4] = init.a;                       // (gg, n n)
  return psi;
}

}  // namespace fracdyn::propagate
