#pragma once

#include "fracdyn/fractional_order.hpp"
#include "fracdyn/mlf.hpp"
#include "fracdyn/model.hpp"

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string_view>

namespace fracdyn::propagate {

/// The four time-fractional evolution laws.
enum class Variant { NaberI, NaberII, XGF, NewTFSE };

enum class DerivativeKind { Caputo, Conformable };

/// Static description of a variant.
struct VariantInfo {
  Variant tag;
  std::string_view key;                  // CLI / CSV token
  std::string_view display_name;
  DerivativeKind derivative;
  std::string_view time_continuation;    // analytic continuation of time
  std::string_view evolution_operator;   // scalar law applied to each eigenvalue alpha
  bool local_in_time;
};

const VariantInfo& info(Variant v);
std::span<const Variant> all_variants();
std::optional<Variant> parse_variant(std::string_view key);

/// Scalar evolution factor f(alpha, t) of a variant:
///   NaberI   E_b((-i t)^b alpha)
///   NaberII  E_b(-i t^b alpha)
///   XGF      exp((-i)^b t^b alpha / b)
///   NewTFSE  exp(-i t^b alpha / b)
/// with (-i)^b = exp(-i pi b / 2). Returns exactly 1 at t = 0 or alpha = 0.
std::complex<double> teo_scalar(Variant variant, double beta, double alpha, double t,
                                double tol = mlf::kDefaultTol);

struct EvolutionSpec {
  Variant variant;
  FractionalOrder beta;
  model::SpectralDecomposition spectrum;
  model::TaggedStateVector psi0;

  /// Throws DomainError if psi0 is not normalised to 1e-12 or the spectrum
  /// does not match the excitation block.
  void validate() const;
};

/// psi(t) = sum_q f(alpha_q, t) <u_q|psi0> |u_q> on the excitation block;
/// decoupled components are carried through unchanged.
model::TaggedStateVector evolve(const EvolutionSpec& spec, double t);

/// Printed closed-form amplitudes with eigenvector coefficients
/// a' = b' = m = k = sqrt(2)/2 and c = d = f = h = 1/2. Kept independent of
/// evolve() so the two can be cross-checked.
model::TaggedStateVector closed_form_amplitudes(Variant variant, const model::ModelParams& params,
                                                const model::InitialState& init, double beta, double t);

}  // namespace fracdyn::propagate
