#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fracdyn::model {

/// Resonant qubit-cavity model: l qubits, each coupled to its own
/// single-mode cavity holding n photons initially.
struct ModelParams {
  double coupling = 0.5;       // lambda in [0, 1]
  std::uint64_t photons = 0;   // n
  int qubits = 1;              // l in {1, 2}
  double detuning = 0.0;       // must be 0

  /// Throws DomainError for out-of-range fields.
  void validate() const;

  /// Off-diagonal Hamiltonian element lambda * sqrt(n + 1).
  double rabi_coupling() const;
};

/// One basis vector of the total system: the qubit configuration as a
/// string over {g, e} and the photon number of each cavity.
struct BasisElement {
  std::string system;
  std::vector<std::uint64_t> environment;

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// Ordered composite basis. The first block_size() elements span the
/// excitation manifold the Hamiltonian acts on; any remaining elements are
/// decoupled and never evolve.
class CompositeBasis {
 public:
  CompositeBasis() = default;
  CompositeBasis(std::vector<BasisElement> elements, std::size_t block_size);

  /// l = 1: [(g, n+1), (e, n)].
  /// l = 2: [(gg, n+1 n+1), (ge, n+1 n), (eg, n n+1), (ee, n n)] + decoupled (gg, n n).
  static CompositeBasis for_model(const ModelParams& params);

  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t block_size() const noexcept { return block_size_; }
  const BasisElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<BasisElement>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> index_of(const BasisElement& element) const;

  friend bool operator==(const CompositeBasis&, const CompositeBasis&) = default;

 private:
  std::vector<BasisElement> elements_;
  std::size_t block_size_ = 0;
};

/// Complex amplitudes over a CompositeBasis.
struct TaggedStateVector {
  CompositeBasis basis;
  std::vector<std::complex<double>> amplitudes;

  double norm_squared() const;
  std::complex<double> amplitude(const BasisElement& element) const;
};

/// H = sum_q alpha_q |u_q><u_q| with orthonormal real eigenvectors stored
/// as the columns of `eigenvectors`, ordered by descending eigenvalue.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;

  std::size_t dimension() const noexcept { return eigenvalues.size(); }
  Eigen::MatrixXd reconstruct() const;
};

/// Two-qubit initial amplitudes a|gg, nn> + b|ee, nn>.
struct InitialState {
  double a = 0.0;
  double b = 1.0;

  /// Throws DomainError unless a, b in [0, 1] and a^2 + b^2 = 1 to 1e-12.
  void validate() const;
  static InitialState from_concurrence(double c0);
};

Eigen::MatrixXd build_hamiltonian(const ModelParams& params);

/// Eigendecomposition of a real symmetric 2x2 or 4x4 matrix. Eigenvalues
/// closer than 1e-10 * max(1, ||H||) form one eigenspace whose basis is
/// rebuilt by Gram-Schmidt on the projected unit vectors e_0, e_1, ... in
/// basis order. Non-degenerate eigenvectors have their first non-negligible
/// component made positive. Throws NumericalFailure if the reconstruction
/// residual exceeds 1e-10.
SpectralDecomposition spectral_decompose(const Eigen::MatrixXd& hamiltonian);

TaggedStateVector initial_state(const ModelParams& params, const InitialState& init);

/// (a, b) with 2ab = c0, a^2 + b^2 = 1 and b >= a >= 0.
std::pair<double, double> ab_from_concurrence(double c0);

}  // namespace fracdyn::model
