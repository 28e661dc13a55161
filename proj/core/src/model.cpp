#include "fracdyn/model.hpp"

#include "fracdyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracdyn::model {

void ModelParams::validate() const {
  if (!(coupling >= 0.0 && coupling <= 1.0)) {
    throw DomainError("coupling must lie in [0, 1], got " + std::to_string(coupling));
  }
  if (qubits != 1 && qubits != 2) {
    throw DomainError("qubit count must be 1 or 2, got " + std::to_string(qubits));
  }
  if (detuning != 0.0) {
    throw DomainError("only the resonant model (detuning 0) is supported");
  }
}

double ModelParams::rabi_coupling() const { return coupling * std::sqrt(static_cast<double>(photons) + 1.0); }

CompositeBasis::CompositeBasis(std::vector<BasisElement> elements, std::size_t block_size)
    : elements_(std::move(elements)), block_size_(block_size) {
  if (block_size_ > elements_.size()) throw BasisMismatch("excitation block larger than the basis");
}

CompositeBasis CompositeBasis::for_model(const ModelParams& params) {
  params.validate();
  const std::uint64_t n = params.photons;
  if (params.qubits == 1) {
    return CompositeBasis({{"g", {n + 1}}, {"e", {n}}}, 2);
  }
  return CompositeBasis({{"gg", {n + 1, n + 1}},
                         {"ge", {n + 1, n}},
                         {"eg", {n, n + 1}},
                         {"ee", {n, n}},
                         {"gg", {n, n}}},
                        4);
}

std::optional<std::size_t> CompositeBasis::index_of(const BasisElement& element) const {
  const auto it = std::find(elements_.begin(), elements_.end(), element);
  if (it == elements_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

double TaggedStateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& c : amplitudes) acc += std::norm(c);
  return acc;
}

std::complex<double> TaggedStateVector::amplitude(const BasisElement& element) const {
  const auto idx = basis.index_of(element);
  if (!idx) throw BasisMismatch("basis element not present: " + element.system);
  return amplitudes.at(*idx);
}

Eigen::MatrixXd SpectralDecomposition::reconstruct() const {
  const auto dim = static_cast<Eigen::Index>(eigenvalues.size());
  Eigen::VectorXd diag(dim);
  for (Eigen::Index i = 0; i < dim; ++i) diag(i) = eigenvalues[static_cast<std::size_t>(i)];
  return eigenvectors * diag.asDiagonal() * eigenvectors.transpose();
}

void InitialState::validate() const {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) {
    throw DomainError("initial amplitudes must lie in [0, 1]");
  }
  if (std::abs(a * a + b * b - 1.0) > 1e-12) {
    throw DomainError("initial amplitudes must satisfy a^2 + b^2 = 1");
  }
}

InitialState InitialState::from_concurrence(double c0) {
  const auto [a, b] = ab_from_concurrence(c0);
  return {a, b};
}

Eigen::MatrixXd build_hamiltonian(const ModelParams& params) {
  params.validate();
  const double g = params.rabi_coupling();
  if (params.qubits == 1) {
    Eigen::MatrixXd h(2, 2);
    h << 0.0, g,
         g, 0.0;
    return h;
  }
  Eigen::MatrixXd h(4, 4);
  h << 0.0, g, g, 0.0,
       g, 0.0, 0.0, g,
       g, 0.0, 0.0, g,
       0.0, g, g, 0.0;
  return h;
}

namespace {

// v^T H v / v^T v accumulated in long double. For a simple eigenvalue the
// quotient is second-order accurate in the eigenvector error, which brings
// the value from a few ulps (QR iteration) to correct rounding.
double rayleigh_quotient(const Eigen::MatrixXd& h, const Eigen::VectorXd& v) {
  long double num = 0.0L;
  long double den = 0.0L;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    long double hv = 0.0L;
    for (Eigen::Index j = 0; j < v.size(); ++j) hv += static_cast<long double>(h(i, j)) * v(j);
    num += static_cast<long double>(v(i)) * hv;
    den += static_cast<long double>(v(i)) * v(i);
  }
  return static_cast<double>(num / den);
}

}  // namespace

SpectralDecomposition spectral_decompose(const Eigen::MatrixXd& hamiltonian) {
  const Eigen::Index dim = hamiltonian.rows();
  if (hamiltonian.cols() != dim || (dim != 2 && dim != 4)) {
    throw DomainError("spectral_decompose expects a 2x2 or 4x4 matrix");
  }
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if ((hamiltonian - hamiltonian.transpose()).cwiseAbs().maxCoeff() > 1e-14 * scale) {
    throw DomainError("spectral_decompose expects a symmetric matrix");
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");

  // Eigen returns ascending order; walk it backwards so the result is descending.
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const double cluster_tol = 1e-10 * scale;

  SpectralDecomposition out;
  out.eigenvectors.resize(dim, dim);
  Eigen::Index col = 0;
  Eigen::Index hi = dim - 1;
  while (hi >= 0) {
    Eigen::Index lo = hi;
    while (lo > 0 && values(hi) - values(lo - 1) <= cluster_tol) --lo;
    const Eigen::Index size = hi - lo + 1;
    const double value = values.segment(lo, size).mean();

    if (size == 1) {
      Eigen::VectorXd v = vectors.col(hi);
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (std::abs(v(i)) > 1e-12) {
          if (v(i) < 0.0) v = -v;
          break;
        }
      }
      out.eigenvalues.push_back(rayleigh_quotient(hamiltonian, v));
      out.eigenvectors.col(col++) = v;
    } else {
      // Deterministic basis of the eigenspace: project e_0, e_1, ... and
      // orthonormalise in order.
      const Eigen::MatrixXd block = vectors.middleCols(lo, size);
      const Eigen::MatrixXd projector = block * block.transpose();
      Eigen::Index found = 0;
      for (Eigen::Index i = 0; i < dim && found < size; ++i) {
        Eigen::VectorXd v = projector.col(i);
        for (Eigen::Index k = col - found; k < col; ++k) {
          v -= out.eigenvectors.col(k).dot(v) * out.eigenvectors.col(k);
        }
        const double norm = v.norm();
        if (norm < 1e-8) continue;
        out.eigenvalues.push_back(value);
        out.eigenvectors.col(col++) = v / norm;
        ++found;
      }
      if (found != size) throw NumericalFailure("could not span a degenerate eigenspace");
    }
    hi = lo - 1;
  }

  const double residual = (out.reconstruct() - hamiltonian).cwiseAbs().maxCoeff();
  if (residual > 1e-10) {
    throw NumericalFailure("spectral reconstruction residual " + std::to_string(residual));
  }
  return out;
}

TaggedStateVector initial_state(const ModelParams& params, const InitialState& init) {
  TaggedStateVector psi{CompositeBasis::for_model(params), {}};
  psi.amplitudes.assign(psi.basis.size(), 0.0);
  if (params.qubits == 1) {
    psi.amplitudes[1] = 1.0;  // (e, n)
    return psi;
  }
  init.validate();
  psi.amplitudes[3] = init.b;  // (ee, n n)
  psi.amplitudes[4] = init.a;  // (gg, n n), decoupled
  return psi;
}

std::pair<double, double> ab_from_concurrence(double c0) {
  if (!(c0 >= 0.0 && c0 <= 1.0)) {
    throw DomainError("concurrence must lie in [0, 1], got " + std::to_string(c0));
  }
  const double root = std::sqrt((1.0 - c0) * (1.0 + c0));
  const double b = std::sqrt((1.0 + root) / 2.0);
  const double a = c0 / (2.0 * b);
  return {a, b};
}

}  // namespace fracdyn::model
