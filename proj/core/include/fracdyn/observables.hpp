#pragma once

#include "fracdyn/model.hpp"

#include <Eigen/Dense>

namespace fracdyn::observables {

/// Reduced density matrix of the qubits over the computational basis
/// {|g>, |e>} or {|gg>, |ge>, |eg>, |ee>}. The trace is not forced to 1.
struct SystemDensityMatrix {
  Eigen::MatrixXcd entries;

  Eigen::Index dim() const noexcept { return entries.rows(); }
  int qubits() const noexcept { return dim() == 2 ? 1 : 2; }
};

/// Partial trace over the cavity photon labels:
/// rho(s, s') = sum_env amp(s, env) conj(amp(s', env)).
/// Throws BasisMismatch for inconsistent or duplicated labels.
SystemDensityMatrix reduce(const model::TaggedStateVector& psi);

/// Trace of rho.
double total_probability(const SystemDensityMatrix& rho);

/// Population of the all-excited state (|e> or |ee>) divided by the trace.
/// Throws DegenerateState when the trace is at most 1e-14.
double excited_probability(const SystemDensityMatrix& rho);

/// Concurrence 2ab of a|gg> + b|ee>.
double concurrence_initial(double a, double b);

}  // namespace fracdyn::observables
