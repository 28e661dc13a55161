#include "fracdyn/observables.hpp"

#include "fracdyn/errors.hpp"

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fracdyn::observables {
namespace {

// Computational-basis index of a label over {g, e}: g -> 0, e -> 1, first
// qubit most significant.
Eigen::Index system_index(const std::string& label) {
  Eigen::Index idx = 0;
  for (const char ch : label) {
    if (ch != 'g' && ch != 'e') throw BasisMismatch("system label '" + label + "' is not over {g, e}");
    idx = 2 * idx + (ch == 'e' ? 1 : 0);
  }
  return idx;
}

}  // namespace

SystemDensityMatrix reduce(const model::TaggedStateVector& psi) {
  const auto& basis = psi.basis;
  if (basis.size() == 0) throw BasisMismatch("empty basis");
  if (psi.amplitudes.size() != basis.size()) throw BasisMismatch("amplitude count does not match the basis");

  const std::size_t qubits = basis[0].system.size();
  if (qubits != 1 && qubits != 2) throw BasisMismatch("system labels must have length 1 or 2");

  // Group amplitudes by environment label.
  std::map<std::vector<std::uint64_t>, std::vector<std::pair<Eigen::Index, std::complex<double>>>> by_env;
  std::set<std::pair<std::string, std::vector<std::uint64_t>>> seen;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& el = basis[i];
    if (el.system.size() != qubits) throw BasisMismatch("system labels of mixed length");
    if (el.environment.size() != qubits) throw BasisMismatch("environment label must name one cavity per qubit");
    if (!seen.emplace(el.system, el.environment).second) {
      throw BasisMismatch("duplicate basis element '" + el.system + "'");
    }
    by_env[el.environment].emplace_back(system_index(el.system), psi.amplitudes[i]);
  }

  const Eigen::Index dim = Eigen::Index{1} << qubits;
  SystemDensityMatrix rho{Eigen::MatrixXcd::Zero(dim, dim)};
  for (const auto& [env, group] : by_env) {
    for (const auto& [s, amp_s] : group) {
      for (const auto& [sp, amp_sp] : group) {
        rho.entries(s, sp) += amp_s * std::conj(amp_sp);
      }
    }
  }
  return rho;
}

double total_probability(const SystemDensityMatrix& rho) { return rho.entries.diagonal().real().sum(); }

double excited_probability(const SystemDensityMatrix& rho) {
  const double trace = total_probability(rho);
  if (!(trace > 1e-14)) throw DegenerateState("total probability " + std::to_string(trace) + " is too small");
  const Eigen::Index last = rho.dim() - 1;
  return rho.entries(last, last).real() / trace;
}

double concurrence_initial(double a, double b) {
  if (std::abs(a * a + b * b - 1.0) > 1e-6) throw DomainError("concurrence_initial expects a^2 + b^2 = 1");
  return 2.0 * a * b;
}

}  // namespace fracdyn::observables
