#include "fracdyn/sweep.hpp"

#include "fracdyn/observables.hpp"

#include <fmt/format.h>

namespace fracdyn::sweep {
namespace {

struct Point {
  propagate::Variant variant;
  int qubits;
  double beta;
  double lambda;
  std::uint64_t n;
  double c0;
};

std::string describe(const Point& p, double t) {
  return fmt::format("(variant={}, l={}, beta={}, lambda={}, n={}, c0={}, t={})", propagate::info(p.variant).key,
                     p.qubits, p.beta, p.lambda, p.n, p.c0, t);
}

void run_point(const Point& p, const std::vector<double>& times, std::vector<ResultRow>& out) {
  model::ModelParams params;
  params.coupling = p.lambda;
  params.photons = p.n;
  params.qubits = p.qubits;

  model::SpectralDecomposition spectrum;
  model::TaggedStateVector psi0;
  try {
    spectrum = model::spectral_decompose(model::build_hamiltonian(params));
    psi0 = model::initial_state(params, model::InitialState::from_concurrence(p.c0));
  } catch (const NumericalError& e) {
    throw SweepPointError(describe(p, 0.0), e.what());
  }
  const propagate::EvolutionSpec spec{p.variant, FractionalOrder(p.beta), std::move(spectrum), std::move(psi0)};

  for (const double t : times) {
    ResultRow row{p.variant, p.qubits, p.beta, p.lambda, p.n, p.c0, t, 0.0, 0.0, {}};
    try {
      const auto rho = observables::reduce(propagate::evolve(spec, t));
      row.p_total = observables::total_probability(rho);
      row.p_excited = observables::excited_probability(rho);
      for (Eigen::Index i = 0; i < rho.dim(); ++i) row.rho_diag[static_cast<std::size_t>(i)] = rho.entries(i, i).real();
    } catch (const NumericalError& e) {
      throw SweepPointError(describe(p, t), e.what());
    }
    out.push_back(row);
  }
}

}  // namespace

ResultTable run_sweep(const SweepConfig& input) {
  SweepConfig config = input;
  config.normalize();
  config.validate();

  ResultTable table;
  table.with_rho_diag = config.wants(Observable::RhoDiag);
  table.rows.reserve(config.row_count());
  const std::vector<double> times = config.time_grid();

  for (const auto variant : config.variants)
    for (const int l : config.qubits)
      for (const double beta : config.beta_values)
        for (const double lambda : config.lambda_values)
          for (const auto n : config.n_values)
            for (const double c0 : config.c0_values) run_point({variant, l, beta, lambda, n, c0}, times, table.rows);
  return table;
}

}  // namespace fracdyn::sweep
