#include "fracdyn/report.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iterator>

namespace fracdyn::sweep {

void write_csv(const ResultTable& table, std::ostream& out) {
  std::string buf = "variant,l,beta,lambda,n,c0,t,p_total,p_excited";
  if (table.with_rho_diag) buf += ",rho_11,rho_22,rho_33,rho_44";
  buf += '\n';
  auto it = std::back_inserter(buf);
  for (const auto& r : table.rows) {
    fmt::format_to(it, "{},{},{:.12g},{:.12g},{},{:.12g},{:.12g},{:.12g},{:.12g}", propagate::info(r.variant).key,
                   r.qubits, r.beta, r.lambda, r.n, r.c0, r.t, r.p_total, r.p_excited);
    if (table.with_rho_diag) {
      const std::size_t dim = r.qubits == 1 ? 2 : 4;
      for (std::size_t i = 0; i < 4; ++i) {
        if (i < dim) {
          fmt::format_to(it, ",{:.12g}", r.rho_diag[i]);
        } else {
          buf += ',';
        }
      }
    }
    buf += '\n';
  }
  out << buf;
  if (!out) throw IoError("failed to write CSV output");
}

void write_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(table, out);
  out.close();
  if (!out) throw IoError("failed to write " + path.string());
}

}  // namespace fracdyn::sweep
