#pragma once

#include "fracdyn/sweep.hpp"

#include <filesystem>
#include <ostream>
#include <string>

namespace fracdyn::sweep {

/// Header `variant,l,beta,lambda,n,c0,t,p_total,p_excited`, followed by
/// `rho_11,rho_22,rho_33,rho_44` when the table carries the diagonal (left
/// empty for single-qubit rows). Real fields use 12 significant digits.
void write_csv(const ResultTable& table, std::ostream& out);
void write_csv(const ResultTable& table, const std::filesystem::path& path);

/// Self-contained SVG with one panel per group and one polyline per curve.
/// Throws EmptySelection if the table is empty or any curve has fewer than
/// two points.
std::string render_svg(const ResultTable& table, const Grouping& grouping);
void emit_svg(const ResultTable& table, const Grouping& grouping, const std::filesystem::path& path);

}  // namespace fracdyn::sweep
