#pragma once

// CSV and numeric-text output helpers.  All floating-point output uses
// round-trip precision (%.17g) so identical runs produce identical files.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace wittengap {

/// Shortest decimal form that round-trips a double.
std::string format_full(double v);

/// "x,psi0,psi1,..." node-coordinate + eigenvector columns (d = 1).
void write_eigenvector_csv(std::ostream& os, std::span<const double> x,
                           const std::vector<std::vector<double>>& vectors);

/// "t,mass,distance" rows.
void write_trace_csv(std::ostream& os, std::span<const double> t,
                     std::span<const double> mass, std::span<const double> distance);

/// "x,f" rows.
void write_profile_csv(std::ostream& os, std::span<const double> x,
                       std::span<const double> f);

}  // namespace wittengap
