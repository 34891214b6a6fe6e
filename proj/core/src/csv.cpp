#include "wittengap/csv.hpp"

#include <cstdio>
#include <ostream>

namespace wittengap {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_eigenvector_csv(std::ostream& os, std::span<const double> x,
                           const std::vector<std::vector<double>>& vectors) {
  os << "x";
  for (std::size_t k = 0; k < vectors.size(); ++k) os << ",psi" << k;
  os << "\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << format_full(x[i]);
    for (const auto& v : vectors) os << "," << format_full(v[i]);
    os << "\n";
  }
}

void write_trace_csv(std::ostream& os, std::span<const double> t,
                     std::span<const double> mass, std::span<const double> distance) {
  os << "t,mass,distance\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << format_full(t[i]) << "," << format_full(mass[i]) << ","
       << format_full(distance[i]) << "\n";
  }
}

void write_profile_csv(std::ostream& os, std::span<const double> x,
                       std::span<const double> f) {
  os << "x,f\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << format_full(x[i]) << "," << format_full(f[i]) << "\n";
  }
}

}  // namespace wittengap
