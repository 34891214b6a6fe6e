#pragma once

// Uniform truncated computational grids with Dirichlet boundaries.  Nodes
// are strictly interior: x_i = lo + (i+1) h, i = 0..n-1, h = (hi-lo)/(n+1).
// d = 2 grids are square tensor products of the same 1-d axis.

#include "wittengap/errors.hpp"

namespace wittengap {

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;    // interior nodes per axis
  int dim = 1;  // 1 or 2

  double spacing() const { return (hi - lo) / (n + 1); }
  double node(int i) const { return lo + (i + 1) * spacing(); }
  long total_nodes() const { return dim == 1 ? n : static_cast<long>(n) * n; }
};

inline Grid build_grid(double lo, double hi, int n, int dim = 1) {
  if (!(lo < hi)) throw ConfigError("grid: lo must be < hi");
  if (n < 16) throw ConfigError("grid: need at least 16 interior nodes");
  if (dim != 1 && dim != 2) throw ConfigError("grid: dimension must be 1 or 2");
  return Grid{lo, hi, n, dim};
}

}  // namespace wittengap
