#pragma once

// Confining potential families U(x), their derivatives, critical-point
// structure and free-energy quadrature.
//
// Analytic families extend to d > 1 as separable sums of the 1-d profile,
//   U(x) = sum_i u(x_i),
// which keeps tensor-grid operator assembly exact.  For the quadratic
// family this is the radial form alpha*|x|^2.  Tabulated potentials are
// one-dimensional and reconstructed with a natural cubic spline (C^2).

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wittengap/errors.hpp"
#include "wittengap/spline.hpp"

namespace wittengap {

/// u(s) = alpha * s^2, minimum at the origin.
struct Quadratic {
  double alpha = 1.0;  // stiffness > 0
};

/// u(s) = h * ((s/a)^2 - 1)^2: wells at +-a, barrier of height h at 0.
struct QuarticDoubleWell {
  double h = 1.0;  // barrier height > 0
  double a = 1.0;  // well position > 0
};

/// u(s) = delta_u * exp(-a^2 s^2) + confinement * s^4: a Gaussian barrier
/// at the origin between two shallow wells held by quartic confinement.
struct GaussianBarrierWell {
  double delta_u = 1.0;      // barrier height (of the Gaussian bump)
  double a = 1.0;            // inverse barrier width
  double confinement = 0.0;  // quartic coefficient; <= 0 selects the default
};

/// One-dimensional interval, used for well basins and barrier windows.
struct Region {
  double lo = 0.0;
  double hi = 0.0;
};

enum class CriticalKind { Minimum, Maximum, Saddle };

struct CriticalPoint {
  double location = 0.0;
  CriticalKind kind = CriticalKind::Minimum;
  std::vector<double> hessian_eigs;  // d = 1: the single curvature u''(x)
};

enum class PotentialFamily { Quadratic, QuarticDoubleWell, GaussianBarrierWell, Tabulated };

class Potential {
 public:
  static Potential quadratic(double alpha, int dimension = 1);
  static Potential quartic_double_well(double h, double a, int dimension = 1);
  static Potential gaussian_barrier_well(double delta_u, double a,
                                         double confinement = 0.0);
  /// Sorted coordinate list and energies; d = 1 only.
  static Potential tabulated(std::vector<double> x, std::vector<double> u);

  PotentialFamily family() const;
  int dimension() const { return dimension_; }
  std::string family_name() const;

  // 1-d axis profile u and its derivatives (analytic for closed-form
  // families, spline values for tabulated data).
  double profile(double s) const;
  double profile_deriv(double s) const;
  double profile_second(double s) const;

  // Separable multi-d evaluation.
  double value(double x) const { return profile(x); }
  double value(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;
  std::vector<double> hessian_diag(std::span<const double> x) const;

  /// A length scale of the well structure (domain sizing heuristics).
  double well_scale() const;

  /// Domain on which the potential can be evaluated.
  Region evaluable_range() const;

 private:
  using Family = std::variant<Quadratic, QuarticDoubleWell, GaussianBarrierWell,
                              std::shared_ptr<const CubicSpline>>;
  Potential(Family f, int dimension) : family_(std::move(f)), dimension_(dimension) {}

  Family family_;
  int dimension_ = 1;
};

/// All roots of u' in the search region, classified by the sign of u''
/// and sorted by coordinate.  Roots are located by sign-change bracketing
/// on a refined grid followed by bisection.  A root with |u''| below
/// 1e-8 * max|u''| over the region raises NonMorseError.
std::vector<CriticalPoint> critical_points(const Potential& p, const Region& search);

/// F(region) = -(1/beta) ln  int_region e^{-beta U}.  The integral is done
/// in shifted log-space (minimum of U subtracted) so large beta stays in
/// range; adaptive quadrature with 1e-10 relative tolerance on the integral.
double free_energy(const Potential& p, const Region& region, double beta);

}  // namespace wittengap
