#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harnack/functionals.hpp"
#include "harnack/numerics.hpp"
#include "harnack/operators.hpp"

namespace harnack {

enum class Relation { harnack_poisson, harnack_moment, z, resolvent, mobius_z_profile };

const char* to_string(Relation r);

/// Finite certification surface inside the unit disc: lambda = 0 (optionally)
/// followed by r e^{i theta} for every radius r (ascending) and every angle.
/// Angles are the uniform angles 2 pi j / angles_per_radius followed by
/// `extra_angles`.
struct GridSpec {
  std::vector<double> radii{0.3, 0.6, 0.9, 0.99};
  int angles_per_radius = 128;
  bool include_zero = true;
  std::vector<double> extra_angles;

  void validate() const;
  [[nodiscard]] std::vector<double> angles() const;
  /// Grid points in evaluation order (the reduction order of every max).
  [[nodiscard]] std::vector<Complex> points() const;
  /// Same spec with a single radius and no zero point.
  [[nodiscard]] GridSpec restricted_to(double radius) const;
};

struct RadiusConstant {
  double radius = 0.0;
  double raw = 0.0;
};

/// Where a supremum was attained or infeasibility was detected.
struct Witness {
  std::optional<Complex> lambda;
  std::optional<int> block_order;
  Vector vector;
};

struct DominationCertificate {
  Relation relation = Relation::z;
  double raw_sup = 0.0;   ///< computed value before clamping (+inf when infeasible)
  double constant = 1.0;  ///< max(1, raw_sup)
  bool feasible = true;
  std::optional<GridSpec> grid;
  std::optional<int> block_order_max;
  Witness witness;        ///< attaining point when feasible, refuting point otherwise
  std::vector<RadiusConstant> per_radius;  ///< grid relations only; radius 0 is the zero point
};

/// Minimal c' with ||D_T h|| <= c'||D_T' h|| and ||(T' - T)h|| <= c'||D_T' h||.
DominationCertificate z_constant(const Matrix& t, const Matrix& t_prime, const TolerancePolicy& tol = {});

/// sqrt of the largest pencil value sup <K(T,l)h,h>/<K(T',l)h,h> over the grid.
DominationCertificate harnack_constant_poisson(const Matrix& t, const Matrix& t_prime, const GridSpec& grid = {},
                                               const TolerancePolicy& tol = {});

/// Same constant through block moment matrices of order n <= n_max. The value
/// is nondecreasing in n, so orders 1, 2, 4, ... and n_max are evaluated.
DominationCertificate harnack_constant_moment(const Matrix& t, const Matrix& t_prime, int n_max,
                                              const TolerancePolicy& tol = {});

/// Minimal c with ||(I - lT)^{-1}(T - T')h||^2 <= c/(1-|l|^2) ||D_T' h||^2 on the grid.
DominationCertificate resolvent_estimate_constant(const Matrix& t, const Matrix& t_prime, const GridSpec& grid = {},
                                                  const TolerancePolicy& tol = {});

struct MobiusProfileEntry {
  Complex lambda;
  DominationCertificate certificate;
};

struct MobiusProfile {
  std::vector<MobiusProfileEntry> entries;
  DominationCertificate summary;   ///< raw_sup = sup of the entry raw values
  double implied_harnack_bound = 0.0;  ///< sqrt(3) * summary.constant
};

MobiusProfile mobius_z_profile(const Matrix& t, const Matrix& t_prime, const GridSpec& grid = {},
                               const TolerancePolicy& tol = {});

struct HalperinResult {
  bool feasible = false;
  double constant = 0.0;  ///< minimal K with ||x - Ax||^2 <= K(||x||^2 - ||Ax||^2)
  Vector witness;
};

HalperinResult halperin_constant(const Matrix& a, const TolerancePolicy& tol = {});

/// Right side minus left side of the exact characterization of Harnack
/// domination with constant c (c such that K(T,l) <= c^2 K(T',l)) at (lambda, h).
double sharp_identity_residual(const Matrix& t, const Matrix& t_prime, double c, Complex lambda, const Vector& h);

struct MaximalityOptions {
  std::vector<double> radii{0.9, 0.99, 0.999, 0.9999};
  int angles_per_radius = 128;
  int random_vectors = 8;
  std::uint64_t seed = 1;
  std::vector<double> window_widths{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  double divergence_factor = 10.0;
};

struct MaximalityReport {
  bool equal_operators = false;
  std::vector<RadiusConstant> grid_constants;  ///< Harnack constant of (U, T) per radius
  /// Lower bound on the Harnack constant of (U, T) implied by the atomic
  /// spectral measure of y = (U - T)h: sqrt(density ratio / ||h||^2).
  double density_lower_bound = 0.0;
  double best_window = 0.0;
  double best_angle = 0.0;
  Vector best_vector;
  bool monotone = false;
  bool divergent = false;
};

/// Tests whether U could be dominated by T != U: grid constants across radii and
/// the density-ratio lower bound. The grid angles include the eigenangles of U.
MaximalityReport maximality_probe(const Matrix& u, const Matrix& t, const MaximalityOptions& options = {},
                                  const TolerancePolicy& tol = {});

} // namespace harnack
