#pragma once

#include <cstdint>
#include <vector>

#include "harnack/functionals.hpp"
#include "harnack/numerics.hpp"

namespace harnack {

struct SpectralReport {
  std::vector<Complex> eigenvalues;
  std::vector<Complex> peripheral;        ///< |mu| >= 1 - rank_rtol
  std::vector<Complex> point_peripheral;  ///< peripheral values with a numerical eigenvector
  double spectral_radius = 0.0;
};

SpectralReport spectral_report(const Matrix& t, const TolerancePolicy& tol = {});

/// Bottleneck distance between two finite multisets near the unit circle
/// (cyclic pairing of angle-sorted points, which is optimal on a circle).
/// Infinite when the sizes differ; 0 for two empty sets.
double peripheral_matching_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

/// Finite-dimensional class flags. Weak and strong stability coincide here,
/// so C_0. is S_T = 0 and C_1. is S_T positive definite.
struct ClassificationFlags {
  bool is_unitary = false;
  bool is_isometry = false;
  bool is_coisometry = false;
  bool is_projection = false;
  bool c_0dot = false;
  bool c_dot0 = false;
  bool c_00 = false;
  bool c_1dot = false;
  bool c_dot1 = false;
  bool c_11 = false;
  bool completely_nonunitary = false;
  Eigen::Index unitary_part_dim = 0;
};

/// Orthonormal basis of N(I - S_T) intersected with N(I - S_{T*}), the largest
/// reducing subspace on which T is unitary.
Matrix unitary_part_basis(const Matrix& t, const TolerancePolicy& tol = {});

ClassificationFlags classify_contraction(const Matrix& t, const TolerancePolicy& tol = {});

/// Largest principal angle between two subspaces given by orthonormal bases
/// (pi/2 when the dimensions differ).
double max_principal_angle(const Matrix& a, const Matrix& b);

struct KernelRangeReport {
  Eigen::Index kernel_dim = 0;        ///< dim N(I - T)
  Eigen::Index kernel_dim_prime = 0;  ///< dim N(I - T')
  double kernel_angle = 0.0;          ///< largest principal angle between the two kernels
  double range_residual = 0.0;        ///< ||(I - Q Q*)(T - T')||, Q a basis of range(I - T)
  double decomposition_residual = 0.0;        ///< T = I (+) T_1 on N(I-T) (+) range(I-T)
  double decomposition_residual_prime = 0.0;  ///< same for T' against its own kernel
};

KernelRangeReport kernel_range_report(const Matrix& t, const Matrix& t_prime, const TolerancePolicy& tol = {});

struct KatznelsonTzafririReport {
  std::vector<double> trajectory;  ///< ||T^n (T - I)||, n = 0..n_max
  bool limit_verdict = false;      ///< trajectory(n_max) <= verdict_tol
  bool spectral_verdict = false;   ///< every eigenvalue in the open disc or within verdict_tol of 1
  [[nodiscard]] bool agree() const { return limit_verdict == spectral_verdict; }
};

KatznelsonTzafririReport katznelson_tzafriri(const Matrix& t, int n_max, double verdict_tol,
                                             const TolerancePolicy& tol = {});

struct AsymptoticInequalityReport {
  double max_violation = 0.0;      ///< max over samples of LHS - RHS
  double kernel_inclusion_residual = 0.0;  ///< ||(I - S_T) K'||, K' a basis of N(I - S_T')
  double agreement_residual = 0.0;         ///< ||(T - T') K'||
  bool z_pencil_feasible = false;  ///< I - S_T <= c (I - S_T') for some c
  double z_pencil_constant = 0.0;
};

/// Samples 1/4 |<(S_T - S_T')h,h>|^2 + ||(I-S_T)^{1/2}h||^2 - c^2 ||(I-S_T')^{1/2}h||^2
/// over random unit vectors, plus the kernel and Z-pencil consequences.
AsymptoticInequalityReport asymptotic_inequality_check(const Matrix& t, const Matrix& t_prime, double c,
                                                       int samples, std::uint64_t seed,
                                                       const TolerancePolicy& tol = {});

} // namespace harnack
