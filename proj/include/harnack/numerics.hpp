#pragma once

#include <limits>

#include "harnack/tolerance.hpp"
#include "harnack/types.hpp"

namespace harnack {

struct PsdVerdict {
  bool psd = false;
  double min_eigenvalue = 0.0;
  Vector min_eigenvector;
};

/// Value of sup <Mh,h>/<Nh,h> over h outside null(N).
///
/// When null(N) is not contained in null(M) the pencil is infeasible: the
/// supremum is +inf and `witness` is a unit vector of null(N) with <M w, w> > 0.
/// Otherwise `witness` attains the supremum.
struct PencilResult {
  double supremum = 0.0;
  bool feasible = true;
  Vector witness;
};

/// Throws invalid-input for non-square or non-finite matrices.
void require_square_finite(const Matrix& a, const char* what);

/// (H + H*)/2, after checking that H is Hermitian up to atol (relative to its scale).
Matrix symmetrized(const Matrix& h, const TolerancePolicy& tol, const char* what);

PsdVerdict psd_check(const Matrix& h, const TolerancePolicy& tol);

/// Minimal c with M <= c N, by congruence with the pseudo-inverse square root
/// of N on range(N). Eigenvalues of N at or below rank_rtol * |N| span the
/// kernel (all of them when |N| <= atol); the pencil is infeasible when M
/// reaches rank_rtol * max(|M|, |N|) on that kernel, borderline included.
/// When both sides are below atol in norm the pencil is zero (supremum 0).
PencilResult generalized_rayleigh_sup(const Matrix& m, const Matrix& n, const TolerancePolicy& tol);

/// The denominator side of generalized_rayleigh_sup, decomposed once and
/// reused for several numerators.
class PencilDenominator {
public:
  PencilDenominator(const Matrix& n, const TolerancePolicy& tol);
  [[nodiscard]] PencilResult sup(const Matrix& m) const;

private:
  TolerancePolicy tol_;
  double n_max_ = 0.0;
  RealVector values_;
  Matrix vectors_;
};

/// Principal square root of a PSD matrix; eigenvalues in [psd_floor, 0) are clamped.
Matrix hermitian_sqrt(const Matrix& p, const TolerancePolicy& tol);

/// Orthonormal basis of the numerical null space (columns; possibly zero columns).
Matrix nullspace(const Matrix& a, const TolerancePolicy& tol);

/// Orthonormal basis of the numerical range (column space).
Matrix rangespace(const Matrix& a, const TolerancePolicy& tol);

double operator_norm(const Matrix& a);

/// Largest eigenvalue of a Hermitian matrix (symmetrized without checks).
double max_eigenvalue(const Matrix& h);

Matrix identity(Eigen::Index dim);

} // namespace harnack
