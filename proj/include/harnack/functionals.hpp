#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "harnack/errors.hpp"
#include "harnack/numerics.hpp"
#include "harnack/operators.hpp"

namespace harnack {

/// Strong limit S_T of T*^n T^n, with the number of recurrence steps used.
struct AsymptoticLimitResult {
  Matrix limit;
  std::int64_t iterations = 0;
  double residual = 0.0;  ///< ||T* S T - S||
};

/// Raised when the recurrence does not settle; carries the partial result.
class AsymptoticLimitFailure : public Error {
public:
  AsymptoticLimitFailure(const std::string& what, AsymptoticLimitResult partial)
      : Error(ErrorKind::numerical_failure, what), partial_(std::move(partial)) {}
  [[nodiscard]] const AsymptoticLimitResult& partial() const { return partial_; }

private:
  AsymptoticLimitResult partial_;
};

struct Atom {
  double angle = 0.0;  ///< in [0, 2 pi)
  double mass = 0.0;
};

/// Finite atomic measure on the circle, atoms sorted by angle.
struct AtomicMeasure {
  std::vector<Atom> atoms;
  [[nodiscard]] double total_mass() const;
};

struct SeriesDiagnostic {
  Vector partial_sum;
  double tail_movement = 0.0;  ///< max_{m in [N/2, N]} ||sum_{n=m}^{N} term_n||
};

struct IntertwiningQuotient {
  bool feasible = false;
  Matrix c;        ///< C with C D_{T'} = T - T' (valid when feasible)
  Vector witness;  ///< unit vector in null(D_{T'}) moved by T - T' (when infeasible)
};

/// K(T, lambda) = (I - conj(lambda) T)^{-1} + (I - lambda T*)^{-1} - I.
/// Both the sum form and the factorized form are evaluated; disagreement
/// beyond atol * dim / (1 - |lambda|)^2 is a numerical failure.
Matrix poisson_kernel(const Matrix& t, Complex lambda, const TolerancePolicy& tol = {});

/// Block matrix with (i, j) block T^{[i-j]}: T^{i-j} below the diagonal, T*^{j-i} above.
Matrix moment_matrix(const Matrix& t, int n);

/// Iterates P <- T* P T from the identity until successive iterates differ by
/// at most iter_tol (Frobenius norm). Throws AsymptoticLimitFailure when
/// max_iter is exhausted with residual above 10 iter_tol.
AsymptoticLimitResult asymptotic_limit(const Matrix& t, const TolerancePolicy& tol = {});

/// (n+1)^{-1} sum_{j<=n} T^j.
Matrix cesaro_mean(const Matrix& t, int n);

/// Orthogonal projection onto N(I - T).
Matrix ergodic_projection(const Matrix& t, const TolerancePolicy& tol = {});

/// Partial sum sum_{n=1}^{N} T^n x / n with its tail-movement diagnostic.
SeriesDiagnostic hilbert_transform_partial(const Matrix& t, const Vector& x, int terms);

/// Partial sum sum_{n=0}^{N-1} coeffs[n] T^n y with the same diagnostic (N = coeffs.size()).
SeriesDiagnostic power_series_partial(const Matrix& t, const Vector& y, const std::vector<Complex>& coeffs);

/// C = (T - T') pinv(D_{T'}), defined iff null(D_{T'}) is contained in null(T - T').
IntertwiningQuotient intertwining_quotient(const Matrix& t, const Matrix& t_prime, const TolerancePolicy& tol = {});

/// ||[C, TC, ..., T^{N-1} C]||. Throws invalid-input when the quotient is infeasible.
double row_operator_norm(const Matrix& t, const Matrix& t_prime, int blocks, const TolerancePolicy& tol = {});

/// Dense (I - lambda T)^{-1}.
Matrix resolvent(const Matrix& t, Complex lambda);

/// (I - lambda T)^{-1} for T = U - b a*, through the rank-one update of
/// (I - lambda U)^{-1}. Returns nullopt when |1 + <b, a_lambda>| <= atol,
/// which is exactly when I - lambda T is singular.
std::optional<Matrix> rank_one_resolvent(const Matrix& u, const Vector& a, const Vector& b, Complex lambda,
                                         const TolerancePolicy& tol = {});

/// Angles of the eigenvalues of a unitary, in [0, 2 pi), with an orthonormal eigenbasis.
struct UnitaryEigen {
  RealVector angles;
  Matrix vectors;
};
UnitaryEigen unitary_eigen(const Matrix& u, const TolerancePolicy& tol = {});

/// Spectral measure <E_U y, y> as atoms at the eigenvalue angles of U.
AtomicMeasure spectral_atoms(const Matrix& u, const Vector& y, const TolerancePolicy& tol = {});

/// mu([t0 - eps, t0 + eps]) / (2 eps), closed window in the circle metric.
double density_ratio(const AtomicMeasure& mu, double t0, double eps);

double circle_distance(double a, double b);

} // namespace harnack
