#include "harnack/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "harnack/errors.hpp"

namespace harnack {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::invalid_input: return "invalid-input";
  case ErrorKind::not_a_contraction: return "not-a-contraction";
  case ErrorKind::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

void TolerancePolicy::validate() const {
  if (!(atol > 0) || !(rank_rtol > 0) || !(iter_tol > 0) || max_iter <= 0)
    fail_invalid("tolerance policy: atol, rank_rtol, iter_tol and max_iter must be positive");
  if (!(psd_floor < 0))
    fail_invalid("tolerance policy: psd_floor must be negative");
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

void require_square_finite(const Matrix& a, const char* what) {
  if (a.rows() != a.cols())
    fail_invalid(std::string(what) + ": matrix is not square");
  if (a.rows() == 0)
    fail_invalid(std::string(what) + ": matrix is empty");
  if (!a.allFinite())
    fail_invalid(std::string(what) + ": matrix has non-finite entries");
}

Matrix symmetrized(const Matrix& h, const TolerancePolicy& tol, const char* what) {
  require_square_finite(h, what);
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double skew = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (skew > tol.atol * scale)
    fail_invalid(std::string(what) + ": matrix is not Hermitian (skew part " + std::to_string(skew) + ")");
  return (h + h.adjoint()) / 2.0;
}

PsdVerdict psd_check(const Matrix& h, const TolerancePolicy& tol) {
  const Matrix hs = symmetrized(h, tol, "psd_check");
  const Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
  if (es.info() != Eigen::Success)
    fail_numerical("psd_check: eigensolver failed");
  PsdVerdict v;
  v.min_eigenvalue = es.eigenvalues()(0);
  v.min_eigenvector = es.eigenvectors().col(0);
  v.psd = v.min_eigenvalue >= tol.psd_floor;
  return v;
}

double max_eigenvalue(const Matrix& h) {
  const Matrix hs = (h + h.adjoint()) / 2.0;
  const Eigen::SelfAdjointEigenSolver<Matrix> es(hs, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail_numerical("max_eigenvalue: eigensolver failed");
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> checked_psd_eigen(const Matrix& h, const TolerancePolicy& tol,
                                                        const char* what) {
  const Matrix hs = symmetrized(h, tol, what);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
  if (es.info() != Eigen::Success)
    fail_numerical(std::string(what) + ": eigensolver failed");
  if (es.eigenvalues()(0) < tol.psd_floor)
    fail_invalid(std::string(what) + ": matrix is not positive semidefinite (eigenvalue " +
                 std::to_string(es.eigenvalues()(0)) + ")");
  return es;
}

Vector unit_basis_vector(Eigen::Index dim) {
  Vector e = Vector::Zero(dim);
  e(0) = 1.0;
  return e;
}

} // namespace

PencilDenominator::PencilDenominator(const Matrix& n, const TolerancePolicy& tol) : tol_(tol) {
  const auto en = checked_psd_eigen(n, tol, "generalized_rayleigh_sup (denominator)");
  values_ = en.eigenvalues();
  vectors_ = en.eigenvectors();
  n_max_ = std::max(0.0, values_(values_.size() - 1));
}

PencilResult PencilDenominator::sup(const Matrix& m) const {
  const Eigen::Index dim = vectors_.rows();
  if (m.rows() != dim || m.cols() != dim)
    fail_invalid("generalized_rayleigh_sup: dimension mismatch");
  const Matrix ms = symmetrized(m, tol_, "generalized_rayleigh_sup (numerator)");
  const Eigen::SelfAdjointEigenSolver<Matrix> em(ms, Eigen::EigenvaluesOnly);
  if (em.info() != Eigen::Success)
    fail_numerical("generalized_rayleigh_sup (numerator): eigensolver failed");
  if (em.eigenvalues()(0) < tol_.psd_floor)
    fail_invalid("generalized_rayleigh_sup (numerator): matrix is not positive semidefinite (eigenvalue " +
                 std::to_string(em.eigenvalues()(0)) + ")");
  const double m_max = std::max(0.0, em.eigenvalues()(dim - 1));
  const double scale = std::max(n_max_, m_max);

  PencilResult out;
  if (scale <= tol_.atol) {
    out.witness = unit_basis_vector(dim);
    return out;
  }

  // Eigenvalues are ascending, so the numerical null space of N is a prefix.
  // A denominator at noise level (norm <= atol) is null as a whole.
  Eigen::Index null_dim = dim;
  if (n_max_ > tol_.atol) {
    const double rank_cut = tol_.rank_rtol * n_max_;
    null_dim = 0;
    while (null_dim < dim && !(values_(null_dim) > rank_cut))
      ++null_dim;
  }

  if (null_dim > 0) {
    const Matrix w = vectors_.leftCols(null_dim);
    const Matrix restricted = w.adjoint() * ms * w;
    const Eigen::SelfAdjointEigenSolver<Matrix> er((restricted + restricted.adjoint()) / 2.0);
    const double top = er.eigenvalues()(null_dim - 1);
    if (top >= tol_.rank_rtol * scale) {
      out.feasible = false;
      out.supremum = std::numeric_limits<double>::infinity();
      out.witness = (w * er.eigenvectors().col(null_dim - 1)).normalized();
      return out;
    }
  }
  const Eigen::Index range_dim = dim - null_dim;
  if (range_dim == 0) {
    out.witness = unit_basis_vector(dim);
    return out;
  }
  const RealVector inv_sqrt = values_.tail(range_dim).cwiseSqrt().cwiseInverse();
  const Matrix congruence = vectors_.rightCols(range_dim) * inv_sqrt.asDiagonal();
  const Matrix reduced = congruence.adjoint() * ms * congruence;
  const Eigen::SelfAdjointEigenSolver<Matrix> ex((reduced + reduced.adjoint()) / 2.0);
  if (ex.info() != Eigen::Success)
    fail_numerical("generalized_rayleigh_sup: eigensolver failed");
  out.supremum = std::max(0.0, ex.eigenvalues()(range_dim - 1));
  out.witness = (congruence * ex.eigenvectors().col(range_dim - 1)).normalized();
  return out;
}

PencilResult generalized_rayleigh_sup(const Matrix& m, const Matrix& n, const TolerancePolicy& tol) {
  if (m.rows() != n.rows() || m.cols() != n.cols())
    fail_invalid("generalized_rayleigh_sup: dimension mismatch");
  return PencilDenominator(n, tol).sup(m);
}

Matrix hermitian_sqrt(const Matrix& p, const TolerancePolicy& tol) {
  const auto es = checked_psd_eigen(p, tol, "hermitian_sqrt");
  const RealVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix r = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
  return (r + r.adjoint()) / 2.0;
}

namespace {

Eigen::Index numerical_rank(const RealVector& sigma, double rtol) {
  if (sigma.size() == 0 || sigma(0) == 0.0)
    return 0;
  const double cut = rtol * sigma(0);
  Eigen::Index r = 0;
  while (r < sigma.size() && sigma(r) > cut)
    ++r;
  return r;
}

} // namespace

Matrix nullspace(const Matrix& a, const TolerancePolicy& tol) {
  if (!a.allFinite())
    fail_invalid("nullspace: matrix has non-finite entries");
  const Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Eigen::Index rank = numerical_rank(svd.singularValues(), tol.rank_rtol);
  return svd.matrixV().rightCols(a.cols() - rank);
}

Matrix rangespace(const Matrix& a, const TolerancePolicy& tol) {
  if (!a.allFinite())
    fail_invalid("rangespace: matrix has non-finite entries");
  const Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullU);
  const Eigen::Index rank = numerical_rank(svd.singularValues(), tol.rank_rtol);
  return svd.matrixU().leftCols(rank);
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0)
    return 0.0;
  // Largest eigenvalue of the Gram matrix of the smaller side: its absolute
  // error is eps ||A||^2, so the root is accurate relative to ||A||.
  const Matrix gram = a.rows() <= a.cols() ? Matrix(a * a.adjoint()) : Matrix(a.adjoint() * a);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail_numerical("operator_norm: eigensolver failed");
  return std::sqrt(std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1)));
}

} // namespace harnack
