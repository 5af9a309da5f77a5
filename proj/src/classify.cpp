#include "harnack/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "harnack/errors.hpp"
#include "harnack/operators.hpp"
#include "harnack/random.hpp"

namespace harnack {

SpectralReport spectral_report(const Matrix& t, const TolerancePolicy& tol) {
  require_square_finite(t, "spectral_report");
  const Eigen::ComplexEigenSolver<Matrix> es(t, false);
  if (es.info() != Eigen::Success)
    fail_numerical("spectral_report: eigensolver failed");
  SpectralReport out;
  const Matrix id = identity(t.rows());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex mu = es.eigenvalues()(i);
    out.eigenvalues.push_back(mu);
    out.spectral_radius = std::max(out.spectral_radius, std::abs(mu));
    if (std::abs(mu) >= 1.0 - tol.rank_rtol) {
      out.peripheral.push_back(mu);
      if (nullspace(mu * id - t, tol).cols() > 0)
        out.point_peripheral.push_back(mu);
    }
  }
  return out;
}

double peripheral_matching_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size())
    return std::numeric_limits<double>::infinity();
  if (a.empty())
    return 0.0;
  auto by_angle = [](std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](Complex x, Complex y) {
      double ax = std::arg(x), ay = std::arg(y);
      return ax < ay;
    });
    return v;
  };
  const auto sa = by_angle(a);
  const auto sb = by_angle(b);
  const std::size_t n = sa.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t shift = 0; shift < n; ++shift) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex x = sa[i];
      const Complex y = sb[(i + shift) % n];
      worst = std::max(worst, circle_distance(std::arg(x), std::arg(y)) + std::abs(std::abs(x) - std::abs(y)));
    }
    best = std::min(best, worst);
  }
  return best;
}

Matrix unitary_part_basis(const Matrix& t, const TolerancePolicy& tol) {
  require_square_finite(t, "unitary_part_basis");
  const Eigen::Index n = t.rows();
  const Matrix s = asymptotic_limit(t, tol).limit;
  const Matrix s_adj = asymptotic_limit(t.adjoint(), tol).limit;
  Matrix stacked(2 * n, n);
  stacked << identity(n) - s, identity(n) - s_adj;
  return nullspace(stacked, tol);
}

ClassificationFlags classify_contraction(const Matrix& t, const TolerancePolicy& tol) {
  require_square_finite(t, "classify_contraction");
  const Eigen::Index n = t.rows();
  const auto dim = static_cast<double>(n);
  ClassificationFlags f;
  f.is_isometry = is_isometry(t, tol);
  f.is_coisometry = is_isometry(t.adjoint(), tol);
  f.is_unitary = f.is_isometry && f.is_coisometry;
  f.is_projection = operator_norm(t * t - t) <= tol.rank_rtol * dim &&
                    operator_norm(t - t.adjoint()) <= tol.rank_rtol * dim;

  const Matrix s = asymptotic_limit(t, tol).limit;
  const Matrix s_adj = asymptotic_limit(t.adjoint(), tol).limit;
  const Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
  const Eigen::SelfAdjointEigenSolver<Matrix> es_adj(s_adj, Eigen::EigenvaluesOnly);
  // S_T has scale 1, so rank_rtol doubles as the absolute zero threshold.
  f.c_0dot = es.eigenvalues()(n - 1) <= tol.rank_rtol;
  f.c_dot0 = es_adj.eigenvalues()(n - 1) <= tol.rank_rtol;
  f.c_1dot = es.eigenvalues()(0) > tol.rank_rtol;
  f.c_dot1 = es_adj.eigenvalues()(0) > tol.rank_rtol;
  f.c_00 = f.c_0dot && f.c_dot0;
  f.c_11 = f.c_1dot && f.c_dot1;

  Matrix stacked(2 * n, n);
  stacked << identity(n) - s, identity(n) - s_adj;
  f.unitary_part_dim = nullspace(stacked, tol).cols();
  f.completely_nonunitary = f.unitary_part_dim == 0;
  return f;
}

double max_principal_angle(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    return std::acos(0.0);
  if (a.cols() == 0)
    return 0.0;
  // Sines of the principal angles are the singular values of (I - AA*)B.
  const Matrix off_a = b - a * (a.adjoint() * b);
  const Matrix off_b = a - b * (b.adjoint() * a);
  const double s = std::max(operator_norm(off_a), operator_norm(off_b));
  return std::asin(std::min(1.0, s));
}

namespace {

double decomposition_residual(const Matrix& t, const Matrix& kernel) {
  if (kernel.cols() == 0)
    return 0.0;
  const Eigen::Index n = t.rows();
  const Matrix fixed = t * kernel - kernel;
  const Matrix cross = kernel.adjoint() * t * (identity(n) - kernel * kernel.adjoint());
  return std::max(operator_norm(fixed), operator_norm(cross));
}

} // namespace

KernelRangeReport kernel_range_report(const Matrix& t, const Matrix& t_prime, const TolerancePolicy& tol) {
  require_square_finite(t, "kernel_range_report");
  require_square_finite(t_prime, "kernel_range_report");
  if (t.rows() != t_prime.rows())
    fail_invalid("kernel_range_report: dimension mismatch");
  const Eigen::Index n = t.rows();
  const Matrix k = nullspace(identity(n) - t, tol);
  const Matrix kp = nullspace(identity(n) - t_prime, tol);

  KernelRangeReport out;
  out.kernel_dim = k.cols();
  out.kernel_dim_prime = kp.cols();
  out.kernel_angle = max_principal_angle(k, kp);
  const Matrix q = rangespace(identity(n) - t, tol);
  out.range_residual = operator_norm((t - t_prime) - q * (q.adjoint() * (t - t_prime)));
  out.decomposition_residual = decomposition_residual(t, k);
  out.decomposition_residual_prime = decomposition_residual(t_prime, kp);
  return out;
}

KatznelsonTzafririReport katznelson_tzafriri(const Matrix& t, int n_max, double verdict_tol,
                                             const TolerancePolicy& tol) {
  require_square_finite(t, "katznelson_tzafriri");
  if (n_max < 1)
    fail_invalid("katznelson_tzafriri: n_max must be at least 1");
  KatznelsonTzafririReport out;
  out.trajectory.reserve(static_cast<std::size_t>(n_max) + 1);
  Matrix w = t - identity(t.rows());
  for (int n = 0; n <= n_max; ++n) {
    out.trajectory.push_back(operator_norm(w));
    w = t * w;
  }
  out.limit_verdict = out.trajectory.back() <= verdict_tol;

  const SpectralReport spec = spectral_report(t, tol);
  out.spectral_verdict = std::all_of(spec.eigenvalues.begin(), spec.eigenvalues.end(), [&](Complex mu) {
    return std::abs(mu) < 1.0 - verdict_tol || std::abs(mu - 1.0) <= verdict_tol;
  });
  return out;
}

AsymptoticInequalityReport asymptotic_inequality_check(const Matrix& t, const Matrix& t_prime, double c,
                                                       int samples, std::uint64_t seed,
                                                       const TolerancePolicy& tol) {
  require_square_finite(t, "asymptotic_inequality_check");
  require_square_finite(t_prime, "asymptotic_inequality_check");
  if (t.rows() != t_prime.rows())
    fail_invalid("asymptotic_inequality_check: dimension mismatch");
  if (samples < 1)
    fail_invalid("asymptotic_inequality_check: need at least one sample");
  const Eigen::Index n = t.rows();
  const Matrix s = asymptotic_limit(t, tol).limit;
  const Matrix sp = asymptotic_limit(t_prime, tol).limit;
  const Matrix gap = identity(n) - s;
  const Matrix gap_prime = identity(n) - sp;
  const Matrix root = hermitian_sqrt(gap, tol);
  const Matrix root_prime = hermitian_sqrt(gap_prime, tol);

  AsymptoticInequalityReport out;
  out.max_violation = -std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Vector h = rng.unit_vector(n);
    const double shift = std::abs(h.dot((s - sp) * h));
    const double lhs = 0.25 * shift * shift + (root * h).squaredNorm();
    const double rhs = c * c * (root_prime * h).squaredNorm();
    out.max_violation = std::max(out.max_violation, lhs - rhs);
  }

  const Matrix kp = nullspace(gap_prime, tol);
  if (kp.cols() > 0) {
    out.kernel_inclusion_residual = operator_norm(gap * kp);
    out.agreement_residual = operator_norm((t - t_prime) * kp);
  }
  const PencilResult pencil = generalized_rayleigh_sup(gap, gap_prime, tol);
  out.z_pencil_feasible = pencil.feasible;
  out.z_pencil_constant = pencil.supremum;
  return out;
}

} // namespace harnack
