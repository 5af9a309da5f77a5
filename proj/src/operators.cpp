#include "harnack/operators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "harnack/errors.hpp"
#include "harnack/random.hpp"

namespace harnack {

// ---------------------------------------------------------------- random

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0)
    u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Vector Rng::unit_vector(Eigen::Index dim) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = complex_normal();
  return v.normalized();
}

Matrix ginibre(Eigen::Index dim, Rng& rng) {
  Matrix g(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i)
      g(i, j) = rng.complex_normal() * scale;
  return g;
}

Matrix haar_unitary(Eigen::Index dim, Rng& rng) {
  const Eigen::HouseholderQR<Matrix> qr(ginibre(dim, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double mod = std::abs(r(j, j));
    if (mod > 0)
      q.col(j) *= r(j, j) / mod;
  }
  return q;
}

// ---------------------------------------------------------------- contraction

ContractionMatrix::ContractionMatrix(Matrix entries, std::string label, const TolerancePolicy& tol)
    : entries_(std::move(entries)), label_(std::move(label)) {
  require_square_finite(entries_, "contraction");
  const double norm = operator_norm(entries_);
  if (norm > 1.0 + tol.atol) {
    std::ostringstream os;
    os.precision(17);
    os << "not a contraction: operator norm " << norm << " exceeds 1 (" << label_ << ")";
    throw Error(ErrorKind::not_a_contraction, os.str());
  }
}

ContractionMatrix ContractionMatrix::relabeled(std::string label) const {
  ContractionMatrix copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(6);
  if (z.imag() == 0.0)
    os << z.real();
  else
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

bool is_isometry(const Matrix& t, const TolerancePolicy& tol) {
  const auto dim = static_cast<double>(t.rows());
  return operator_norm(t.adjoint() * t - identity(t.rows())) <= tol.rank_rtol * dim;
}

bool is_unitary(const Matrix& u, const TolerancePolicy& tol) {
  if (u.rows() != u.cols())
    return false;
  const auto dim = static_cast<double>(u.rows());
  return is_isometry(u, tol) && operator_norm(u * u.adjoint() - identity(u.rows())) <= tol.rank_rtol * dim;
}

ContractionMatrix random_contraction(Eigen::Index dim, std::uint64_t seed, double norm_cap,
                                     const TolerancePolicy& tol) {
  if (dim < 1)
    fail_invalid("random_contraction: dim must be at least 1");
  if (!(norm_cap > 0.0 && norm_cap <= 1.0))
    fail_invalid("random_contraction: norm_cap must lie in (0, 1]");
  Rng rng(seed);
  const Matrix g = ginibre(dim, rng);
  const Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector sigma = svd.singularValues().cwiseMin(norm_cap);
  Matrix t = svd.matrixU() * sigma.asDiagonal() * svd.matrixV().adjoint();
  std::ostringstream label;
  label << "random(dim=" << dim << ",seed=" << seed << ",norm_cap=" << norm_cap << ")";
  return {std::move(t), label.str(), tol};
}

ContractionMatrix random_unitary(Eigen::Index dim, std::uint64_t seed, const TolerancePolicy& tol) {
  if (dim < 1)
    fail_invalid("random_unitary: dim must be at least 1");
  Rng rng(seed);
  std::ostringstream label;
  label << "random_unitary(dim=" << dim << ",seed=" << seed << ")";
  return {haar_unitary(dim, rng), label.str(), tol};
}

ContractionMatrix truncated_shift(int n, int multiplicity, const TolerancePolicy& tol) {
  if (n < 1 || multiplicity < 1)
    fail_invalid("truncated_shift: n and multiplicity must be at least 1");
  const Eigen::Index dim = static_cast<Eigen::Index>(n) * multiplicity;
  Matrix s = Matrix::Zero(dim, dim);
  for (int block = 0; block + 1 < n; ++block)
    s.block((block + 1) * multiplicity, block * multiplicity, multiplicity, multiplicity).setIdentity();
  return {std::move(s),
          "truncated_shift(n=" + std::to_string(n) + ",multiplicity=" + std::to_string(multiplicity) + ")", tol};
}

ContractionMatrix cyclic_shift(int n, const TolerancePolicy& tol) {
  if (n < 1)
    fail_invalid("cyclic_shift: n must be at least 1");
  Matrix u = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    u((k + 1) % n, k) = 1.0;
  return {std::move(u), "cyclic_shift(n=" + std::to_string(n) + ")", tol};
}

ContractionMatrix rank_one_perturbed_unitary(const ContractionMatrix& u, const Vector& xi, Complex alpha,
                                             const TolerancePolicy& tol) {
  if (!is_unitary(u.entries(), tol))
    fail_invalid("rank_one_perturbed_unitary: U is not unitary (" + u.label() + ")");
  if (xi.size() != u.dim())
    fail_invalid("rank_one_perturbed_unitary: xi has the wrong dimension");
  if (!xi.allFinite() || std::abs(xi.norm() - 1.0) > tol.atol)
    fail_invalid("rank_one_perturbed_unitary: xi must be a unit vector");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    fail_invalid("rank_one_perturbed_unitary: alpha must be finite");
  if (std::abs(alpha) > 1.0 + tol.atol)
    throw Error(ErrorKind::not_a_contraction,
                "rank_one_perturbed_unitary: |alpha| = " + format_complex(std::abs(alpha)) + " exceeds 1");
  const Matrix& um = u.entries();
  Matrix t = um - (1.0 - alpha) * (um * xi) * xi.adjoint();
  return {std::move(t), "rank_one_perturbed_unitary(" + u.label() + ",alpha=" + format_complex(alpha) + ")", tol};
}

ContractionMatrix weighted_cyclic_shift(int n, Complex alpha, const TolerancePolicy& tol) {
  if (n < 2)
    fail_invalid("weighted_cyclic_shift: n must be at least 2");
  Vector e0 = Vector::Zero(n);
  e0(0) = 1.0;
  return rank_one_perturbed_unitary(cyclic_shift(n, tol), e0, alpha, tol)
      .relabeled("weighted_cyclic_shift(n=" + std::to_string(n) + ",alpha=" + format_complex(alpha) + ")");
}

ContractionMatrix block_shift_perturbation(const ContractionMatrix& a, int n, const TolerancePolicy& tol) {
  if (n < 2)
    fail_invalid("block_shift_perturbation: n must be at least 2");
  const Eigen::Index m = a.dim();
  Matrix t = Matrix::Zero(n * m, n * m);
  t.block(m, 0, m, m) = a.entries();
  for (int block = 1; block + 1 < n; ++block)
    t.block((block + 1) * m, block * m, m, m).setIdentity();
  return {std::move(t), "block_shift_perturbation(" + a.label() + ",n=" + std::to_string(n) + ")", tol};
}

ContractionMatrix mobius_transform(const ContractionMatrix& t, Complex lambda, const TolerancePolicy& tol) {
  if (!(std::abs(lambda) < 1.0))
    fail_invalid("mobius_transform: |lambda| must be below 1");
  const Matrix& tm = t.entries();
  const Matrix id = identity(t.dim());
  // T and (I - conj(lambda) T) commute, so a left solve gives the same product.
  Matrix m = (id - std::conj(lambda) * tm).partialPivLu().solve(tm - lambda * id);
  return {std::move(m), "mobius(" + t.label() + ",lambda=" + format_complex(lambda) + ")", tol};
}

ContractionMatrix direct_sum(const ContractionMatrix& a, const ContractionMatrix& b, const TolerancePolicy& tol) {
  const Eigen::Index n = a.dim() + b.dim();
  Matrix s = Matrix::Zero(n, n);
  s.topLeftCorner(a.dim(), a.dim()) = a.entries();
  s.bottomRightCorner(b.dim(), b.dim()) = b.entries();
  return {std::move(s), "direct_sum(" + a.label() + "," + b.label() + ")", tol};
}

ContractionMatrix adjoint(const ContractionMatrix& t, const TolerancePolicy& tol) {
  return {t.entries().adjoint(), "adjoint(" + t.label() + ")", tol};
}

ContractionMatrix power(const ContractionMatrix& t, int k, const TolerancePolicy& tol) {
  if (k < 0)
    fail_invalid("power: exponent must be nonnegative");
  Matrix p = identity(t.dim());
  for (int i = 0; i < k; ++i)
    p = p * t.entries();
  return {std::move(p), "power(" + t.label() + ",k=" + std::to_string(k) + ")", tol};
}

ContractionMatrix scalar_multiple(const ContractionMatrix& t, Complex s, const TolerancePolicy& tol) {
  return {s * t.entries(), "scalar_multiple(" + t.label() + ",s=" + format_complex(s) + ")", tol};
}

Matrix defect_squared(const Matrix& t) {
  Matrix d = identity(t.rows()) - t.adjoint() * t;
  return (d + d.adjoint()) / 2.0;
}

Matrix defect(const ContractionMatrix& t, const TolerancePolicy& tol) {
  return hermitian_sqrt(defect_squared(t.entries()), tol);
}

} // namespace harnack
