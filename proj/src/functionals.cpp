#include "harnack/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace harnack {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0)
    w += kTwoPi;
  if (w >= kTwoPi)
    w = 0.0;
  return w;
}

void require_disc(Complex lambda, const char* what) {
  if (!(std::abs(lambda) < 1.0))
    fail_invalid(std::string(what) + ": |lambda| must be below 1");
}

Matrix inverse_of(const Matrix& a) { return a.partialPivLu().solve(identity(a.rows())); }

} // namespace

double AtomicMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& atom : atoms)
    s += atom.mass;
  return s;
}

Matrix poisson_kernel(const Matrix& t, Complex lambda, const TolerancePolicy& tol) {
  require_square_finite(t, "poisson_kernel");
  require_disc(lambda, "poisson_kernel");
  const Eigen::Index dim = t.rows();
  const Matrix id = identity(dim);
  const Matrix r = inverse_of(id - std::conj(lambda) * t);
  const Matrix sum_form = r + r.adjoint() - id;
  const double r2 = std::norm(lambda);
  Matrix factorized = r.adjoint() * (id - r2 * t.adjoint() * t) * r;
  factorized = (factorized + factorized.adjoint()) / 2.0;

  const double gap = 1.0 - std::abs(lambda);
  const double allowed = tol.atol * static_cast<double>(dim) / (gap * gap);
  const double disagreement = (sum_form - factorized).cwiseAbs().maxCoeff();
  if (!(disagreement <= allowed)) {
    std::ostringstream os;
    os << "poisson_kernel: sum and factorized forms disagree by " << disagreement << " at lambda "
       << format_complex(lambda);
    fail_numerical(os.str());
  }
  return factorized;
}

Matrix moment_matrix(const Matrix& t, int n) {
  require_square_finite(t, "moment_matrix");
  if (n < 1)
    fail_invalid("moment_matrix: block order must be at least 1");
  const Eigen::Index d = t.rows();
  std::vector<Matrix> powers(static_cast<std::size_t>(n));
  powers[0] = identity(d);
  for (int k = 1; k < n; ++k)
    powers[k] = powers[k - 1] * t;
  Matrix m(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i >= j)
        m.block(i * d, j * d, d, d) = powers[i - j];
      else
        m.block(i * d, j * d, d, d) = powers[j - i].adjoint();
    }
  }
  return m;
}

AsymptoticLimitResult asymptotic_limit(const Matrix& t, const TolerancePolicy& tol) {
  require_square_finite(t, "asymptotic_limit");
  AsymptoticLimitResult out;
  Matrix p = identity(t.rows());
  const Matrix ta = t.adjoint();
  for (std::int64_t k = 0; k < tol.max_iter; ++k) {
    Matrix next = ta * p * t;
    next = (next + next.adjoint()) / 2.0;
    const double diff = (next - p).norm();
    if (diff <= tol.iter_tol) {
      out.limit = std::move(p);
      out.iterations = k;
      out.residual = diff;
      return out;
    }
    p = std::move(next);
    out.residual = diff;
  }
  out.limit = p;
  out.iterations = tol.max_iter;
  out.residual = (ta * p * t - p).norm();
  if (out.residual > 10.0 * tol.iter_tol) {
    std::ostringstream os;
    os << "asymptotic_limit: no convergence after " << tol.max_iter << " iterations (residual "
       << out.residual << ")";
    throw AsymptoticLimitFailure(os.str(), out);
  }
  return out;
}

Matrix cesaro_mean(const Matrix& t, int n) {
  require_square_finite(t, "cesaro_mean");
  if (n < 0)
    fail_invalid("cesaro_mean: n must be nonnegative");
  Matrix p = identity(t.rows());
  Matrix sum = p;
  for (int j = 1; j <= n; ++j) {
    p = p * t;
    sum += p;
  }
  return sum / static_cast<double>(n + 1);
}

Matrix ergodic_projection(const Matrix& t, const TolerancePolicy& tol) {
  require_square_finite(t, "ergodic_projection");
  const Matrix q = nullspace(identity(t.rows()) - t, tol);
  return q * q.adjoint();
}

namespace {

// Partial sums S_1..S_N of a term sequence; the diagnostic is the largest
// ||S_N - S_{m-1}|| over m in [first_tail, N].
template <class TermFn>
SeriesDiagnostic summed_with_tail(Eigen::Index dim, int count, int first_tail, TermFn term) {
  SeriesDiagnostic out;
  Vector sum = Vector::Zero(dim);
  std::vector<Vector> before_tail;
  for (int n = 0; n < count; ++n) {
    if (n >= first_tail)
      before_tail.push_back(sum);
    sum += term(n);
  }
  out.partial_sum = sum;
  for (const auto& s : before_tail)
    out.tail_movement = std::max(out.tail_movement, (sum - s).norm());
  return out;
}

} // namespace

SeriesDiagnostic hilbert_transform_partial(const Matrix& t, const Vector& x, int terms) {
  require_square_finite(t, "hilbert_transform_partial");
  if (terms < 1)
    fail_invalid("hilbert_transform_partial: need at least one term");
  if (x.size() != t.rows())
    fail_invalid("hilbert_transform_partial: vector has the wrong dimension");
  Vector power_x = x;
  // term index n runs over 0..terms-1 for the series index n+1.
  return summed_with_tail(t.rows(), terms, std::max(0, terms / 2 - 1), [&](int n) {
    power_x = t * power_x;
    return Vector(power_x / static_cast<double>(n + 1));
  });
}

SeriesDiagnostic power_series_partial(const Matrix& t, const Vector& y, const std::vector<Complex>& coeffs) {
  require_square_finite(t, "power_series_partial");
  if (coeffs.empty())
    fail_invalid("power_series_partial: need at least one coefficient");
  if (y.size() != t.rows())
    fail_invalid("power_series_partial: vector has the wrong dimension");
  Vector power_y = y;
  const int count = static_cast<int>(coeffs.size());
  return summed_with_tail(t.rows(), count, count / 2, [&](int n) {
    if (n > 0)
      power_y = t * power_y;
    return Vector(coeffs[n] * power_y);
  });
}

IntertwiningQuotient intertwining_quotient(const Matrix& t, const Matrix& t_prime, const TolerancePolicy& tol) {
  require_square_finite(t, "intertwining_quotient");
  require_square_finite(t_prime, "intertwining_quotient");
  if (t.rows() != t_prime.rows())
    fail_invalid("intertwining_quotient: dimension mismatch");
  const Matrix diff = t - t_prime;
  const Matrix d2 = defect_squared(t_prime);
  const PencilResult pencil = generalized_rayleigh_sup(diff.adjoint() * diff, d2, tol);

  IntertwiningQuotient out;
  out.feasible = pencil.feasible;
  if (!pencil.feasible) {
    out.witness = pencil.witness;
    return out;
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> es(d2);
  const RealVector& vals = es.eigenvalues();
  const double cut = tol.rank_rtol * std::max(0.0, vals(vals.size() - 1));
  Matrix pinv_defect = Matrix::Zero(t.rows(), t.rows());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) > cut && vals(i) > 0.0) {
      const Vector v = es.eigenvectors().col(i);
      pinv_defect += (1.0 / std::sqrt(vals(i))) * v * v.adjoint();
    }
  }
  out.c = diff * pinv_defect;
  return out;
}

double row_operator_norm(const Matrix& t, const Matrix& t_prime, int blocks, const TolerancePolicy& tol) {
  if (blocks < 1)
    fail_invalid("row_operator_norm: need at least one block");
  const IntertwiningQuotient q = intertwining_quotient(t, t_prime, tol);
  if (!q.feasible)
    fail_invalid("row_operator_norm: null(D_T') is not contained in null(T - T')");
  Matrix gram = Matrix::Zero(t.rows(), t.rows());
  Matrix w = q.c;
  for (int k = 0; k < blocks; ++k) {
    gram += w * w.adjoint();
    w = t * w;
  }
  return std::sqrt(std::max(0.0, max_eigenvalue(gram)));
}

Matrix resolvent(const Matrix& t, Complex lambda) {
  require_square_finite(t, "resolvent");
  require_disc(lambda, "resolvent");
  return inverse_of(identity(t.rows()) - lambda * t);
}

std::optional<Matrix> rank_one_resolvent(const Matrix& u, const Vector& a, const Vector& b, Complex lambda,
                                         const TolerancePolicy& tol) {
  require_square_finite(u, "rank_one_resolvent");
  require_disc(lambda, "rank_one_resolvent");
  if (!is_unitary(u, tol))
    fail_invalid("rank_one_resolvent: U is not unitary");
  if (a.size() != u.rows() || b.size() != u.rows())
    fail_invalid("rank_one_resolvent: vector dimension mismatch");
  const Matrix id = identity(u.rows());
  const Matrix base = inverse_of(id - lambda * u);
  const Vector a_lambda = std::conj(lambda) * (id - std::conj(lambda) * u.adjoint()).partialPivLu().solve(a);
  const Complex denom = 1.0 + a_lambda.dot(b);  // 1 + <b, a_lambda>
  if (std::abs(denom) <= tol.atol)
    return std::nullopt;
  return Matrix(base * (id - (b * a_lambda.adjoint()) / denom));
}

UnitaryEigen unitary_eigen(const Matrix& u, const TolerancePolicy& tol) {
  require_square_finite(u, "unitary_eigen");
  if (!is_unitary(u, tol))
    fail_invalid("unitary_eigen: matrix is not unitary");
  // Schur vectors of a normal matrix are an orthonormal eigenbasis.
  const Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success)
    fail_numerical("unitary_eigen: Schur decomposition failed");
  UnitaryEigen out;
  out.vectors = schur.matrixU();
  out.angles.resize(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    out.angles(i) = wrap_angle(std::arg(schur.matrixT()(i, i)));
  return out;
}

double circle_distance(double a, double b) {
  const double d = std::fmod(std::abs(wrap_angle(a) - wrap_angle(b)), kTwoPi);
  return std::min(d, kTwoPi - d);
}

AtomicMeasure spectral_atoms(const Matrix& u, const Vector& y, const TolerancePolicy& tol) {
  if (y.size() != u.rows())
    fail_invalid("spectral_atoms: vector has the wrong dimension");
  const UnitaryEigen eig = unitary_eigen(u, tol);
  const Vector coords = eig.vectors.adjoint() * y;

  std::vector<std::pair<double, double>> raw;
  for (Eigen::Index i = 0; i < coords.size(); ++i)
    raw.emplace_back(eig.angles(i), std::norm(coords(i)));
  std::sort(raw.begin(), raw.end());

  // Eigenvalues closer than rank_rtol on the circle form one atom.
  std::vector<Atom> merged;
  for (const auto& [angle, mass] : raw) {
    if (!merged.empty() && circle_distance(merged.back().angle, angle) <= tol.rank_rtol)
      merged.back().mass += mass;
    else
      merged.push_back({angle, mass});
  }
  if (merged.size() > 1 && circle_distance(merged.front().angle, merged.back().angle) <= tol.rank_rtol) {
    merged.front().mass += merged.back().mass;
    merged.pop_back();
  }

  AtomicMeasure mu;
  for (const auto& atom : merged)
    if (atom.mass > 0.0)
      mu.atoms.push_back(atom);
  return mu;
}

double density_ratio(const AtomicMeasure& mu, double t0, double eps) {
  if (!(eps > 0.0))
    fail_invalid("density_ratio: eps must be positive");
  double mass = 0.0;
  for (const auto& atom : mu.atoms)
    if (circle_distance(atom.angle, t0) <= eps)
      mass += atom.mass;
  return mass / (2.0 * eps);
}

} // namespace harnack
