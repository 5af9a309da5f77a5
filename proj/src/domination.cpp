#include "harnack/domination.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "harnack/errors.hpp"
#include "harnack/random.hpp"

namespace harnack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_pair(const Matrix& t, const Matrix& t_prime, const char* what) {
  require_square_finite(t, what);
  require_square_finite(t_prime, what);
  if (t.rows() != t_prime.rows())
    fail_invalid(std::string(what) + ": operators have different dimensions");
}

DominationCertificate infeasible(Relation relation, Witness witness) {
  DominationCertificate c;
  c.relation = relation;
  c.feasible = false;
  c.raw_sup = kInf;
  c.constant = kInf;
  c.witness = std::move(witness);
  return c;
}

void finish(DominationCertificate& c) { c.constant = std::max(1.0, c.raw_sup); }

// Runs `pencil_at` over the grid in order, keeping the first maximizer.
// `pencil_at` returns the pencil result and the factor applied to its supremum.
template <class PencilAt>
DominationCertificate grid_sup(Relation relation, const GridSpec& grid, bool take_sqrt, PencilAt pencil_at) {
  grid.validate();
  DominationCertificate cert;
  cert.relation = relation;
  cert.grid = grid;
  if (grid.include_zero)
    cert.per_radius.push_back({0.0, 0.0});
  for (double r : grid.radii)
    cert.per_radius.push_back({r, 0.0});

  double best = -1.0;
  for (const Complex lambda : grid.points()) {
    const auto [pencil, factor] = pencil_at(lambda);
    if (!pencil.feasible) {
      DominationCertificate bad = infeasible(relation, Witness{lambda, std::nullopt, pencil.witness});
      bad.grid = grid;
      return bad;
    }
    const double value = factor * pencil.supremum;
    if (value > best) {
      best = value;
      cert.witness = Witness{lambda, std::nullopt, pencil.witness};
    }
    const double modulus = std::abs(lambda);
    for (auto& entry : cert.per_radius)
      if (std::abs(entry.radius - modulus) <= 1e-12 * std::max(1.0, entry.radius))
        entry.raw = std::max(entry.raw, take_sqrt ? std::sqrt(value) : value);
  }
  cert.raw_sup = take_sqrt ? std::sqrt(std::max(0.0, best)) : std::max(0.0, best);
  finish(cert);
  return cert;
}

struct ScaledPencil {
  PencilResult pencil;
  double factor = 1.0;
};

} // namespace

const char* to_string(Relation r) {
  switch (r) {
  case Relation::harnack_poisson: return "harnack_poisson";
  case Relation::harnack_moment: return "harnack_moment";
  case Relation::z: return "z";
  case Relation::resolvent: return "resolvent";
  case Relation::mobius_z_profile: return "mobius_z_profile";
  }
  return "unknown";
}

void GridSpec::validate() const {
  if (radii.empty())
    fail_invalid("grid: at least one radius is required");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0))
      fail_invalid("grid: radii must lie in (0, 1)");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      fail_invalid("grid: radii must be strictly ascending");
  }
  if (angles_per_radius < 8)
    fail_invalid("grid: at least 8 angles per radius are required");
  for (double a : extra_angles)
    if (!std::isfinite(a))
      fail_invalid("grid: extra angles must be finite");
}

std::vector<double> GridSpec::angles() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(angles_per_radius) + extra_angles.size());
  for (int j = 0; j < angles_per_radius; ++j)
    out.push_back(2.0 * std::numbers::pi * j / angles_per_radius);
  out.insert(out.end(), extra_angles.begin(), extra_angles.end());
  return out;
}

std::vector<Complex> GridSpec::points() const {
  std::vector<Complex> pts;
  if (include_zero)
    pts.emplace_back(0.0, 0.0);
  const auto thetas = angles();
  for (double r : radii)
    for (double theta : thetas)
      pts.push_back(std::polar(r, theta));
  return pts;
}

GridSpec GridSpec::restricted_to(double radius) const {
  GridSpec g = *this;
  g.radii = {radius};
  g.include_zero = false;
  return g;
}

DominationCertificate z_constant(const Matrix& t, const Matrix& t_prime, const TolerancePolicy& tol) {
  require_pair(t, t_prime, "z_constant");
  const PencilDenominator n(defect_squared(t_prime), tol);
  const Matrix diff = t_prime - t;
  const PencilResult defects = n.sup(defect_squared(t));
  const PencilResult offsets = n.sup(diff.adjoint() * diff);
  if (!defects.feasible)
    return infeasible(Relation::z, Witness{std::nullopt, std::nullopt, defects.witness});
  if (!offsets.feasible)
    return infeasible(Relation::z, Witness{std::nullopt, std::nullopt, offsets.witness});
  DominationCertificate c;
  c.relation = Relation::z;
  const bool defects_win = defects.supremum >= offsets.supremum;
  c.raw_sup = std::sqrt(defects_win ? defects.supremum : offsets.supremum);
  c.witness.vector = defects_win ? defects.witness : offsets.witness;
  finish(c);
  return c;
}

DominationCertificate harnack_constant_poisson(const Matrix& t, const Matrix& t_prime, const GridSpec& grid,
                                               const TolerancePolicy& tol) {
  require_pair(t, t_prime, "harnack_constant_poisson");
  return grid_sup(Relation::harnack_poisson, grid, true, [&](Complex lambda) {
    return ScaledPencil{generalized_rayleigh_sup(poisson_kernel(t, lambda, tol), poisson_kernel(t_prime, lambda, tol), tol),
                        1.0};
  });
}

DominationCertificate harnack_constant_moment(const Matrix& t, const Matrix& t_prime, int n_max,
                                              const TolerancePolicy& tol) {
  require_pair(t, t_prime, "harnack_constant_moment");
  if (n_max < 1)
    fail_invalid("harnack_constant_moment: n_max must be at least 1");
  std::vector<int> orders;
  for (int n = 1; n < n_max; n *= 2)
    orders.push_back(n);
  orders.push_back(n_max);

  DominationCertificate cert;
  cert.relation = Relation::harnack_moment;
  cert.block_order_max = n_max;
  double best = -1.0;
  for (int n : orders) {
    const PencilResult p = generalized_rayleigh_sup(moment_matrix(t, n), moment_matrix(t_prime, n), tol);
    if (!p.feasible) {
      DominationCertificate bad = infeasible(Relation::harnack_moment, Witness{std::nullopt, n, p.witness});
      bad.block_order_max = n_max;
      return bad;
    }
    if (p.supremum > best) {
      best = p.supremum;
      cert.witness = Witness{std::nullopt, n, p.witness};
    }
  }
  cert.raw_sup = std::sqrt(std::max(0.0, best));
  finish(cert);
  return cert;
}

DominationCertificate resolvent_estimate_constant(const Matrix& t, const Matrix& t_prime, const GridSpec& grid,
                                                  const TolerancePolicy& tol) {
  require_pair(t, t_prime, "resolvent_estimate_constant");
  const Matrix n = defect_squared(t_prime);
  const Matrix diff = t - t_prime;
  return grid_sup(Relation::resolvent, grid, false, [&](Complex lambda) {
    const Matrix x = resolvent(t, lambda) * diff;
    return ScaledPencil{generalized_rayleigh_sup(x.adjoint() * x, n, tol), 1.0 - std::norm(lambda)};
  });
}

MobiusProfile mobius_z_profile(const Matrix& t, const Matrix& t_prime, const GridSpec& grid,
                               const TolerancePolicy& tol) {
  require_pair(t, t_prime, "mobius_z_profile");
  grid.validate();
  const ContractionMatrix ct(t, "T", tol);
  const ContractionMatrix ctp(t_prime, "T'", tol);

  MobiusProfile out;
  DominationCertificate& summary = out.summary;
  summary.relation = Relation::mobius_z_profile;
  summary.grid = grid;
  if (grid.include_zero)
    summary.per_radius.push_back({0.0, 0.0});
  for (double r : grid.radii)
    summary.per_radius.push_back({r, 0.0});

  double best = -1.0;
  for (const Complex lambda : grid.points()) {
    DominationCertificate c =
        z_constant(mobius_transform(ct, lambda, tol).entries(), mobius_transform(ctp, lambda, tol).entries(), tol);
    c.witness.lambda = lambda;
    if (!c.feasible && summary.feasible) {
      summary.feasible = false;
      summary.witness = c.witness;
    }
    if (c.feasible && c.raw_sup > best) {
      best = c.raw_sup;
      if (summary.feasible)
        summary.witness = c.witness;
    }
    for (auto& entry : summary.per_radius)
      if (c.feasible && std::abs(entry.radius - std::abs(lambda)) <= 1e-12)
        entry.raw = std::max(entry.raw, c.raw_sup);
    out.entries.push_back({lambda, std::move(c)});
  }
  if (!summary.feasible) {
    summary.raw_sup = kInf;
    summary.constant = kInf;
    out.implied_harnack_bound = kInf;
    return out;
  }
  summary.raw_sup = std::max(0.0, best);
  finish(summary);
  out.implied_harnack_bound = std::sqrt(3.0) * summary.constant;
  return out;
}

HalperinResult halperin_constant(const Matrix& a, const TolerancePolicy& tol) {
  require_square_finite(a, "halperin_constant");
  const Matrix gap = identity(a.rows()) - a;
  const PencilResult p = generalized_rayleigh_sup(gap.adjoint() * gap, defect_squared(a), tol);
  return {p.feasible, p.supremum, p.witness};
}

double sharp_identity_residual(const Matrix& t, const Matrix& t_prime, double c, Complex lambda, const Vector& h) {
  require_pair(t, t_prime, "sharp_identity_residual");
  if (!(c >= 1.0))
    fail_invalid("sharp_identity_residual: c must be at least 1");
  if (h.size() != t.rows())
    fail_invalid("sharp_identity_residual: vector has the wrong dimension");
  const Matrix r = resolvent(t, lambda);
  const Vector z = r * ((identity(t.rows()) - lambda * t_prime) * h);
  const double weight = 1.0 / (1.0 - std::norm(lambda));
  const double lhs = (r * ((t - t_prime) * h)).squaredNorm() +
                     weight * (1.0 - 1.0 / (c * c)) * (z.squaredNorm() - (t * z).squaredNorm());
  const double rhs = (c * c - 1.0) * weight * (h.squaredNorm() - (t_prime * h).squaredNorm());
  return rhs - lhs;
}

MaximalityReport maximality_probe(const Matrix& u, const Matrix& t, const MaximalityOptions& options,
                                  const TolerancePolicy& tol) {
  require_pair(u, t, "maximality_probe");
  if (!is_unitary(u, tol))
    fail_invalid("maximality_probe: U is not unitary");
  if (options.radii.empty())
    fail_invalid("maximality_probe: at least one radius is required");

  MaximalityReport report;
  if ((u - t).cwiseAbs().maxCoeff() <= tol.atol) {
    report.equal_operators = true;
    return report;
  }

  const UnitaryEigen eig = unitary_eigen(u, tol);
  GridSpec grid;
  grid.radii = options.radii;
  grid.angles_per_radius = options.angles_per_radius;
  grid.include_zero = false;
  grid.extra_angles.assign(eig.angles.data(), eig.angles.data() + eig.angles.size());
  grid.validate();

  for (double r : options.radii) {
    const DominationCertificate c = harnack_constant_poisson(u, t, grid.restricted_to(r), tol);
    report.grid_constants.push_back({r, c.raw_sup});
  }

  std::vector<Vector> probes;
  const Eigen::Index dim = u.rows();
  for (Eigen::Index i = 0; i < dim; ++i) {
    probes.push_back(Vector::Unit(dim, i));
    probes.push_back(eig.vectors.col(i));
  }
  Rng rng(options.seed);
  for (int i = 0; i < options.random_vectors; ++i)
    probes.push_back(rng.unit_vector(dim));

  for (const Vector& h : probes) {
    const Vector y = (u - t) * h;
    if (y.norm() <= tol.atol)
      continue;
    const AtomicMeasure mu = spectral_atoms(u, y, tol);
    for (const Atom& atom : mu.atoms) {
      for (double eps : options.window_widths) {
        const double bound = std::sqrt(density_ratio(mu, atom.angle, eps) / h.squaredNorm());
        if (bound > report.density_lower_bound) {
          report.density_lower_bound = bound;
          report.best_window = eps;
          report.best_angle = atom.angle;
          report.best_vector = h;
        }
      }
    }
  }

  report.monotone = true;
  for (std::size_t i = 1; i < report.grid_constants.size(); ++i)
    if (!(report.grid_constants[i].raw > report.grid_constants[i - 1].raw))
      report.monotone = false;
  const double first = report.grid_constants.front().raw;
  const double last = report.grid_constants.back().raw;
  report.divergent = last > options.divergence_factor * first && report.density_lower_bound > last;
  return report;
}

} // namespace harnack
