#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "harnack/domination.hpp"
#include "harnack/errors.hpp"
#include "harnack/pairs.hpp"
#include "test_util.hpp"

using namespace harnack;
using harnack::test::diag;
using harnack::test::max_abs;
using std::numbers::pi;

namespace {

ErrorKind error_kind(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::numerical_failure;
}

GridSpec grid_of(std::vector<double> radii, int angles = 64) {
  GridSpec g;
  g.radii = std::move(radii);
  g.angles_per_radius = angles;
  return g;
}

GridSpec refined() { return grid_of({0.3, 0.6, 0.9, 0.99, 0.999}, 256); }

// Dense sweep of the scalar kernel ratio K(a, l) / K(0, l) = K(a, l).
double scalar_sweep_sup(double a, double r_max) {
  double best = 1.0;
  for (int i = 1; i <= 2000; ++i) {
    const double r = r_max * i / 2000.0;
    for (int j = 0; j < 720; ++j) {
      const Complex l = std::polar(r, 2 * pi * j / 720.0);
      best = std::max(best, (1.0 - std::norm(l) * a * a) / std::norm(1.0 - std::conj(l) * a));
    }
  }
  return std::sqrt(best);
}

Matrix random_projection(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
  const Matrix q = random_unitary(dim, seed).entries().leftCols(rank);
  return q * q.adjoint();
}

std::vector<PairFamily> all_families() {
  return {PairFamily::strict, PairFamily::versus_zero, PairFamily::common_unitary, PairFamily::weighted_shift};
}

} // namespace

TEST_CASE("grid spec") {
  GridSpec g = grid_of({0.5, 0.9}, 8);
  g.extra_angles = {0.1};
  CHECK_NOTHROW(g.validate());
  const auto pts = g.points();
  REQUIRE(pts.size() == 1 + 2 * 9);
  CHECK(pts.front() == Complex(0.0));
  CHECK(std::abs(pts[1] - 0.5) < 1e-15);
  CHECK(std::abs(pts[9] - std::polar(0.5, 0.1)) < 1e-15);
  const GridSpec one = g.restricted_to(0.9);
  CHECK_FALSE(one.include_zero);
  CHECK(one.points().size() == 9);

  CHECK(error_kind([] { grid_of({}).validate(); }) == ErrorKind::invalid_input);
  CHECK(error_kind([] { grid_of({0.5, 1.0}).validate(); }) == ErrorKind::invalid_input);
  CHECK(error_kind([] { grid_of({0.9, 0.5}).validate(); }) == ErrorKind::invalid_input);
  CHECK(error_kind([] { grid_of({0.5}, 4).validate(); }) == ErrorKind::invalid_input);
}

TEST_CASE("reflexivity for every relation") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Matrix t = random_contraction(4, seed, 1.0).entries();
    const auto z = z_constant(t, t);
    CHECK(z.feasible);
    CHECK(z.constant == doctest::Approx(1.0));
    CHECK(z.raw_sup == doctest::Approx(1.0));
    const auto h = harnack_constant_poisson(t, t, grid_of({0.5, 0.9}));
    CHECK(h.feasible);
    CHECK(h.constant == doctest::Approx(1.0).epsilon(1e-9));
    const auto m = harnack_constant_moment(t, t, 8);
    CHECK(m.feasible);
    CHECK(m.constant == doctest::Approx(1.0).epsilon(1e-9));
    const auto r = resolvent_estimate_constant(t, t, grid_of({0.5, 0.9}));
    CHECK(r.feasible);
    CHECK(r.raw_sup == 0.0);
    CHECK(r.constant == 1.0);
    const auto p = mobius_z_profile(t, t, grid_of({0.5}, 8));
    for (const auto& e : p.entries) CHECK(e.certificate.constant == doctest::Approx(1.0));
    CHECK(p.implied_harnack_bound == doctest::Approx(std::sqrt(3.0)));
  }
}

TEST_CASE("z_constant examples") {
  const auto proj = z_constant(identity(2), diag({1.0, 0.0}));
  CHECK(proj.feasible);
  CHECK(proj.raw_sup == doctest::Approx(1.0));
  CHECK(proj.relation == Relation::z);

  const Matrix iso = cyclic_shift(4).entries();
  const auto bad = z_constant(0.9 * iso, iso);
  CHECK_FALSE(bad.feasible);
  CHECK(bad.raw_sup == std::numeric_limits<double>::infinity());
  // The witness refutes the inequality: D_T' w = 0 while (T' - T) w != 0.
  CHECK((defect_squared(iso) * bad.witness.vector).norm() < 1e-12);
  CHECK(((iso - 0.9 * iso) * bad.witness.vector).norm() > 0.05);

  // Scalars: D_T^2 = 1 - |t|^2 and the difference term is |t - t'|^2.
  const auto sc = z_constant(diag({0.5}), diag({0.2}));
  const double expected = std::max(0.75, 0.09) / 0.96;
  CHECK(sc.raw_sup == doctest::Approx(std::sqrt(expected)));
  CHECK(sc.constant == 1.0);

  CHECK(error_kind([] { z_constant(identity(2), identity(3)); }) == ErrorKind::invalid_input);
}

TEST_CASE("projections: z-feasible iff the second is below the first") {
  Rng rng(4);
  int feasible = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index dim = 2 + trial % 5;
    const Eigen::Index rank_p = 1 + static_cast<Eigen::Index>(rng.uniform_int(0, dim - 1));
    const Matrix p = random_projection(dim, rank_p, 10 + trial);
    Matrix q;
    if (trial % 2 == 0) {
      // Sub-projection of P: project onto a random subspace of range(P).
      const Matrix basis = random_unitary(dim, 10 + trial).entries().leftCols(rank_p);
      const Eigen::Index rank_q = static_cast<Eigen::Index>(rng.uniform_int(0, rank_p));
      const Matrix inner = random_unitary(rank_p, 500 + trial).entries().leftCols(rank_q);
      const Matrix w = basis * inner;
      q = w * w.adjoint();
    } else {
      q = random_projection(dim, 1 + static_cast<Eigen::Index>(rng.uniform_int(0, dim - 1)), 900 + trial);
    }
    const bool below = psd_check(p - q, {}).psd;
    const auto z = z_constant(p, q);
    CHECK(z.feasible == below);
    feasible += z.feasible ? 1 : 0;
  }
  CHECK(feasible >= 50);
}

TEST_CASE("positive contractions: z-feasibility is the defect pencil feasibility") {
  const TolerancePolicy tol;
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index dim = 2 + trial % 4;
    const Matrix v = random_unitary(dim, 70 + trial).entries();
    Rng rng(200 + trial);
    RealVector s(dim), sp(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      sp(i) = i == 0 ? 1.0 : rng.uniform(0.0, 0.95);
      s(i) = sp(i);
    }
    // Keep or break the shared unit eigenvalue.
    if (trial % 2) s(0) = 0.7;
    for (Eigen::Index i = 1; i < dim; ++i) s(i) = rng.uniform(0.0, 0.95);
    const Matrix a = v * s.cast<Complex>().asDiagonal() * v.adjoint();
    const Matrix ap = v * sp.cast<Complex>().asDiagonal() * v.adjoint();
    const auto pencil = generalized_rayleigh_sup(identity(dim) - a * a, identity(dim) - ap * ap, tol);
    const auto z = z_constant(a, ap, tol);
    CHECK(z.feasible == pencil.feasible);
    CHECK(z.feasible == (trial % 2 == 0));
  }
}

TEST_CASE("scalar Harnack constant against a dense lambda sweep") {
  const auto cert = harnack_constant_poisson(diag({0.5}), diag({0.0}), grid_of({0.3, 0.9, 0.999}, 128));
  CHECK(cert.feasible);
  CHECK(cert.relation == Relation::harnack_poisson);
  CHECK(cert.constant == doctest::Approx(std::sqrt(3.0)).epsilon(0.02));
  CHECK(cert.constant == doctest::Approx(scalar_sweep_sup(0.5, 0.999)).epsilon(1e-6));
  REQUIRE(cert.witness.lambda.has_value());
  CHECK(std::abs(*cert.witness.lambda - 0.999) < 1e-12);
  REQUIRE(cert.per_radius.size() == 4);
  CHECK(cert.per_radius[0].radius == 0.0);
  CHECK(cert.per_radius[0].raw == doctest::Approx(1.0));
  // (1 + a r) / (1 - a r) for the real positive lambda = r.
  CHECK(cert.per_radius[2].raw == doctest::Approx(std::sqrt(1.45 / 0.55)));
}

TEST_CASE("moment constant increases towards the scalar value") {
  double previous = 0.0;
  for (int n : {1, 2, 8, 32, 64}) {
    const auto m = harnack_constant_moment(diag({0.5}), diag({0.0}), n);
    CHECK(m.feasible);
    CHECK(m.raw_sup >= previous - 1e-12);
    CHECK(m.raw_sup <= std::sqrt(3.0) + 1e-9);
    previous = m.raw_sup;
    if (n == 1) CHECK(m.constant == doctest::Approx(1.0));
  }
  CHECK(previous == doctest::Approx(std::sqrt(3.0)).epsilon(0.01));
  const auto m = harnack_constant_moment(diag({0.5}), diag({0.0}), 64);
  REQUIRE(m.block_order_max.has_value());
  CHECK(*m.block_order_max == 64);
  CHECK(error_kind([] { harnack_constant_moment(diag({0.5}), diag({0.0}), 0); }) == ErrorKind::invalid_input);
}

TEST_CASE("grid refinement never decreases the Poisson constant") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto cp = certified_pair(seed, all_families());
    double previous = 0.0;
    for (const GridSpec& g : {grid_of({0.3}, 8), grid_of({0.3, 0.6}, 16), grid_of({0.3, 0.6, 0.9}, 32),
                              grid_of({0.3, 0.6, 0.9, 0.99}, 64), grid_of({0.3, 0.6, 0.9, 0.99}, 128)}) {
      const auto c = harnack_constant_poisson(cp.pair.t, cp.pair.t_prime, g);
      CHECK(c.raw_sup >= previous * (1.0 - 1e-12));
      previous = c.raw_sup;
    }
  }
}

TEST_CASE("Poisson and moment criteria agree on certified pairs") {
  const std::vector<PairFamily> families{PairFamily::strict, PairFamily::versus_zero, PairFamily::common_unitary};
  for (std::uint64_t seed = 11; seed <= 16; ++seed) {
    const auto cp = certified_pair(seed, families);
    const auto poisson = harnack_constant_poisson(cp.pair.t, cp.pair.t_prime);
    const auto moment = harnack_constant_moment(cp.pair.t, cp.pair.t_prime, 32);
    CHECK(moment.constant == doctest::Approx(poisson.constant).epsilon(0.05));
  }
}

TEST_CASE("maximality: Poisson constants of a unitary grow with the radius") {
  const Matrix u = cyclic_shift(4).entries();
  const Vector e0 = Vector::Unit(4, 0);
  const Matrix t = rank_one_perturbed_unitary(cyclic_shift(4), e0, 0.0).entries();
  double previous = 0.0;
  for (double r : {0.9, 0.99, 0.999}) {
    GridSpec g = grid_of({r}, 128);
    g.include_zero = false;
    const auto c = harnack_constant_poisson(u, t, g);
    CHECK(c.feasible);
    CHECK(c.raw_sup > 2.0 * previous);
    previous = c.raw_sup;
  }
}

TEST_CASE("ordering and structural properties of the Harnack constant") {
  for (std::uint64_t seed = 21; seed <= 26; ++seed) {
    const auto cp = certified_pair(seed, all_families());
    const Matrix& t = cp.pair.t;
    const Matrix& tp = cp.pair.t_prime;
    const auto h = harnack_constant_poisson(t, tp, refined());
    REQUIRE(h.feasible);

    // Z constant is at most the Harnack constant.
    CHECK(z_constant(t, tp).raw_sup <= h.raw_sup * (1.0 + 1e-6));

    // Adjoints: K(T*, l) = K(T, conj l) and the grid is symmetric under conjugation.
    const auto ha = harnack_constant_poisson(t.adjoint(), tp.adjoint(), refined());
    CHECK(ha.raw_sup == doctest::Approx(h.raw_sup).epsilon(1e-8));

    // Direct sums take the larger component constant.
    const auto other = certified_pair(seed + 100, all_families());
    const auto ho = harnack_constant_poisson(other.pair.t, other.pair.t_prime, refined());
    const ContractionMatrix s1(t, "t"), s2(other.pair.t, "o"), p1(tp, "tp"), p2(other.pair.t_prime, "op");
    const auto hs = harnack_constant_poisson(direct_sum(s1, s2).entries(), direct_sum(p1, p2).entries(), refined());
    CHECK(hs.raw_sup == doctest::Approx(std::max(h.raw_sup, ho.raw_sup)).epsilon(1e-8));

    // Powers are dominated with no larger constant. lambda^(1/n) for |lambda| <= 0.99
    // stays inside radius 0.999 for n <= 4, so the refined constant covers them.
    Matrix tn = t, tpn = tp;
    for (int n = 2; n <= 4; ++n) {
      tn = tn * t;
      tpn = tpn * tp;
      const auto hn = harnack_constant_poisson(tn, tpn);
      CHECK(hn.feasible);
      CHECK(hn.constant <= h.constant * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("infeasible Harnack pairs carry a refuting witness") {
  const Matrix iso = cyclic_shift(3).entries();
  const Matrix t = 0.5 * iso;
  const auto c = harnack_constant_poisson(t, iso, grid_of({0.5}));
  if (!c.feasible) {
    REQUIRE(c.witness.lambda.has_value());
    const Matrix kp = poisson_kernel(iso, *c.witness.lambda);
    const Matrix k = poisson_kernel(t, *c.witness.lambda);
    const Vector& w = c.witness.vector;
    CHECK(test::quadratic_form(k, w) > 1e-6);
    CHECK(test::quadratic_form(kp, w) < 1e-8 * operator_norm(kp));
  }
  // A unitary against a strict contraction: K(U, l) is invertible, so this pair
  // is feasible on every grid, but a strict contraction against a unitary with a
  // different spectrum is refuted by the kernel of the defect.
  const auto z = z_constant(t, iso);
  CHECK_FALSE(z.feasible);
}

TEST_CASE("resolvent estimate") {
  for (std::uint64_t seed = 31; seed <= 35; ++seed) {
    const auto cp = certified_pair(seed, all_families());
    const GridSpec g = grid_of({0.3, 0.6, 0.9, 0.99}, 64);
    const auto r = resolvent_estimate_constant(cp.pair.t, cp.pair.t_prime, g);
    const auto h = harnack_constant_poisson(cp.pair.t, cp.pair.t_prime, refined());
    CHECK(r.feasible);
    CHECK(r.relation == Relation::resolvent);
    CHECK(r.raw_sup <= h.raw_sup * h.raw_sup * (1.0 + 1e-6));
  }

  // Truncated shift against the block perturbation with A = diag(0.5): the
  // constant is the Halperin constant (1 - a)/(1 + a) = 1/3, attained at 0.
  const auto s = truncated_shift(4, 1);
  const auto sa = block_shift_perturbation(ContractionMatrix(diag({0.5}), "A"), 4);
  const auto r = resolvent_estimate_constant(s.entries(), sa.entries(), grid_of({0.3, 0.6, 0.9, 0.99}, 64));
  CHECK(r.feasible);
  CHECK(r.raw_sup == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  // A norm-one A with spectrum in the disc makes it infeasible.
  Matrix jordan = Matrix::Zero(2, 2);
  jordan(0, 1) = 1.0;
  const auto sj = block_shift_perturbation(ContractionMatrix(jordan, "J"), 4);
  const auto r2 = resolvent_estimate_constant(truncated_shift(4, 2).entries(), sj.entries(), grid_of({0.5}, 8));
  CHECK_FALSE(r2.feasible);
}

TEST_CASE("Moebius z-profile") {
  for (std::uint64_t seed = 41; seed <= 44; ++seed) {
    const auto cp = certified_pair(seed, all_families());
    const auto profile = mobius_z_profile(cp.pair.t, cp.pair.t_prime);
    const auto h = harnack_constant_poisson(cp.pair.t, cp.pair.t_prime, refined());
    REQUIRE(profile.summary.feasible);
    CHECK(profile.entries.size() == GridSpec{}.points().size());
    for (const auto& e : profile.entries) CHECK(e.certificate.raw_sup <= h.raw_sup * (1.0 + 1e-6));
    // Sandwich: profile sup <= c_H <= sqrt(3) profile sup.
    CHECK(profile.summary.constant <= h.constant * (1.0 + 1e-6));
    CHECK(h.constant <= profile.implied_harnack_bound * (1.0 + 1e-6));
    CHECK(profile.implied_harnack_bound == doctest::Approx(std::sqrt(3.0) * profile.summary.constant));
  }
}

TEST_CASE("Moebius z-profile of the weighted shift family matches the closed form") {
  // For T(a') against T(a): sqrt(max(1 - |a'|^2, |a - a'|^2) / (1 - |a|^2)),
  // independent of lambda up to wraparound terms of order |lambda|^n.
  const int n = 24;
  const GridSpec g = grid_of({0.3, 0.6}, 32);
  const Complex alphas[] = {0.0, 0.3, Complex(0.0, 0.6)};
  for (Complex a : alphas) {
    for (Complex ap : alphas) {
      if (a == ap) continue;
      const auto p = mobius_z_profile(weighted_cyclic_shift(n, ap).entries(), weighted_cyclic_shift(n, a).entries(), g);
      const double closed = std::sqrt(std::max(1.0 - std::norm(ap), std::norm(a - ap)) / (1.0 - std::norm(a)));
      CHECK(p.summary.feasible);
      CHECK(p.summary.raw_sup == doctest::Approx(closed).epsilon(0.05));
    }
  }
}

TEST_CASE("halperin_constant") {
  const auto zero = halperin_constant(diag({0.0, 0.0}));
  CHECK(zero.feasible);
  CHECK(zero.constant == doctest::Approx(1.0));
  for (double a : {0.0, 0.2, 0.5, 0.9}) {
    const auto h = halperin_constant(diag({a}));
    CHECK(h.feasible);
    CHECK(h.constant == doctest::Approx((1.0 - a) / (1.0 + a)).epsilon(1e-10));
  }
  CHECK(halperin_constant(diag({0.2, 0.5})).constant == doctest::Approx(0.8 / 1.2).epsilon(1e-10));
  Matrix jordan = Matrix::Zero(2, 2);
  jordan(0, 1) = 1.0;
  CHECK_FALSE(halperin_constant(jordan).feasible);
  CHECK(halperin_constant(identity(2)).feasible);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix a = random_contraction(3, seed, 0.9).entries();
    const auto h = halperin_constant(a);
    const auto z = z_constant(identity(3), a);
    CHECK(h.feasible == z.feasible);
    CHECK(h.constant == doctest::Approx(z.raw_sup * z.raw_sup).epsilon(1e-9));
  }
}

TEST_CASE("sharp identity residual") {
  Rng rng(8);
  const Matrix t = random_contraction(3, 2, 1.0).entries();
  for (int i = 0; i < 10; ++i) {
    const Complex l = std::polar(0.9 * rng.uniform(), rng.uniform(0.0, 2 * pi));
    CHECK(std::abs(sharp_identity_residual(t, t, 1.0, l, rng.unit_vector(3))) < 1e-12);
  }

  // T = diag(0.5) against 0 has exact constant sqrt(3): the residual is
  // nonnegative everywhere and turns negative below sqrt(3) near lambda = 1.
  const Matrix a = diag({0.5});
  const Matrix zero = diag({0.0});
  const Vector h = test::scalar(1.0).col(0);
  for (int i = 0; i < 200; ++i) {
    const Complex l = std::polar(0.999 * std::sqrt(rng.uniform()), rng.uniform(0.0, 2 * pi));
    CHECK(sharp_identity_residual(a, zero, std::sqrt(3.0), l, h) >= -1e-10);
  }
  CHECK(sharp_identity_residual(a, zero, 1.5, 0.99, h) < 0.0);
  CHECK(error_kind([&] { sharp_identity_residual(a, zero, 0.5, 0.3, h); }) == ErrorKind::invalid_input);

  // At a grid point the certified grid constant makes the residual nonnegative.
  const auto cp = certified_pair(3, all_families());
  const auto c = harnack_constant_poisson(cp.pair.t, cp.pair.t_prime);
  REQUIRE(c.witness.lambda.has_value());
  const Complex l = *c.witness.lambda;
  const double scale = c.constant * c.constant / (1.0 - std::norm(l));
  for (int i = 0; i < 50; ++i) {
    const Vector v = rng.unit_vector(cp.pair.t.rows());
    CHECK(sharp_identity_residual(cp.pair.t, cp.pair.t_prime, c.constant, l, v) >= -1e-8 * scale);
  }
  // The residual is a Hermitian form in h; below the constant it takes a
  // negative value, found through the least eigenvalue of the polarized form.
  if (c.constant > 1.0 + 1e-3) {
    const double below = 1.0 + 0.5 * (c.constant - 1.0);
    const Eigen::Index dim = cp.pair.t.rows();
    auto q = [&](const Vector& v) { return sharp_identity_residual(cp.pair.t, cp.pair.t_prime, below, l, v); };
    Matrix form(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Vector ei = Vector::Unit(dim, i);
      form(i, i) = q(ei);
      for (Eigen::Index j = 0; j < i; ++j) {
        const Vector ej = Vector::Unit(dim, j);
        const double re = (q(ei + ej) - q(ei) - q(ej)) / 2.0;
        const double im = (q(ei + Complex(0, 1) * ej) - q(ei) - q(ej)) / 2.0;
        form(j, i) = Complex(re, im);
        form(i, j) = std::conj(form(j, i));
      }
    }
    CHECK(psd_check(form, {}).min_eigenvalue < -1e-6 * scale);
  }
}

TEST_CASE("maximality_probe") {
  const Matrix u = cyclic_shift(8).entries();
  const auto same = maximality_probe(u, u);
  CHECK(same.equal_operators);

  const Matrix t = rank_one_perturbed_unitary(cyclic_shift(8), Vector::Unit(8, 0), 0.5).entries();
  MaximalityOptions opts;
  opts.radii = {0.9, 0.99, 0.999};
  const auto rep = maximality_probe(u, t, opts);
  CHECK_FALSE(rep.equal_operators);
  REQUIRE(rep.grid_constants.size() == 3);
  CHECK(rep.monotone);
  CHECK(rep.density_lower_bound > rep.grid_constants.back().raw);
  CHECK(rep.best_window == doctest::Approx(1e-8));
  // The constants grow like (1 - r)^(-1/2), so the tenfold threshold needs the
  // default radii, which reach 0.9999.
  const auto full = maximality_probe(u, t);
  CHECK(full.monotone);
  CHECK(full.divergent);

  // T agrees with U on one coordinate and is a strict contraction on the other.
  const Matrix d = diag({1.0, -1.0});
  const Matrix td = diag({1.0, 0.0});
  const auto rd = maximality_probe(d, td, opts);
  CHECK(rd.divergent);

  CHECK(error_kind([&] { maximality_probe(diag({1.0, 0.5}), td, opts); }) == ErrorKind::invalid_input);
}
