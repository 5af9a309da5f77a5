#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "harnack/classify.hpp"
#include "harnack/errors.hpp"
#include "harnack/pairs.hpp"
#include "test_util.hpp"

using namespace harnack;
using harnack::test::diag;
using harnack::test::max_abs;
using std::numbers::pi;

namespace {

double distance_to_set(Complex z, const std::vector<Complex>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (Complex w : set) best = std::min(best, std::abs(z - w));
  return best;
}

// V (W (+) C) V* with W a diagonal unitary block and C a strict contraction.
Matrix shifted_spectrum(const std::vector<Complex>& peripheral, int strict_dim, double cap, std::uint64_t seed) {
  const int p = static_cast<int>(peripheral.size());
  Matrix block = Matrix::Zero(p + strict_dim, p + strict_dim);
  for (int i = 0; i < p; ++i) block(i, i) = peripheral[i];
  if (strict_dim > 0) block.bottomRightCorner(strict_dim, strict_dim) = random_contraction(strict_dim, seed, cap).entries();
  const Matrix v = random_unitary(p + strict_dim, seed + 1).entries();
  return v * block * v.adjoint();
}

} // namespace

TEST_CASE("spectral_report examples") {
  const auto c = spectral_report(cyclic_shift(4).entries());
  CHECK(c.eigenvalues.size() == 4);
  CHECK(c.peripheral.size() == 4);
  CHECK(c.point_peripheral.size() == 4);
  CHECK(c.spectral_radius == doctest::Approx(1.0));
  for (Complex mu : {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)})
    CHECK(distance_to_set(mu, c.peripheral) < 1e-12);

  const auto s = spectral_report(truncated_shift(4, 1).entries());
  CHECK(s.spectral_radius < 1e-8);
  CHECK(s.peripheral.empty());

  CHECK(spectral_report(weighted_cyclic_shift(4, 0.5).entries()).spectral_radius ==
        doctest::Approx(std::pow(0.5, 0.25)).epsilon(1e-12));

  const auto m = spectral_report(diag({1.0, 0.5, Complex(0, -1)}));
  CHECK(m.peripheral.size() == 2);
  CHECK(m.spectral_radius == doctest::Approx(1.0));
}

TEST_CASE("peripheral_matching_distance") {
  CHECK(peripheral_matching_distance({}, {}) == 0.0);
  CHECK(peripheral_matching_distance({1.0}, {}) == std::numeric_limits<double>::infinity());
  const std::vector<Complex> a{1.0, Complex(0, 1), -1.0};
  const std::vector<Complex> b{-1.0, std::polar(1.0, 1e-7), Complex(0, 1)};
  CHECK(peripheral_matching_distance(a, b) == doctest::Approx(1e-7).epsilon(1e-6));
  // Points on either side of the branch cut at angle pi pair up.
  const std::vector<Complex> c{std::polar(1.0, pi - 1e-9), 1.0};
  const std::vector<Complex> d{std::polar(1.0, -pi + 1e-9), 1.0};
  CHECK(peripheral_matching_distance(c, d) < 1e-8);
}

TEST_CASE("classify examples") {
  const auto u = classify_contraction(random_unitary(5, 3).entries());
  CHECK(u.is_unitary);
  CHECK(u.is_isometry);
  CHECK(u.is_coisometry);
  CHECK(u.c_1dot);
  CHECK(u.c_dot1);
  CHECK(u.c_11);
  CHECK_FALSE(u.c_0dot);
  CHECK(u.unitary_part_dim == 5);
  CHECK_FALSE(u.completely_nonunitary);

  const auto s = classify_contraction(truncated_shift(4, 1).entries());
  CHECK(s.c_00);
  CHECK(s.c_0dot);
  CHECK(s.c_dot0);
  CHECK(s.completely_nonunitary);
  CHECK(s.unitary_part_dim == 0);
  CHECK_FALSE(s.is_isometry);

  const auto d = classify_contraction(diag({0.5, std::polar(1.0, pi / 3)}));
  CHECK(d.unitary_part_dim == 1);
  CHECK_FALSE(d.c_0dot);
  CHECK_FALSE(d.c_1dot);
  CHECK_FALSE(d.completely_nonunitary);

  const auto p = classify_contraction(diag({1.0, 0.0}));
  CHECK(p.is_projection);
  CHECK_FALSE(classify_contraction(diag({1.0, 0.5})).is_projection);
}

TEST_CASE("classification flag consistency") {
  for (int trial = 0; trial < 100; ++trial) {
    Matrix t;
    switch (trial % 4) {
      case 0: t = random_contraction(1 + trial % 7, 3000 + trial, 0.95).entries(); break;
      case 1: t = shifted_spectrum({std::polar(1.0, 0.1 * trial)}, 1 + trial % 5, 0.9, 3000 + trial); break;
      case 2: t = shifted_spectrum({1.0, -1.0}, trial % 4, 0.8, 3000 + trial); break;
      default: t = truncated_shift(1 + trial % 5, 1 + trial % 2).entries(); break;
    }
    const auto f = classify_contraction(t);
    const auto sr = spectral_report(t);
    CHECK(f.c_00 == (f.c_0dot && f.c_dot0));
    CHECK(f.c_11 == (f.c_1dot && f.c_dot1));
    CHECK(f.c_00 == (sr.spectral_radius < 1.0 - 1e-8));
    CHECK(f.completely_nonunitary == (f.unitary_part_dim == 0));
    if (f.is_unitary) CHECK(f.unitary_part_dim == t.rows());
    // In finite dimension the unitary part is spanned by peripheral eigenvectors.
    CHECK(f.unitary_part_dim == static_cast<Eigen::Index>(sr.peripheral.size()));
  }
}

TEST_CASE("unitary part and principal angles") {
  const Matrix t = shifted_spectrum({1.0, Complex(0, 1)}, 3, 0.9, 77);
  const Matrix basis = unitary_part_basis(t);
  REQUIRE(basis.cols() == 2);
  CHECK(max_abs(basis.adjoint() * basis - identity(2)) < 1e-10);
  // Reducing: T maps the subspace onto itself and T is unitary on it.
  const Matrix image = t * basis;
  CHECK(max_abs(image - basis * (basis.adjoint() * image)) < 1e-8);
  CHECK(max_abs(image.adjoint() * image - identity(2)) < 1e-8);

  const Matrix e = identity(3);
  CHECK(max_principal_angle(e.leftCols(2), e.leftCols(2)) < 1e-12);
  CHECK(max_principal_angle(e.col(0), e.col(1)) == doctest::Approx(pi / 2));
  CHECK(max_principal_angle(e.leftCols(2), e.leftCols(1)) == doctest::Approx(pi / 2));
  Matrix tilted(3, 1);
  tilted << std::cos(0.3), std::sin(0.3), 0.0;
  CHECK(max_principal_angle(e.col(0), tilted) == doctest::Approx(0.3));
}

TEST_CASE("kernel_range_report") {
  const auto t = random_contraction(3, 1, 0.9);
  const auto same = kernel_range_report(t.entries(), t.entries());
  CHECK(same.kernel_dim == same.kernel_dim_prime);
  CHECK(same.kernel_angle < 1e-12);
  CHECK(same.range_residual < 1e-12);

  const auto d = kernel_range_report(diag({1.0, 0.5}), diag({1.0, 0.0}));
  CHECK(d.kernel_dim == 1);
  CHECK(d.kernel_dim_prime == 1);
  CHECK(d.kernel_angle < 1e-12);
  CHECK(d.range_residual < 1e-12);
  CHECK(d.decomposition_residual < 1e-12);
  CHECK(d.decomposition_residual_prime < 1e-12);

  // Different kernels are reported through the angle.
  const auto k = kernel_range_report(diag({1.0, 0.5}), diag({0.5, 1.0}));
  CHECK(k.kernel_angle == doctest::Approx(pi / 2));
  CHECK(k.range_residual > 0.1);
}

TEST_CASE("kernel equality on certified pairs") {
  PairOptions opts;
  opts.unitary_block = UnitaryBlock::contains_one;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto cp = certified_pair(seed, {PairFamily::common_unitary}, opts);
    const auto r = kernel_range_report(cp.pair.t, cp.pair.t_prime);
    CHECK(r.kernel_dim >= 1);
    CHECK(r.kernel_dim == r.kernel_dim_prime);
    CHECK(r.kernel_angle <= 1e-8);
    CHECK(r.range_residual <= 1e-8);
  }
}

TEST_CASE("katznelson_tzafriri examples") {
  const auto id = katznelson_tzafriri(identity(2), 50, 1e-6);
  CHECK(id.trajectory.size() == 51);
  CHECK(max_abs(Eigen::Map<const RealVector>(id.trajectory.data(), 51).cast<Complex>()) == 0.0);
  CHECK(id.limit_verdict);
  CHECK(id.spectral_verdict);
  CHECK(id.agree());

  const auto neg = katznelson_tzafriri(diag({-1.0}), 50, 1e-6);
  for (double v : neg.trajectory) CHECK(v == doctest::Approx(2.0));
  CHECK_FALSE(neg.limit_verdict);
  CHECK_FALSE(neg.spectral_verdict);

  const auto half = katznelson_tzafriri(diag({1.0, 0.5}), 60, 1e-6);
  for (int n = 0; n <= 60; ++n) CHECK(half.trajectory[n] == doctest::Approx(std::pow(0.5, n + 1)).epsilon(1e-10));
  CHECK(half.limit_verdict);
  CHECK(half.spectral_verdict);

  CHECK_THROWS_AS(katznelson_tzafriri(identity(2), 0, 1e-6), Error);
}

TEST_CASE("katznelson_tzafriri verdicts agree") {
  for (int trial = 0; trial < 12; ++trial) {
    Matrix t;
    if (trial % 3 == 0)
      t = random_contraction(4, 40 + trial, 0.95).entries();
    else if (trial % 3 == 1)
      t = shifted_spectrum({1.0}, 3, 0.95, 40 + trial);
    else
      t = shifted_spectrum({1.0, std::polar(1.0, 0.5 + trial)}, 2, 0.9, 40 + trial);
    const auto r = katznelson_tzafriri(t, 2000, 1e-6);
    CHECK(r.agree());
    CHECK(r.spectral_verdict == (trial % 3 != 2));
  }
}

TEST_CASE("asymptotic_inequality_check") {
  const Matrix t = shifted_spectrum({1.0}, 3, 0.9, 5);
  const auto same = asymptotic_inequality_check(t, t, 1.0, 64, 1);
  CHECK(same.max_violation <= 1e-10);
  CHECK(same.kernel_inclusion_residual < 1e-8);
  CHECK(same.agreement_residual < 1e-8);
  CHECK(same.z_pencil_feasible);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto cp = certified_pair(seed, {PairFamily::common_unitary, PairFamily::strict});
    GridSpec g;
    g.radii = {0.3, 0.6, 0.9, 0.99, 0.999};
    g.angles_per_radius = 256;
    const auto h = harnack_constant_poisson(cp.pair.t, cp.pair.t_prime, g);
    const auto r = asymptotic_inequality_check(cp.pair.t, cp.pair.t_prime, h.constant, 128, seed);
    CHECK(r.max_violation <= 1e-8);
    CHECK(r.kernel_inclusion_residual <= 1e-8);
    CHECK(r.agreement_residual <= 1e-8);
    CHECK(r.z_pencil_feasible);
  }
  CHECK_THROWS_AS(asymptotic_inequality_check(t, identity(2), 1.0, 8, 1), Error);
}
