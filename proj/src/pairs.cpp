#include "harnack/pairs.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "harnack/errors.hpp"
#include "harnack/random.hpp"

namespace harnack {

namespace {

Complex disc_point(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return std::polar(r, th);
}

Matrix unitary_block(Eigen::Index dim, UnitaryBlock kind, Rng& rng) {
  if (kind == UnitaryBlock::identity)
    return identity(dim);
  Vector phases(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    phases(i) = std::polar(1.0, rng.uniform(0.1, 2.0 * std::numbers::pi - 0.1));
  if (kind == UnitaryBlock::contains_one)
    phases(0) = 1.0;
  const Matrix v = haar_unitary(dim, rng);
  return v * phases.asDiagonal() * v.adjoint();
}

const char* to_string(UnitaryBlock kind) {
  switch (kind) {
  case UnitaryBlock::any: return "any";
  case UnitaryBlock::identity: return "identity";
  case UnitaryBlock::contains_one: return "contains_one";
  case UnitaryBlock::generic: return "generic";
  }
  return "unknown";
}

} // namespace

const char* to_string(PairFamily family) {
  switch (family) {
  case PairFamily::strict: return "strict";
  case PairFamily::versus_zero: return "versus_zero";
  case PairFamily::common_unitary: return "common_unitary";
  case PairFamily::weighted_shift: return "weighted_shift";
  }
  return "unknown";
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

OperatorPair generate_pair(PairFamily family, std::uint64_t seed, const PairOptions& options) {
  if (options.max_dim < 2)
    fail_invalid("generate_pair: max_dim must be at least 2");
  Rng rng(seed);
  OperatorPair out;
  out.family = family;
  std::ostringstream desc;
  desc << to_string(family) << "(seed=" << seed;

  switch (family) {
  case PairFamily::strict: {
    const auto d = static_cast<int>(rng.uniform_int(1, options.max_dim));
    const double cap = rng.uniform(0.3, 0.8);
    const double cap_prime = rng.uniform(0.3, 0.8);
    out.t = random_contraction(d, rng.next_seed(), cap).entries();
    out.t_prime = random_contraction(d, rng.next_seed(), cap_prime).entries();
    desc << ",dim=" << d;
    break;
  }
  case PairFamily::versus_zero: {
    const auto d = static_cast<int>(rng.uniform_int(1, options.max_dim));
    out.t = random_contraction(d, rng.next_seed(), rng.uniform(0.3, 0.8)).entries();
    out.t_prime = Matrix::Zero(d, d);
    desc << ",dim=" << d;
    break;
  }
  case PairFamily::common_unitary: {
    const auto d = static_cast<int>(rng.uniform_int(2, options.max_dim));
    const auto u = static_cast<int>(rng.uniform_int(1, d - 1));
    UnitaryBlock kind = options.unitary_block;
    if (kind == UnitaryBlock::any) {
      const auto pick = rng.uniform_int(0, 2);
      kind = pick == 0 ? UnitaryBlock::identity : pick == 1 ? UnitaryBlock::contains_one : UnitaryBlock::generic;
    }
    const Matrix ublock = unitary_block(u, kind, rng);
    const Matrix a = random_contraction(d - u, rng.next_seed(), rng.uniform(0.3, 0.8)).entries();
    const Matrix a_prime = random_contraction(d - u, rng.next_seed(), rng.uniform(0.3, 0.8)).entries();
    const Matrix w = haar_unitary(d, rng);
    Matrix t = Matrix::Zero(d, d);
    Matrix tp = Matrix::Zero(d, d);
    t.topLeftCorner(u, u) = ublock;
    tp.topLeftCorner(u, u) = ublock;
    t.bottomRightCorner(d - u, d - u) = a;
    tp.bottomRightCorner(d - u, d - u) = a_prime;
    out.t = w * t * w.adjoint();
    out.t_prime = w * tp * w.adjoint();
    desc << ",dim=" << d << ",unitary_dim=" << u << ",block=" << to_string(kind);
    break;
  }
  case PairFamily::weighted_shift: {
    const auto n = static_cast<int>(rng.uniform_int(3, std::min(options.max_dim, 12)));
    const Complex a = disc_point(rng, 0.6);
    const Complex ap = disc_point(rng, 0.6);
    out.t = weighted_cyclic_shift(n, a).entries();
    out.t_prime = weighted_cyclic_shift(n, ap).entries();
    desc << ",n=" << n << ",alpha=" << format_complex(a) << ",alpha'=" << format_complex(ap);
    break;
  }
  }
  desc << ")";
  out.description = desc.str();
  return out;
}

CertifiedPair certified_pair(std::uint64_t seed, const std::vector<PairFamily>& families, const PairOptions& options,
                             const GridSpec& grid, double cap, const TolerancePolicy& tol) {
  if (families.empty())
    fail_invalid("certified_pair: no families given");
  for (int attempt = 0; attempt < 100; ++attempt) {
    const std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(attempt));
    const PairFamily family = families[s % families.size()];
    CertifiedPair c;
    c.pair = generate_pair(family, s, options);
    c.z = z_constant(c.pair.t, c.pair.t_prime, tol);
    if (!c.z.feasible)
      continue;
    c.harnack = harnack_constant_poisson(c.pair.t, c.pair.t_prime, grid, tol);
    if (!c.harnack.feasible || !(c.harnack.constant <= cap))
      continue;
    c.attempts = attempt + 1;
    return c;
  }
  fail_numerical("certified_pair: no certified pair after 100 draws");
}

OperatorPair unrelated_pair(std::uint64_t seed, int max_dim) {
  Rng rng(seed);
  const auto d = static_cast<int>(rng.uniform_int(2, std::max(2, max_dim)));
  OperatorPair out;
  out.family = PairFamily::strict;
  out.t = random_contraction(d, rng.next_seed(), 1.0).entries();
  out.t_prime = random_unitary(d, rng.next_seed()).entries();
  out.description = "unrelated(seed=" + std::to_string(seed) + ",dim=" + std::to_string(d) + ")";
  return out;
}

} // namespace harnack
