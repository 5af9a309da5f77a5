#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "harnack/domination.hpp"

namespace harnack {

/// Families of (T, T') for which T is Harnack dominated by T' by construction.
enum class PairFamily {
  strict,          ///< two random contractions with norm < 1
  versus_zero,     ///< T random with norm < 1, T' = 0
  common_unitary,  ///< W (U + A) W*, W (U + A') W* with a shared unitary block U
  weighted_shift,  ///< weighted cyclic shifts T(a), T(a') with |a|, |a'| <= 0.6
};

const char* to_string(PairFamily family);

struct OperatorPair {
  Matrix t;
  Matrix t_prime;
  PairFamily family = PairFamily::strict;
  std::string description;
};

/// How the unitary block of a common_unitary pair is chosen.
enum class UnitaryBlock {
  any,          ///< chosen by the seed among the three below
  identity,     ///< U = I: the peripheral spectrum is {1}
  contains_one, ///< 1 is an eigenvalue, other eigenvalues are random
  generic,      ///< eigenangles uniform in [0.1, 2 pi - 0.1]
};

struct PairOptions {
  int max_dim = 12;
  UnitaryBlock unitary_block = UnitaryBlock::any;
};

OperatorPair generate_pair(PairFamily family, std::uint64_t seed, const PairOptions& options = {});

struct CertifiedPair {
  OperatorPair pair;
  DominationCertificate z;        ///< Z-domination implies Harnack domination
  DominationCertificate harnack;  ///< Poisson grid constant
  int attempts = 1;
};

/// Draws pairs from `families` (chosen by the seed) until one passes
/// certification: Z-feasible and a finite Poisson grid constant below `cap`.
/// Throws numerical-failure after 100 rejected draws.
CertifiedPair certified_pair(std::uint64_t seed, const std::vector<PairFamily>& families,
                             const PairOptions& options = {}, const GridSpec& grid = {},
                             double cap = 1e6, const TolerancePolicy& tol = {});

/// Unrelated random pair for infeasibility-path coverage: a random contraction
/// against a unitary.
OperatorPair unrelated_pair(std::uint64_t seed, int max_dim);

/// Stateless seed mixing (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

} // namespace harnack
