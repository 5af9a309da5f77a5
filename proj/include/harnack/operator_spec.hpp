#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harnack/operators.hpp"

namespace harnack {

enum class OperatorKind {
  dense,
  random,
  truncated_shift,
  cyclic_shift,
  rank_one_perturbed_unitary,
  weighted_cyclic_shift,
  block_shift_perturbation,
  direct_sum,
  mobius,
  adjoint,
  power,
  scalar_multiple,
};

const char* to_string(OperatorKind kind);
std::optional<OperatorKind> operator_kind_from_string(const std::string& name);

/// Declarative description of a contraction. Only the fields relevant to
/// `kind` are read; composite kinds keep their operands in `children`.
struct OperatorSpec {
  OperatorKind kind = OperatorKind::dense;

  Matrix entries;                 // dense
  int dim = 0;                    // random
  std::uint64_t seed = 0;         // random
  double norm_cap = 1.0;          // random
  int n = 0;                      // shifts, block_shift_perturbation
  int multiplicity = 1;           // truncated_shift
  Complex alpha{1.0, 0.0};        // rank-one perturbation, weighted shift
  std::optional<Vector> xi;       // rank-one perturbation; defaults to e_0
  Complex lambda{0.0, 0.0};       // mobius
  int k = 1;                      // power
  Complex scalar{1.0, 0.0};       // scalar_multiple
  std::vector<OperatorSpec> children;

  static OperatorSpec make_dense(Matrix entries);
  static OperatorSpec make_random(int dim, std::uint64_t seed, double norm_cap);
  static OperatorSpec make_truncated_shift(int n, int multiplicity);
  static OperatorSpec make_cyclic_shift(int n);
  static OperatorSpec make_rank_one_perturbed_unitary(OperatorSpec u, Complex alpha,
                                                      std::optional<Vector> xi = std::nullopt);
  static OperatorSpec make_weighted_cyclic_shift(int n, Complex alpha);
  static OperatorSpec make_block_shift_perturbation(OperatorSpec a, int n);
  static OperatorSpec make_direct_sum(std::vector<OperatorSpec> parts);
  static OperatorSpec make_mobius(OperatorSpec t, Complex lambda);
  static OperatorSpec make_adjoint(OperatorSpec t);
  static OperatorSpec make_power(OperatorSpec t, int k);
  static OperatorSpec make_scalar_multiple(OperatorSpec t, Complex s);
};

/// Structural equality over the fields that `kind` reads (recursively).
bool same_spec(const OperatorSpec& a, const OperatorSpec& b);

/// Builds and validates the contraction described by `spec`. Throws
/// not-a-contraction for norm violations and invalid-input for malformed parameters.
ContractionMatrix materialize(const OperatorSpec& spec, const TolerancePolicy& tol = {});

} // namespace harnack
