#pragma once

#include <cstdint>
#include <string>

#include "harnack/numerics.hpp"
#include "harnack/tolerance.hpp"
#include "harnack/types.hpp"

namespace harnack {

/// Dense square matrix with operator norm at most 1 + atol, checked on construction.
class ContractionMatrix {
public:
  ContractionMatrix(Matrix entries, std::string label, const TolerancePolicy& tol = {});

  [[nodiscard]] Eigen::Index dim() const { return entries_.rows(); }
  [[nodiscard]] const Matrix& entries() const { return entries_; }
  [[nodiscard]] const std::string& label() const { return label_; }

  ContractionMatrix relabeled(std::string label) const;

private:
  Matrix entries_;
  std::string label_;
};

// Unitary-input check: ||U*U - I|| <= rank_rtol * dim (and UU* for is_unitary).
bool is_unitary(const Matrix& u, const TolerancePolicy& tol);
bool is_isometry(const Matrix& t, const TolerancePolicy& tol);

ContractionMatrix random_contraction(Eigen::Index dim, std::uint64_t seed, double norm_cap,
                                     const TolerancePolicy& tol = {});
ContractionMatrix random_unitary(Eigen::Index dim, std::uint64_t seed, const TolerancePolicy& tol = {});

/// Unilateral shift of multiplicity `multiplicity` cut to n block coordinates (nilpotent).
ContractionMatrix truncated_shift(int n, int multiplicity, const TolerancePolicy& tol = {});

/// Permutation e_k -> e_{k+1 mod n}.
ContractionMatrix cyclic_shift(int n, const TolerancePolicy& tol = {});

/// T = U - (1 - alpha) U xi xi*. Then I - T*T = (1 - |alpha|^2) xi xi*.
ContractionMatrix rank_one_perturbed_unitary(const ContractionMatrix& u, const Vector& xi, Complex alpha,
                                             const TolerancePolicy& tol = {});

/// Cyclic shift whose edge leaving coordinate 0 carries the weight alpha.
ContractionMatrix weighted_cyclic_shift(int n, Complex alpha, const TolerancePolicy& tol = {});

/// (x_0, ..., x_{n-1}) -> (0, A x_0, x_1, ..., x_{n-2}) on E^n.
ContractionMatrix block_shift_perturbation(const ContractionMatrix& a, int n, const TolerancePolicy& tol = {});

/// (T - lambda I)(I - conj(lambda) T)^{-1}, |lambda| < 1.
ContractionMatrix mobius_transform(const ContractionMatrix& t, Complex lambda, const TolerancePolicy& tol = {});

ContractionMatrix direct_sum(const ContractionMatrix& a, const ContractionMatrix& b, const TolerancePolicy& tol = {});
ContractionMatrix adjoint(const ContractionMatrix& t, const TolerancePolicy& tol = {});
ContractionMatrix power(const ContractionMatrix& t, int k, const TolerancePolicy& tol = {});
ContractionMatrix scalar_multiple(const ContractionMatrix& t, Complex s, const TolerancePolicy& tol = {});

/// Defect operator (I - T*T)^{1/2}.
Matrix defect(const ContractionMatrix& t, const TolerancePolicy& tol = {});
/// I - T*T, the square of the defect operator.
Matrix defect_squared(const Matrix& t);

std::string format_complex(Complex z);

} // namespace harnack
