#include "harnack/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "harnack/errors.hpp"

namespace harnack {

namespace {

std::string num(double x) {
  if (!std::isfinite(x))
    return x > 0 ? "inf" : "nan";
  // Shortest representation that reads back to the same double.
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Running max of the per-radius values (the zero point, listed first, joins
// the first band). An infeasible certificate has no finite columns.
std::vector<double> cumulative(const DominationCertificate& cert, const GridSpec& grid) {
  std::vector<double> out;
  if (!cert.feasible)
    return std::vector<double>(grid.radii.size(), std::numeric_limits<double>::infinity());
  double acc = 0.0;
  for (const auto& entry : cert.per_radius) {
    acc = std::max(acc, entry.raw);
    if (entry.radius > 0.0)
      out.push_back(acc);
  }
  return out;
}

} // namespace

const std::vector<std::string>& sweep_families() {
  static const std::vector<std::string> names{"t-alpha-family", "scalar", "halperin-diag"};
  return names;
}

std::string run_sweep_csv(const SweepSpec& spec, const TolerancePolicy& tol) {
  tol.validate();
  spec.grid.validate();
  if (spec.values.empty())
    fail_invalid("sweep: no parameter values");
  const auto& fams = sweep_families();
  if (std::find(fams.begin(), fams.end(), spec.family) == fams.end())
    fail_invalid("unknown sweep family '" + spec.family + "'");

  std::ostringstream out;
  if (spec.family == "t-alpha-family")
    out << "family,n,alpha,alpha_ref_re,alpha_ref_im,relation";
  else if (spec.family == "scalar")
    out << "family,a,relation,closed_form";
  else
    out << "family,n,a,relation,closed_form";
  for (double r : spec.grid.radii)
    out << ",c_r" << num(r);
  out << "\n";

  for (double v : spec.values) {
    DominationCertificate cert;
    if (spec.family == "t-alpha-family") {
      const Matrix t = weighted_cyclic_shift(spec.n, v, tol).entries();
      const Matrix tp = weighted_cyclic_shift(spec.n, spec.reference, tol).entries();
      cert = harnack_constant_poisson(t, tp, spec.grid, tol);
      out << spec.family << "," << spec.n << "," << num(v) << "," << num(spec.reference.real()) << ","
          << num(spec.reference.imag()) << ",harnack_poisson";
    } else if (spec.family == "scalar") {
      if (!(std::abs(v) < 1.0))
        fail_invalid("sweep scalar: |a| must be below 1");
      Matrix t(1, 1);
      t(0, 0) = v;
      cert = harnack_constant_poisson(t, Matrix::Zero(1, 1), spec.grid, tol);
      out << spec.family << "," << num(v) << ",harnack_poisson," << num(std::sqrt((1.0 + std::abs(v)) / (1.0 - std::abs(v))));
    } else {
      if (!(v >= 0.0 && v <= 1.0))
        fail_invalid("sweep halperin-diag: a must lie in [0, 1]");
      Matrix a(1, 1);
      a(0, 0) = v;
      const Matrix s = truncated_shift(spec.n, 1, tol).entries();
      const Matrix sa = block_shift_perturbation(ContractionMatrix(a, "A", tol), spec.n, tol).entries();
      cert = resolvent_estimate_constant(s, sa, spec.grid, tol);
      const double closed = v < 1.0 ? (1.0 - v) / (1.0 + v) : 0.0;
      out << spec.family << "," << spec.n << "," << num(v) << ",resolvent," << num(closed);
    }
    for (double c : cumulative(cert, spec.grid))
      out << "," << num(c);
    out << "\n";
  }
  return out.str();
}

} // namespace harnack
