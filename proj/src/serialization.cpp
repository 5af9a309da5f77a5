#include "harnack/serialization.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "harnack/errors.hpp"

namespace harnack {

namespace {

const Json& require_field(const Json& obj, const char* key, const std::string& what) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail_invalid(what + ": missing field '" + key + "'");
  return *it;
}

void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& what) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      fail_invalid(what + ": unknown field '" + it.key() + "'");
}

double real_from_json(const Json& j, const std::string& what) {
  if (!j.is_number())
    fail_invalid(what + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x))
    fail_invalid(what + ": non-finite number");
  return x;
}

int int_from_json(const Json& j, const std::string& what) {
  if (!j.is_number_integer())
    fail_invalid(what + ": expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    fail_invalid(what + ": integer out of range");
  return static_cast<int>(v);
}

std::uint64_t seed_from_json(const Json& j, const std::string& what) {
  if (j.is_number_unsigned())
    return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail_invalid(what + ": expected a nonnegative integer");
}

const std::set<std::string>& params_for(OperatorKind kind) {
  static const std::set<std::string> none;
  static const std::set<std::string> random{"dim", "seed", "norm_cap"};
  static const std::set<std::string> truncated{"n", "multiplicity"};
  static const std::set<std::string> cyclic{"n"};
  static const std::set<std::string> rank_one{"U", "alpha", "xi"};
  static const std::set<std::string> weighted{"n", "alpha"};
  static const std::set<std::string> block{"A", "n"};
  static const std::set<std::string> sum{"operands"};
  static const std::set<std::string> mobius{"T", "lambda"};
  static const std::set<std::string> adj{"T"};
  static const std::set<std::string> pow{"T", "k"};
  static const std::set<std::string> scalar{"T", "scalar"};
  switch (kind) {
  case OperatorKind::dense: return none;
  case OperatorKind::random: return random;
  case OperatorKind::truncated_shift: return truncated;
  case OperatorKind::cyclic_shift: return cyclic;
  case OperatorKind::rank_one_perturbed_unitary: return rank_one;
  case OperatorKind::weighted_cyclic_shift: return weighted;
  case OperatorKind::block_shift_perturbation: return block;
  case OperatorKind::direct_sum: return sum;
  case OperatorKind::mobius: return mobius;
  case OperatorKind::adjoint: return adj;
  case OperatorKind::power: return pow;
  case OperatorKind::scalar_multiple: return scalar;
  }
  return none;
}

} // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& what) {
  if (j.is_number())
    return {real_from_json(j, what), 0.0};
  if (!j.is_array() || j.size() != 2)
    fail_invalid(what + ": expected [re, im]");
  return {real_from_json(j[0], what), real_from_json(j[1], what)};
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    fail_invalid(what + ": expected a nonempty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty())
    fail_invalid(what + ": expected rows as lists");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      fail_invalid(what + ": ragged rows");
    for (Eigen::Index k = 0; k < cols; ++k)
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], what);
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    fail_invalid(what + ": expected a nonempty list");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], what);
  return v;
}

Json real_to_json(double x) {
  if (!std::isfinite(x))
    return nullptr;
  return x;
}

Json spec_to_json(const OperatorSpec& spec) {
  Json out;
  out["kind"] = to_string(spec.kind);
  if (spec.kind == OperatorKind::dense) {
    out["entries"] = matrix_to_json(spec.entries);
    return out;
  }
  Json p = Json::object();
  switch (spec.kind) {
  case OperatorKind::dense:
    break;
  case OperatorKind::random:
    p["dim"] = spec.dim;
    p["seed"] = spec.seed;
    p["norm_cap"] = spec.norm_cap;
    break;
  case OperatorKind::truncated_shift:
    p["n"] = spec.n;
    p["multiplicity"] = spec.multiplicity;
    break;
  case OperatorKind::cyclic_shift:
    p["n"] = spec.n;
    break;
  case OperatorKind::rank_one_perturbed_unitary:
    p["U"] = spec_to_json(spec.children.at(0));
    p["alpha"] = complex_to_json(spec.alpha);
    if (spec.xi)
      p["xi"] = vector_to_json(*spec.xi);
    break;
  case OperatorKind::weighted_cyclic_shift:
    p["n"] = spec.n;
    p["alpha"] = complex_to_json(spec.alpha);
    break;
  case OperatorKind::block_shift_perturbation:
    p["A"] = spec_to_json(spec.children.at(0));
    p["n"] = spec.n;
    break;
  case OperatorKind::direct_sum: {
    Json ops = Json::array();
    for (const auto& c : spec.children)
      ops.push_back(spec_to_json(c));
    p["operands"] = std::move(ops);
    break;
  }
  case OperatorKind::mobius:
    p["T"] = spec_to_json(spec.children.at(0));
    p["lambda"] = complex_to_json(spec.lambda);
    break;
  case OperatorKind::adjoint:
    p["T"] = spec_to_json(spec.children.at(0));
    break;
  case OperatorKind::power:
    p["T"] = spec_to_json(spec.children.at(0));
    p["k"] = spec.k;
    break;
  case OperatorKind::scalar_multiple:
    p["T"] = spec_to_json(spec.children.at(0));
    p["scalar"] = complex_to_json(spec.scalar);
    break;
  }
  out["params"] = std::move(p);
  return out;
}

OperatorSpec spec_from_json(const Json& j) {
  if (!j.is_object())
    fail_invalid("operator spec: expected an object");
  const Json& kind_json = require_field(j, "kind", "operator spec");
  if (!kind_json.is_string())
    fail_invalid("operator spec: 'kind' must be a string");
  const auto kind = operator_kind_from_string(kind_json.get<std::string>());
  if (!kind)
    fail_invalid("operator spec: unknown kind '" + kind_json.get<std::string>() + "'");
  const std::string what = std::string(to_string(*kind));

  if (*kind == OperatorKind::dense) {
    reject_unknown_keys(j, {"kind", "entries", "params", "label", "dim"}, what);
    const Json* entries = nullptr;
    if (j.contains("entries"))
      entries = &j["entries"];
    else if (j.contains("params") && j["params"].is_object() && j["params"].contains("entries"))
      entries = &j["params"]["entries"];
    if (!entries)
      fail_invalid("dense: missing field 'entries'");
    OperatorSpec s = OperatorSpec::make_dense(matrix_from_json(*entries, "dense.entries"));
    if (s.entries.rows() != s.entries.cols())
      fail_invalid("dense: entries must be square");
    if (j.contains("dim") && int_from_json(j["dim"], "dense.dim") != s.entries.rows())
      fail_invalid("dense: 'dim' disagrees with entries");
    return s;
  }

  reject_unknown_keys(j, {"kind", "params", "label"}, what);
  const Json& p = require_field(j, "params", what);
  if (!p.is_object())
    fail_invalid(what + ": 'params' must be an object");
  reject_unknown_keys(p, params_for(*kind), what);
  auto field = [&](const char* key) -> const Json& { return require_field(p, key, what); };
  auto name = [&](const char* key) { return what + "." + key; };

  switch (*kind) {
  case OperatorKind::dense:
    break;
  case OperatorKind::random:
    return OperatorSpec::make_random(int_from_json(field("dim"), name("dim")), seed_from_json(field("seed"), name("seed")),
                                     p.contains("norm_cap") ? real_from_json(p["norm_cap"], name("norm_cap")) : 1.0);
  case OperatorKind::truncated_shift:
    return OperatorSpec::make_truncated_shift(
        int_from_json(field("n"), name("n")),
        p.contains("multiplicity") ? int_from_json(p["multiplicity"], name("multiplicity")) : 1);
  case OperatorKind::cyclic_shift:
    return OperatorSpec::make_cyclic_shift(int_from_json(field("n"), name("n")));
  case OperatorKind::rank_one_perturbed_unitary: {
    std::optional<Vector> xi;
    if (p.contains("xi"))
      xi = vector_from_json(p["xi"], name("xi"));
    return OperatorSpec::make_rank_one_perturbed_unitary(spec_from_json(field("U")),
                                                         complex_from_json(field("alpha"), name("alpha")), xi);
  }
  case OperatorKind::weighted_cyclic_shift:
    return OperatorSpec::make_weighted_cyclic_shift(int_from_json(field("n"), name("n")),
                                                    complex_from_json(field("alpha"), name("alpha")));
  case OperatorKind::block_shift_perturbation:
    return OperatorSpec::make_block_shift_perturbation(spec_from_json(field("A")), int_from_json(field("n"), name("n")));
  case OperatorKind::direct_sum: {
    const Json& ops = field("operands");
    if (!ops.is_array() || ops.empty())
      fail_invalid("direct_sum: 'operands' must be a nonempty list");
    std::vector<OperatorSpec> parts;
    for (const auto& o : ops)
      parts.push_back(spec_from_json(o));
    return OperatorSpec::make_direct_sum(std::move(parts));
  }
  case OperatorKind::mobius:
    return OperatorSpec::make_mobius(spec_from_json(field("T")), complex_from_json(field("lambda"), name("lambda")));
  case OperatorKind::adjoint:
    return OperatorSpec::make_adjoint(spec_from_json(field("T")));
  case OperatorKind::power:
    return OperatorSpec::make_power(spec_from_json(field("T")), int_from_json(field("k"), name("k")));
  case OperatorKind::scalar_multiple:
    return OperatorSpec::make_scalar_multiple(spec_from_json(field("T")),
                                              complex_from_json(field("scalar"), name("scalar")));
  }
  fail_invalid("operator spec: unhandled kind");
}

Json operator_to_json(const ContractionMatrix& t) {
  Json out;
  out["kind"] = "dense";
  out["label"] = t.label();
  out["dim"] = t.dim();
  out["entries"] = matrix_to_json(t.entries());
  return out;
}

Json tolerance_to_json(const TolerancePolicy& tol) {
  return Json{{"atol", tol.atol},
              {"psd_floor", tol.psd_floor},
              {"rank_rtol", tol.rank_rtol},
              {"iter_tol", tol.iter_tol},
              {"max_iter", tol.max_iter}};
}

TolerancePolicy tolerance_from_json(const Json& j, TolerancePolicy base) {
  if (!j.is_object())
    fail_invalid("tolerance file: expected an object");
  reject_unknown_keys(j, {"atol", "psd_floor", "rank_rtol", "iter_tol", "max_iter"}, "tolerance file");
  if (j.contains("atol"))
    base.atol = real_from_json(j["atol"], "atol");
  if (j.contains("psd_floor"))
    base.psd_floor = real_from_json(j["psd_floor"], "psd_floor");
  if (j.contains("rank_rtol"))
    base.rank_rtol = real_from_json(j["rank_rtol"], "rank_rtol");
  if (j.contains("iter_tol"))
    base.iter_tol = real_from_json(j["iter_tol"], "iter_tol");
  if (j.contains("max_iter")) {
    if (!j["max_iter"].is_number_integer())
      fail_invalid("max_iter: expected an integer");
    base.max_iter = j["max_iter"].get<std::int64_t>();
  }
  base.validate();
  return base;
}

Json grid_to_json(const GridSpec& grid) {
  return Json{{"radii", grid.radii},
              {"angles_per_radius", grid.angles_per_radius},
              {"include_zero", grid.include_zero},
              {"extra_angles", grid.extra_angles}};
}

Json certificate_to_json(const DominationCertificate& cert) {
  Json out;
  out["relation"] = to_string(cert.relation);
  out["feasible"] = cert.feasible;
  out["raw_sup"] = real_to_json(cert.raw_sup);
  out["constant"] = real_to_json(cert.constant);
  out["grid"] = cert.grid ? grid_to_json(*cert.grid) : Json(nullptr);
  out["block_order_max"] = cert.block_order_max ? Json(*cert.block_order_max) : Json(nullptr);
  Json w;
  w["lambda"] = cert.witness.lambda ? complex_to_json(*cert.witness.lambda) : Json(nullptr);
  w["block_order"] = cert.witness.block_order ? Json(*cert.witness.block_order) : Json(nullptr);
  w["vector"] = cert.witness.vector.size() > 0 ? vector_to_json(cert.witness.vector) : Json::array();
  out["witness"] = std::move(w);
  Json per = Json::array();
  for (const auto& rc : cert.per_radius)
    per.push_back(Json{{"radius", rc.radius}, {"raw", real_to_json(rc.raw)}});
  out["per_radius"] = std::move(per);
  out["scope"] = cert.grid ? "verdict relative to the listed grid and the tolerance policy"
                           : "verdict relative to the tolerance policy";
  return out;
}

Json mobius_profile_to_json(const MobiusProfile& profile) {
  Json out = certificate_to_json(profile.summary);
  out["implied_harnack_bound"] = real_to_json(profile.implied_harnack_bound);
  Json entries = Json::array();
  for (const auto& e : profile.entries)
    entries.push_back(Json{{"lambda", complex_to_json(e.lambda)},
                           {"feasible", e.certificate.feasible},
                           {"raw", real_to_json(e.certificate.raw_sup)}});
  out["entries"] = std::move(entries);
  return out;
}

Json spectral_report_to_json(const SpectralReport& report) {
  auto list = [](const std::vector<Complex>& zs) {
    Json a = Json::array();
    for (const auto& z : zs)
      a.push_back(complex_to_json(z));
    return a;
  };
  return Json{{"eigenvalues", list(report.eigenvalues)},
              {"peripheral", list(report.peripheral)},
              {"point_peripheral", list(report.point_peripheral)},
              {"spectral_radius", report.spectral_radius}};
}

Json classification_to_json(const ClassificationFlags& f) {
  return Json{{"is_unitary", f.is_unitary},
              {"is_isometry", f.is_isometry},
              {"is_coisometry", f.is_coisometry},
              {"is_projection", f.is_projection},
              {"C_0.", f.c_0dot},
              {"C_.0", f.c_dot0},
              {"C_00", f.c_00},
              {"C_1.", f.c_1dot},
              {"C_.1", f.c_dot1},
              {"C_11", f.c_11},
              {"strongly_stable", f.c_0dot},
              {"completely_nonunitary", f.completely_nonunitary},
              {"unitary_part_dim", f.unitary_part_dim}};
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail_invalid(what + ": malformed JSON (" + e.what() + ")");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail_invalid("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    fail_invalid("cannot write file '" + path + "'");
  out << text;
  if (!out)
    fail_invalid("write failed for '" + path + "'");
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

} // namespace harnack
