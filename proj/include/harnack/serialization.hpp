#pragma once

#include <string>

#include <json.hpp>

#include "harnack/classify.hpp"
#include "harnack/domination.hpp"
#include "harnack/operator_spec.hpp"

namespace harnack {

using Json = nlohmann::json;

// Complex numbers are [re, im]; a plain number is read as a real value.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& what);

/// Row-major list of rows of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& what);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& what);

/// Non-finite reals become null.
Json real_to_json(double x);

/// {"kind": ..., "params": {...}}; dense specs use {"kind": "dense", "entries": ...}.
Json spec_to_json(const OperatorSpec& spec);
OperatorSpec spec_from_json(const Json& j);

/// Materialized operator: dense entries plus the label and dimension.
Json operator_to_json(const ContractionMatrix& t);

Json tolerance_to_json(const TolerancePolicy& tol);
/// Overrides the fields present in `j`; unknown keys are rejected.
TolerancePolicy tolerance_from_json(const Json& j, TolerancePolicy base = {});

Json grid_to_json(const GridSpec& grid);
Json certificate_to_json(const DominationCertificate& cert);
Json mobius_profile_to_json(const MobiusProfile& profile);
Json spectral_report_to_json(const SpectralReport& report);
Json classification_to_json(const ClassificationFlags& flags);

/// Parse errors and unreadable files are invalid-input.
Json parse_json(const std::string& text, const std::string& what);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Two-space indented dump with a trailing newline.
std::string dump_json(const Json& j);

} // namespace harnack
