#pragma once

// File formats: set definitions (JSON), matrices (CSV and JSON), reports.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "etfkit/classify.hpp"
#include "etfkit/conference.hpp"
#include "etfkit/frames.hpp"
#include "etfkit/matrix.hpp"

namespace etfkit {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

struct SetFile {
    GroupSubset set;
    std::optional<Subgroup> subgroup;
};

/// {schema_version, group: {cyclic_orders}, elements: [[r...]...], display_order?, subgroup?}
json set_to_json(const GroupSubset& D, const std::optional<Subgroup>& H = std::nullopt);
SetFile set_from_json(const json& j);
SetFile read_set_file(const std::filesystem::path& path);

/// Single-term exact values as {num, den, root_exp, root_mod[, rad]}; other exact
/// values as {coeffs, root_mod, den[, rad]} (coefficients of powers of zeta_root_mod).
json exact_to_json(const ExactScalar& v);
ExactScalar exact_from_json(const json& j);

json matrix_to_json(const ComplexMatrix& M);
ComplexMatrix matrix_from_json(const json& j);

/// "re+im i" with 17 significant digits, e.g. "0.5-0.86602540378443871i".
std::string format_complex(cdouble z);
cdouble parse_complex(const std::string& text);

/// Header row of column labels, then one row per matrix row led by its label.
std::string matrix_to_csv(const ComplexMatrix& M);
ComplexMatrix matrix_from_csv(const std::string& text);

/// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

json certificate_to_json(const GroupSubset& D, const DesignCertificate& cert);
json angle_report_to_json(const AngleReport& r);
json fusion_report_to_json(const FusionReport& r, const AbelianGroup& G);
json conference_report_to_json(const ConferenceReport& r);

/// Residue vector of element i as a JSON array.
json element_json(const AbelianGroup& G, Index i);
Index element_from_json(const AbelianGroup& G, const json& j);

}  // namespace etfkit
