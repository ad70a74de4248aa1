#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "umbilic/chart.hpp"
#include "umbilic/constructor.hpp"
#include "umbilic/fields.hpp"
#include "umbilic/function.hpp"
#include "umbilic/hypersurface.hpp"
#include "umbilic/structure.hpp"

namespace umbilic {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Numbers in every artifact carry 12 significant digits.
std::string format_number(double x);
// x rounded to 12 significant digits; non-finite values become null.
Json number(double x);
Json numbers(const Vec& v);
Json numbers(const std::vector<double>& v);

// Function spec:
//   {"schema": 1, "kind": "sine-affine", "parameters": [...], "domain": [lo, hi]}
//   {"schema": 1, "kind": "tabulated-spline", "knots": [...], "values": [...]}
// Infinite domain ends are null. "schema" is required at top level and
// optional when nested. Unknown fields are rejected with Schema errors that
// name the field path.
Json function_to_json(const FunctionSpec1D& f);
FunctionSpec1D function_from_json(const Json& j, const std::string& path = "function");

// Chart spec:
//   {"schema": 1, "kind": "theta3", "theta": {...}, "box": [[lo, hi], ...]}
//   warped-product: "f", "fiber_dim", "fiber" ("flat" | "round-unit-sphere")
//   base2: "theta"; diagonal-axis: "a", "b"; conformal: "h", "base"
// "box" is optional and shrinks the natural box.
Json chart_to_json(const MetricChart& chart);
MetricChart chart_from_json(const Json& j, const std::string& path = "chart");

// Reads a file; parse errors become Schema errors.
Json read_json_file(const std::string& path);

Json to_json(const KillingReport& r);
Json to_json(const ConformalReport& r);
Json to_json(const UmbilicityReport& r);
Json to_json(const SmoothnessReport& r);
Json to_json(const ConstantCurvatureResult& r);
Json profile_summary(const ProfileCurve& p);

// s, x0, x1, theta, c_drift.
void write_profile_csv(std::ostream& os, const ProfileCurve& p);
// Parameters, chart point, lambda-bar and eigenvalue spread per grid point.
void write_surface_csv(std::ostream& os, const MetricChart& chart, const ImmersionSpec& imm,
                       const UmbilicityReport& r);
// `v x y z` over an nu x nv parameter grid (first three chart coordinates,
// further parameters at their midpoints), then `f i j k` faces, 1-based.
void write_mesh(std::ostream& os, const ImmersionSpec& imm, int nu, int nv);

}  // namespace umbilic
