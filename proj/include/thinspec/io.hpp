#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thinspec/construct.hpp"
#include "thinspec/dos.hpp"
#include "thinspec/intervals.hpp"
#include "thinspec/jacobi.hpp"
#include "thinspec/lattice.hpp"
#include "thinspec/spectrum.hpp"

namespace thinspec {

using json = nlohmann::json;

// Shortest form is not enough for our round-trip guarantee; always 17 digits.
std::string format_double(double x);
// JSON text with every floating-point number printed at 17 significant digits.
std::string dump_json(const json& j, int indent = 2);

json to_json(const IntervalUnion& x);
json to_json(const BandStructure& bs);
json to_json(const ThinDiagnostics& d);
json to_json(const ScalingFamily& f);
json to_json(const ThinResult& r);
json to_json(const ApproximantChain& c);
json to_json(const IdsBoundCheck& c);

// Accepts {"components": [...]} or a band structure ({"bands": [...]}).
IntervalUnion interval_union_from_json(const json& j);

// CSV, one period entry per line, columns a[,b], '#' starts a comment.
PeriodicJacobi parse_coefficients(std::string_view text);
std::string emit_coefficients(const PeriodicJacobi& J);
PeriodicJacobi read_coefficients_file(const std::filesystem::path& path);

// index,a[,b] for plotting
std::string emit_plot_csv(const PeriodicJacobi& J);
// eps,N(eps) pairs
std::string emit_cover_curve_csv(const IntervalUnion& x, std::span<const double> scales);
// row col value
std::string emit_coo(const std::vector<CooEntry>& entries);

std::string read_text_file(const std::filesystem::path& path);
// Writes to a temporary sibling, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace thinspec
