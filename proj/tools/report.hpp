#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "cypoise/params.hpp"
#include "cypoise/profile.hpp"
#include "cypoise/regime.hpp"
#include "cypoise/unsteady.hpp"

namespace cypoise::cli {

/// 17 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

/// Empty string for a missing value.
std::string format_optional(const std::optional<double>& v);

/// Quotes a CSV field that contains a separator or a quote character.
std::string csv_field(const std::string& s);

nlohmann::ordered_json params_json(const FluidParams& p, const FlowParams& f);
nlohmann::ordered_json settings_json(const EvalSettings& s);

/// {params, regime, theorem, critical_points, margins, diagnostics}
nlohmann::ordered_json report_json(const FluidParams& p, const FlowParams& f,
                                   const regime::RegimeReport& rep, const EvalSettings& s);

/// key,value rows of the same content as report_json.
std::string report_csv(const FluidParams& p, const FlowParams& f, const regime::RegimeReport& rep,
                       const EvalSettings& s);

/// '#' key=value header block followed by Y,U,U_Y,U_YY rows.
std::string profile_csv(const FluidParams& p, const FlowParams& f, const regime::RegimeReport& rep,
                        const profile::VelocityProfile& prof, const EvalSettings& s);

nlohmann::ordered_json profile_json(const FluidParams& p, const FlowParams& f,
                                    const regime::RegimeReport& rep,
                                    const profile::VelocityProfile& prof, const EvalSettings& s);

nlohmann::ordered_json bounds_json(const FluidParams& p, const FlowParams& f,
                                   const unsteady::BoundReport& b, const EvalSettings& s);

std::string bounds_csv(const FluidParams& p, const FlowParams& f, const unsteady::BoundReport& b);

}  // namespace cypoise::cli
