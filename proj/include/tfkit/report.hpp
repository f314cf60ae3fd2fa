#pragma once

#include <string>

#include "json.hpp"
#include "tfkit/estimate.hpp"
#include "tfkit/fixtures.hpp"

namespace tfkit {

/// Locale-independent number rendering ('.' decimal separator).
std::string format_number(double v);

/// Convergence table: n, epsilon, log_value, rate, bound flag.
std::string trace_csv(const EstimateTrace& t);
std::string ladder_csv(const LadderEstimate& l);

std::string identity_csv(const std::vector<IdentityRow>& rows);

/// FNV-1a content fingerprint of the canonical JSON rendering.
std::string fingerprint(const nlohmann::json& j);

/// Standard envelope: resolved config, its fingerprint, and the payload.
nlohmann::json report_bundle(const nlohmann::json& config,
                             const nlohmann::json& payload);

void write_text_file(const std::string& path, const std::string& content);

} // namespace tfkit
