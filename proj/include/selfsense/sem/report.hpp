#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "selfsense/sem/mle.hpp"

namespace selfsense::sem {

/// Full fit report: estimates, standardized coefficients, SEs, p-values and
/// the fit indices.
nlohmann::ordered_json fit_report_json(const FitResult& result);

/// Structural path list (the drawn diagram edges) as CSV:
/// from,to,estimate,standardized,se,z,p,significant,fixed
void write_path_csv(const FitResult& result, const std::filesystem::path& path);

void write_fit_report(const FitResult& result, const std::filesystem::path& json_path);

}  // namespace selfsense::sem
