#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace a2lab::lab {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // RMS residual of the log2-log2 fit
};

/// Ordinary least squares on (log2 x, log2 y). Requires >= 3 strictly
/// positive points.
FitResult fit_exponent(std::span<const double> xs, std::span<const double> ys);

struct ExperimentRow {
    int a = 0;
    double alpha = 0.0;
    double a2_log2 = 0.0;
    double quantity_log2 = 0.0;
    std::optional<double> oracle_log2;
    double cpu_ms = 0.0;
};

struct ExperimentReport {
    std::string name;
    std::string timestamp;
    std::vector<std::pair<std::string, std::string>> config; // echoed verbatim
    std::vector<ExperimentRow> rows;                         // sorted by a
    std::optional<FitResult> fit;                            // main log-log fit
    std::map<std::string, FitResult> extra_fits;
    std::map<std::string, std::vector<double>> extra_series; // one value per row
    std::vector<std::string> notes;
};

/// CSV schema (fixed): a,alpha,a2_log2,quantity_log2,oracle_log2,cpu_ms
std::string to_csv(const ExperimentReport& report);
nlohmann::json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);
/// Log-log scatter of the rows with the fitted line and slope annotation.
std::string to_svg(const ExperimentReport& report);

/// Writes <name>.<ext> for each requested format ("csv", "json", "svg").
std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                               const std::vector<std::string>& formats,
                                               const std::filesystem::path& out_dir);

} // namespace a2lab::lab
