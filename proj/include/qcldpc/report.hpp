#pragma once

#include "qcldpc/campaign.hpp"

#include <json.hpp>

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcldpc {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ReportFormat { csv, json };

/// Throws ConfigError for anything other than "csv" or "json".
ReportFormat parse_report_format(std::string_view name);

inline constexpr int kReportSchemaVersion = 1;

/// Fixed CSV column order.
inline constexpr std::string_view kCsvHeader =
    "snr,fer,avg_iterations,latency_per_iteration_s,throughput_mbit_s,beta,total_expanded_edges,utilization";

inline constexpr std::string_view kThroughputDefinition =
    "decoded frames * block_length / decoder wall-clock seconds / 1e6";
inline constexpr std::string_view kLatencyDefinition =
    "decoder wall-clock seconds / sum of iterations executed over all frames";
inline constexpr std::string_view kFrameErrorDefinition =
    "decoder did not satisfy the target syndrome, or decoded word differs from the transmitted word";

std::string to_csv(const CampaignReport& report);
nlohmann::json to_json(const CampaignReport& report);
/// Inverse of to_json. Throws nlohmann::json::exception on missing or
/// mistyped fields, std::invalid_argument on a schema version mismatch.
CampaignReport report_from_json(const nlohmann::json& j);

/// CSV: the campaign CSV with a leading "schedule" column, single rows
/// first. JSON: {"schema_version", "single", "merged"}.
std::string comparison_to_csv(const ScheduleComparison& comparison);
nlohmann::json comparison_to_json(const ScheduleComparison& comparison);

/// Writes to `path`, or to `fallback` when path is empty. Throws IoError.
void emit_text(const std::string& text, const std::string& path, std::ostream& fallback);
void emit_report(const CampaignReport& report, ReportFormat format, const std::string& path, std::ostream& fallback);

} // namespace qcldpc
