#include "qcldpc/report.hpp"

#include <fstream>
#include <stdexcept>
#include <sstream>

namespace qcldpc {

namespace {

std::string format_double(double value)
{
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
}

void append_csv_row(std::string& out, const CampaignCell& cell)
{
    out += format_double(cell.snr) + ',' + format_double(cell.fer) + ',' + format_double(cell.avg_iterations) + ','
           + format_double(cell.latency_per_iteration_seconds) + ','
           + format_double(cell.throughput_mbits_per_second) + ',' + format_double(cell.beta) + ','
           + std::to_string(cell.total_expanded_edges) + ',' + format_double(cell.utilization) + '\n';
}

nlohmann::json cell_to_json(const CampaignCell& cell)
{
    return {
        {"snr", cell.snr},
        {"fer", cell.fer},
        {"avg_iterations", cell.avg_iterations},
        {"latency_per_iteration_seconds", cell.latency_per_iteration_seconds},
        {"throughput_mbits_per_second", cell.throughput_mbits_per_second},
        {"beta", cell.beta},
        {"total_expanded_edges", cell.total_expanded_edges},
        {"utilization", cell.utilization},
        {"frames", cell.frames},
        {"frame_errors", cell.frame_errors},
        {"total_iterations", cell.total_iterations},
        {"wall_seconds", cell.wall_seconds},
    };
}

CampaignCell cell_from_json(const nlohmann::json& j)
{
    CampaignCell cell;
    j.at("snr").get_to(cell.snr);
    j.at("fer").get_to(cell.fer);
    j.at("avg_iterations").get_to(cell.avg_iterations);
    j.at("latency_per_iteration_seconds").get_to(cell.latency_per_iteration_seconds);
    j.at("throughput_mbits_per_second").get_to(cell.throughput_mbits_per_second);
    j.at("beta").get_to(cell.beta);
    j.at("total_expanded_edges").get_to(cell.total_expanded_edges);
    j.at("utilization").get_to(cell.utilization);
    j.at("frames").get_to(cell.frames);
    j.at("frame_errors").get_to(cell.frame_errors);
    j.at("total_iterations").get_to(cell.total_iterations);
    j.at("wall_seconds").get_to(cell.wall_seconds);
    return cell;
}

} // namespace

ReportFormat parse_report_format(std::string_view name)
{
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "json")
        return ReportFormat::json;
    throw ConfigError("unknown report format: " + std::string(name));
}

std::string to_csv(const CampaignReport& report)
{
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& cell : report.cells)
        append_csv_row(out, cell);
    return out;
}

nlohmann::json to_json(const CampaignReport& report)
{
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : report.cells)
        cells.push_back(cell_to_json(cell));
    return {
        {"schema_version", kReportSchemaVersion},
        {"code",
         {{"name", report.code_name},
          {"block_length", report.block_length},
          {"n_checks", report.n_checks},
          {"rate", report.rate},
          {"z", report.z}}},
        {"config",
         {{"schedule", report.schedule},
          {"n_layers", report.n_layers},
          {"max_iterations", report.max_iterations},
          {"early_termination", report.early_termination},
          {"batch_size", report.batch_size},
          {"workers", report.workers},
          {"seed", report.seed},
          {"encode", report.encode},
          {"lane_budget", report.lane_budget}}},
        {"definitions",
         {{"throughput_mbits_per_second", kThroughputDefinition},
          {"latency_per_iteration_seconds", kLatencyDefinition},
          {"frame_error", kFrameErrorDefinition}}},
        {"cells", std::move(cells)},
    };
}

CampaignReport report_from_json(const nlohmann::json& j)
{
    if (j.at("schema_version").get<int>() != kReportSchemaVersion)
        throw std::invalid_argument("unsupported report schema version");
    CampaignReport report;
    const auto& code = j.at("code");
    code.at("name").get_to(report.code_name);
    code.at("block_length").get_to(report.block_length);
    code.at("n_checks").get_to(report.n_checks);
    code.at("rate").get_to(report.rate);
    code.at("z").get_to(report.z);
    const auto& config = j.at("config");
    config.at("schedule").get_to(report.schedule);
    config.at("n_layers").get_to(report.n_layers);
    config.at("max_iterations").get_to(report.max_iterations);
    config.at("early_termination").get_to(report.early_termination);
    config.at("batch_size").get_to(report.batch_size);
    config.at("workers").get_to(report.workers);
    config.at("seed").get_to(report.seed);
    config.at("encode").get_to(report.encode);
    config.at("lane_budget").get_to(report.lane_budget);
    for (const auto& cell : j.at("cells"))
        report.cells.push_back(cell_from_json(cell));
    return report;
}

std::string comparison_to_csv(const ScheduleComparison& comparison)
{
    std::string out = "schedule,";
    out += kCsvHeader;
    out += '\n';
    for (const auto* report : {&comparison.single, &comparison.merged}) {
        for (const auto& cell : report->cells) {
            out += report->schedule + ',';
            append_csv_row(out, cell);
        }
    }
    return out;
}

nlohmann::json comparison_to_json(const ScheduleComparison& comparison)
{
    return {
        {"schema_version", kReportSchemaVersion},
        {"single", to_json(comparison.single)},
        {"merged", to_json(comparison.merged)},
    };
}

void emit_text(const std::string& text, const std::string& path, std::ostream& fallback)
{
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open output file: " + path);
    out << text;
    out.flush();
    if (!out)
        throw IoError("error writing output file: " + path);
}

void emit_report(const CampaignReport& report, ReportFormat format, const std::string& path, std::ostream& fallback)
{
    const std::string text = format == ReportFormat::csv ? to_csv(report) : to_json(report).dump(2) + '\n';
    emit_text(text, path, fallback);
}

} // namespace qcldpc
