#include "qcldpc/campaign.hpp"

#include "qcldpc/channel.hpp"
#include "qcldpc/compact_index.hpp"

#include <chrono>
#include <cmath>

namespace qcldpc {

const char* to_string(ScheduleKind kind)
{
    return kind == ScheduleKind::single_row ? "single" : "merged";
}

void CampaignConfig::validate() const
{
    if (snr_list.empty())
        throw ConfigError("at least one SNR point is required");
    for (const double snr : snr_list)
        if (!(snr > 0.0) || !std::isfinite(snr))
            throw ConfigError("SNR values must be positive and finite");
    if (batch_size < 1)
        throw ConfigError("batch size must be at least 1");
    if (min_trials < batch_size)
        throw ConfigError("trials must be at least the batch size");
    if (workers < 1)
        throw ConfigError("workers must be at least 1");
    if (!(lane_budget > 0.0))
        throw ConfigError("lane budget must be positive");
    try {
        decoder_config().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

DecoderConfig CampaignConfig::decoder_config() const
{
    return DecoderConfig{max_iterations, early_termination, llr_clip, phi_epsilon};
}

LayerSchedule make_schedule(ScheduleKind kind, const BaseMatrix& base)
{
    return kind == ScheduleKind::single_row ? single_row_schedule(base.n_rows()) : greedy_schedule(base);
}

namespace {

DecodeJob make_job(const CompactIndex& index, const ChannelConfig& channel, std::uint64_t frame, bool encode,
                   std::vector<std::uint8_t>& truth)
{
    truth.assign(index.block_length(), 0);
    if (encode) {
        FrameStream payload(channel.seed, frame, FrameStream::Purpose::payload);
        for (auto& bit : truth)
            bit = payload.bit();
    }
    DecodeJob job;
    job.llr0 = init_llr(transmit(truth, channel, frame), channel);
    job.syndrome = encode ? syndrome_of(truth, index) : Syndrome::zero(index.n_checks());
    return job;
}

} // namespace

CampaignReport run_campaign(const CampaignConfig& cfg, const BaseMatrix& base)
{
    cfg.validate();
    CodeDescriptor code;
    try {
        code = descriptor(base);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const LayerSchedule schedule = make_schedule(cfg.schedule, base);
    const CompactIndex index = build_compact_index(base, schedule);
    const DecoderConfig decoder = cfg.decoder_config();

    double utilization_value = 0.0;
    try {
        utilization_value = utilization(schedule, cfg.batch_size, base.z(), cfg.lane_budget).utilization;
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }

    CampaignReport report;
    report.code_name = cfg.matrix_path;
    report.block_length = code.block_length;
    report.n_checks = code.n_checks;
    report.rate = code.rate;
    report.z = base.z();
    report.schedule = to_string(cfg.schedule);
    report.n_layers = schedule.n_layers();
    report.max_iterations = cfg.max_iterations;
    report.early_termination = cfg.early_termination;
    report.batch_size = cfg.batch_size;
    report.workers = cfg.workers;
    report.seed = cfg.seed;
    report.encode = cfg.encode;
    report.lane_budget = cfg.lane_budget;

    std::vector<DecodeJob> jobs;
    std::vector<std::vector<std::uint8_t>> truths;
    for (const double snr : cfg.snr_list) {
        const ChannelConfig channel = ChannelConfig::from_snr(snr, cfg.seed);
        CampaignCell cell;
        cell.snr = snr;
        cell.beta = beta(code.rate, snr);
        cell.total_expanded_edges = code.total_expanded_edges;
        cell.utilization = utilization_value;

        std::chrono::steady_clock::duration decode_time{};
        for (std::size_t first = 0; first < cfg.min_trials; first += cfg.batch_size) {
            const std::size_t count = std::min(cfg.batch_size, cfg.min_trials - first);
            jobs.resize(count);
            truths.resize(count);
            for (std::size_t i = 0; i < count; ++i)
                jobs[i] = make_job(index, channel, first + i, cfg.encode, truths[i]);

            const auto start = std::chrono::steady_clock::now();
            const auto outcomes = decode_batch(jobs, index, decoder, cfg.workers);
            decode_time += std::chrono::steady_clock::now() - start;

            for (std::size_t i = 0; i < count; ++i) {
                const auto& outcome = outcomes[i];
                if (!outcome.converged || outcome.word != truths[i])
                    ++cell.frame_errors;
                cell.total_iterations += outcome.iterations_used;
            }
            cell.frames += count;
        }

        cell.wall_seconds = std::chrono::duration<double>(decode_time).count();
        cell.fer = static_cast<double>(cell.frame_errors) / static_cast<double>(cell.frames);
        cell.avg_iterations = static_cast<double>(cell.total_iterations) / static_cast<double>(cell.frames);
        cell.latency_per_iteration_seconds = cell.wall_seconds / static_cast<double>(cell.total_iterations);
        cell.throughput_mbits_per_second =
            static_cast<double>(cell.frames * code.block_length) / cell.wall_seconds / 1e6;
        report.cells.push_back(cell);
    }
    return report;
}

CampaignReport run_campaign(const CampaignConfig& cfg)
{
    cfg.validate();
    return run_campaign(cfg, load_base_matrix(cfg.matrix_path));
}

ScheduleComparison compare_schedules(const CampaignConfig& cfg, const BaseMatrix& base)
{
    CampaignConfig single = cfg;
    single.schedule = ScheduleKind::single_row;
    CampaignConfig merged = cfg;
    merged.schedule = ScheduleKind::merged;
    return {run_campaign(single, base), run_campaign(merged, base)};
}

} // namespace qcldpc
