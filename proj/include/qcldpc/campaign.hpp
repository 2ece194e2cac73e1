#pragma once

#include "qcldpc/base_matrix.hpp"
#include "qcldpc/decoder.hpp"
#include "qcldpc/layer_schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcldpc {

/// Invalid campaign or CLI configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ScheduleKind { single_row, merged };

const char* to_string(ScheduleKind kind);

struct CampaignConfig {
    std::string matrix_path;
    std::vector<double> snr_list;
    std::size_t max_iterations = 50;
    bool early_termination = false;
    /// Frames handed to the decoder together (K2).
    std::size_t batch_size = 1;
    /// Frames per SNR point; exact, independent of batch_size.
    std::size_t min_trials = 1024;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    double lane_budget = kReferenceLaneBudget;
    /// Random payload words with their syndrome instead of the all-zero word.
    bool encode = false;
    ScheduleKind schedule = ScheduleKind::merged;
    double llr_clip = 30.0;
    double phi_epsilon = 1e-10;

    /// Throws ConfigError.
    void validate() const;
    DecoderConfig decoder_config() const;
};

struct CampaignCell {
    double snr = 0.0;
    double fer = 0.0;
    double avg_iterations = 0.0;
    double latency_per_iteration_seconds = 0.0;
    double throughput_mbits_per_second = 0.0;
    double beta = 0.0;
    std::size_t total_expanded_edges = 0;
    double utilization = 0.0;

    std::size_t frames = 0;
    std::size_t frame_errors = 0;
    std::size_t total_iterations = 0;
    double wall_seconds = 0.0;

    friend bool operator==(const CampaignCell&, const CampaignCell&) = default;
};

struct CampaignReport {
    std::string code_name;
    std::size_t block_length = 0;
    std::size_t n_checks = 0;
    double rate = 0.0;
    std::size_t z = 0;
    std::string schedule;
    std::size_t n_layers = 0;
    std::size_t max_iterations = 0;
    bool early_termination = false;
    std::size_t batch_size = 0;
    std::size_t workers = 0;
    std::uint64_t seed = 0;
    bool encode = false;
    double lane_budget = kReferenceLaneBudget;
    std::vector<CampaignCell> cells;

    friend bool operator==(const CampaignReport&, const CampaignReport&) = default;
};

/// Monte-Carlo FER / iteration / timing sweep over cfg.snr_list using
/// `base` (cfg.matrix_path is only used as the code name).
///
/// Frame i at every SNR point uses noise substream (seed, i); in encode mode
/// the payload word comes from a separate substream of the same frame. A
/// frame counts as an error when the decoder does not converge or its word
/// differs from the transmitted one. Statistics other than timing are
/// independent of batch_size and workers.
CampaignReport run_campaign(const CampaignConfig& cfg, const BaseMatrix& base);

/// Loads cfg.matrix_path first. Throws std::ios_base::failure / ParseError.
CampaignReport run_campaign(const CampaignConfig& cfg);

struct ScheduleComparison {
    CampaignReport single;
    CampaignReport merged;
};

/// Same campaign under the one-row-per-layer schedule and the greedy merged
/// schedule.
ScheduleComparison compare_schedules(const CampaignConfig& cfg, const BaseMatrix& base);

LayerSchedule make_schedule(ScheduleKind kind, const BaseMatrix& base);

} // namespace qcldpc
