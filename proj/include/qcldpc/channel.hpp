#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qcldpc {

/// Binary-input AWGN channel with unit-power BPSK (bit 0 -> +1, 1 -> -1).
/// snr is linear and equals 1 / sigma2.
struct ChannelConfig {
    double snr = 1.0;
    double sigma2 = 1.0;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument unless snr > 0 and finite.
    static ChannelConfig from_snr(double snr, std::uint64_t seed = 0);
};

struct ReceivedWord {
    std::vector<double> samples;
};

/// Independent, reproducible random stream for frame `index` of a campaign
/// seeded with `seed`. The engine is mt19937_64 (output fully specified by
/// the standard) keyed through SplitMix64; uniforms take the top 53 bits and
/// gaussians use the Box-Muller transform, so the stream is identical on
/// every platform and standard library.
class FrameStream {
public:
    /// Substream tags keep the noise and payload draws of one frame apart.
    enum class Purpose : std::uint64_t { noise = 0x6e6f697365ULL, payload = 0x7061796c6fULL };

    FrameStream(std::uint64_t seed, std::uint64_t index, Purpose purpose = Purpose::noise);

    /// Uniform in (0, 1).
    double uniform();
    /// Standard normal.
    double gaussian();
    std::uint8_t bit();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// R_n = (1 - 2 c_n) + sqrt(sigma2) * g_n with g drawn from
/// FrameStream(cfg.seed, frame_index). The gaussian draws do not depend on
/// snr, so frames at different SNR points share their noise shape.
ReceivedWord transmit(std::span<const std::uint8_t> codeword, const ChannelConfig& cfg,
                      std::uint64_t frame_index = 0);

/// Channel LLR 2 R_n / sigma2.
std::vector<double> init_llr(const ReceivedWord& received, const ChannelConfig& cfg);

/// Capacity of the real Gaussian channel, 0.5 log2(1 + snr) bits per use.
double gaussian_capacity(double snr);

/// Reconciliation efficiency: rate over Gaussian capacity at snr.
double beta(double rate, double snr);

/// Uncoded hard-decision bit error probability Q(sqrt(snr)).
double uncoded_bit_error_rate(double snr);

} // namespace qcldpc
