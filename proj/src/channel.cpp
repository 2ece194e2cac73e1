#include "qcldpc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcldpc {

ChannelConfig ChannelConfig::from_snr(double snr, std::uint64_t seed)
{
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw std::invalid_argument("snr must be positive and finite");
    return ChannelConfig{snr, 1.0 / snr, seed};
}

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

FrameStream::FrameStream(std::uint64_t seed, std::uint64_t index, Purpose purpose)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(splitmix64(index) ^ static_cast<std::uint64_t>(purpose))))
{
}

double FrameStream::uniform()
{
    // (k + 0.5) / 2^53 never hits 0 or 1
    const std::uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double FrameStream::gaussian()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::uint8_t FrameStream::bit()
{
    return static_cast<std::uint8_t>(engine_() >> 63);
}

ReceivedWord transmit(std::span<const std::uint8_t> codeword, const ChannelConfig& cfg, std::uint64_t frame_index)
{
    const double sigma = std::sqrt(cfg.sigma2);
    FrameStream stream(cfg.seed, frame_index);
    ReceivedWord out;
    out.samples.resize(codeword.size());
    for (std::size_t n = 0; n < codeword.size(); ++n) {
        const double symbol = codeword[n] ? -1.0 : 1.0;
        out.samples[n] = symbol + sigma * stream.gaussian();
    }
    return out;
}

std::vector<double> init_llr(const ReceivedWord& received, const ChannelConfig& cfg)
{
    const double scale = 2.0 / cfg.sigma2;
    std::vector<double> llr(received.samples.size());
    for (std::size_t n = 0; n < llr.size(); ++n)
        llr[n] = scale * received.samples[n];
    return llr;
}

double gaussian_capacity(double snr)
{
    return 0.5 * std::log2(1.0 + snr);
}

double beta(double rate, double snr)
{
    if (!(snr > 0.0))
        throw std::invalid_argument("snr must be positive");
    if (!(rate > 0.0 && rate < 1.0))
        throw std::invalid_argument("rate must lie in (0, 1)");
    return rate / gaussian_capacity(snr);
}

double uncoded_bit_error_rate(double snr)
{
    return 0.5 * std::erfc(std::sqrt(snr) / std::numbers::sqrt2);
}

} // namespace qcldpc
