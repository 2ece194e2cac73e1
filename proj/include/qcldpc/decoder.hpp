#pragma once

#include "qcldpc/base_matrix.hpp"
#include "qcldpc/compact_index.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qcldpc {

struct DecoderConfig {
    std::size_t max_iterations = 50;
    bool early_termination = false;
    /// Bound on every stored |LLR|.
    double llr_clip = 30.0;
    /// Lower clamp of the phi argument.
    double phi_epsilon = 1e-10;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// phi(x) = -ln(tanh(x / 2)), its own inverse on (0, inf). The argument is
/// clamped to [cfg.phi_epsilon, cfg.llr_clip] first so the result is always
/// finite and positive.
double phi(double x, const DecoderConfig& cfg = {});

struct Syndrome {
    std::vector<std::uint8_t> bits;

    static Syndrome zero(std::size_t n_checks) { return {std::vector<std::uint8_t>(n_checks, 0)}; }
    friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

/// s_m = XOR of the word bits adjacent to check m.
Syndrome syndrome_of(std::span<const std::uint8_t> word, const ParityCheckMatrix& h);
Syndrome syndrome_of(std::span<const std::uint8_t> word, const CompactIndex& index);

/// Bit 0 iff llr >= 0.
std::vector<std::uint8_t> hard_decision(std::span<const double> llr);

struct DecodeOutcome {
    std::vector<std::uint8_t> word;
    /// H * word == target syndrome.
    bool converged = false;
    std::size_t iterations_used = 0;
    /// Posterior LLRs after the last iteration.
    std::vector<double> posterior;

    friend bool operator==(const DecodeOutcome&, const DecodeOutcome&) = default;
};

/// Working state of the layered decoder for one codeword. Owned by a single
/// thread at a time; may be handed to another thread between iterations.
class DecoderState {
public:
    /// posterior = clip(llr0), all check-to-variable messages zero.
    DecoderState(std::span<const double> llr0, const CompactIndex& index, const DecoderConfig& cfg);

    std::span<const double> posterior() const noexcept { return posterior_; }
    /// Check-to-variable messages in CompactIndex order.
    std::span<const double> edge_messages() const noexcept { return edge_messages_; }
    std::size_t iteration() const noexcept { return iteration_; }
    std::size_t layer() const noexcept { return layer_; }

private:
    friend void layer_update(DecoderState&, std::size_t, const Syndrome&, const CompactIndex&, const DecoderConfig&);
    friend DecodeOutcome decode(std::span<const double>, const Syndrome&, const CompactIndex&, const DecoderConfig&);

    std::vector<double> posterior_;
    std::vector<double> edge_messages_;
    std::size_t iteration_ = 0;
    std::size_t layer_ = 0;

    // per-check scratch, sized to the largest row degree
    std::vector<double> q_;
    std::vector<double> phi_q_;
    std::vector<double> prefix_;
    std::vector<std::size_t> vars_;
};

/// Processes every expanded check of one layer: forms the variable-to-check
/// messages from the current posteriors, recomputes the check-to-variable
/// messages (sign flipped on odd syndrome bits) and writes the posteriors
/// back. Checks of one layer touch disjoint variables.
void layer_update(DecoderState& state, std::size_t layer, const Syndrome& syndrome, const CompactIndex& index,
                  const DecoderConfig& cfg);

/// Layered BP toward the target syndrome. One iteration sweeps all layers in
/// index order; with early termination the hard decision is tested after
/// every iteration. Throws std::invalid_argument on size mismatches.
DecodeOutcome decode(std::span<const double> llr0, const Syndrome& syndrome, const CompactIndex& index,
                     const DecoderConfig& cfg);

struct DecodeJob {
    std::vector<double> llr0;
    Syndrome syndrome;
};

/// Decodes independent frames on up to `workers` threads. Results are in
/// job order and identical to calling decode() on each job.
std::vector<DecodeOutcome> decode_batch(std::span<const DecodeJob> jobs, const CompactIndex& index,
                                        const DecoderConfig& cfg, std::size_t workers = 1);

/// Flooding sum-product over the expanded matrix: every check is updated
/// from the previous iteration's messages. Same phi kernel, syndrome signs,
/// clipping and hard decision as decode().
DecodeOutcome flooding_decode(std::span<const double> llr0, const Syndrome& syndrome, const ParityCheckMatrix& h,
                              const DecoderConfig& cfg);

namespace detail {

/// Shared check-node kernel. Given variable-to-check messages q, writes the
/// outgoing messages to r, bounded by llr_clip / 3. `phi_q` and `prefix` are
/// scratch of size q.size().
void check_node_update(std::span<const double> q, bool odd_parity, std::span<double> r, std::span<double> phi_q,
                       std::span<double> prefix, const DecoderConfig& cfg);

} // namespace detail

} // namespace qcldpc
