#include "qcldpc/decoder.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qcldpc {

namespace {

double clip(double x, double bound)
{
    return std::clamp(x, -bound, bound);
}

// Channel input may carry NaN or infinities; NaN carries no information.
double sanitize(double x, double bound)
{
    return std::isnan(x) ? 0.0 : clip(x, bound);
}

bool matches_syndrome(std::span<const std::uint8_t> word, const Syndrome& target, const CompactIndex& index)
{
    const std::size_t z = index.z();
    for (const auto& row : index.rows()) {
        const auto edges = index.row_edges(row);
        for (std::size_t k = 0; k < z; ++k) {
            std::uint8_t parity = target.bits[row.base_row * z + k];
            for (const auto& e : edges)
                parity ^= word[index.variable(e, k)];
            if (parity != 0)
                return false;
        }
    }
    return true;
}

void check_sizes(std::size_t llr_size, std::size_t syndrome_size, std::size_t block_length, std::size_t n_checks)
{
    if (llr_size != block_length)
        throw std::invalid_argument("LLR vector has " + std::to_string(llr_size) + " entries, block length is "
                                    + std::to_string(block_length));
    if (syndrome_size != n_checks)
        throw std::invalid_argument("syndrome has " + std::to_string(syndrome_size) + " bits, code has "
                                    + std::to_string(n_checks) + " checks");
}

} // namespace

void DecoderConfig::validate() const
{
    if (max_iterations < 1)
        throw std::invalid_argument("max_iterations must be at least 1");
    if (!(llr_clip > 0.0) || !std::isfinite(llr_clip))
        throw std::invalid_argument("llr_clip must be positive and finite");
    if (!(phi_epsilon > 0.0 && phi_epsilon < 1.0))
        throw std::invalid_argument("phi_epsilon must lie in (0, 1)");
}

double phi(double x, const DecoderConfig& cfg)
{
    x = std::clamp(x, cfg.phi_epsilon, cfg.llr_clip);
    // Two algebraically equal forms, each used where it keeps full relative
    // precision: tanh(x/2) is accurate for small x, exp(-x) for large x.
    if (x <= std::numbers::ln2)
        return -std::log(std::tanh(0.5 * x));
    return 2.0 * std::atanh(std::exp(-x));
}

namespace detail {

void check_node_update(std::span<const double> q, bool odd_parity, std::span<double> r, std::span<double> phi_q,
                       std::span<double> prefix, const DecoderConfig& cfg)
{
    const std::size_t degree = q.size();
    // Sign product as a parity of sign bits; the syndrome bit joins the
    // parity so an odd check negates every outgoing message.
    unsigned negative = odd_parity ? 1U : 0U;
    double running = 0.0;
    for (std::size_t j = 0; j < degree; ++j) {
        negative ^= static_cast<unsigned>(std::signbit(q[j]));
        phi_q[j] = phi(std::fabs(q[j]), cfg);
        prefix[j] = running;
        running += phi_q[j];
    }
    // Leave-one-out sums as prefix + suffix, avoiding total-minus-own
    // cancellation when one term dominates.
    // Messages are held to a third of the posterior bound. A saturated
    // posterior minus its old message is then >= 2/3 llr_clip, which maps back
    // to a saturated message for check degrees up to e^(llr_clip / 3), so
    // saturation is a fixed point instead of decaying layer by layer.
    const double bound = cfg.llr_clip / 3.0;
    double suffix = 0.0;
    for (std::size_t j = degree; j-- > 0;) {
        const double magnitude = std::min(phi(prefix[j] + suffix, cfg), bound);
        const unsigned flip = negative ^ static_cast<unsigned>(std::signbit(q[j]));
        r[j] = flip ? -magnitude : magnitude;
        suffix += phi_q[j];
    }
}

} // namespace detail

Syndrome syndrome_of(std::span<const std::uint8_t> word, const ParityCheckMatrix& h)
{
    if (word.size() != h.n_vars())
        throw std::invalid_argument("word length does not match block length");
    Syndrome s{std::vector<std::uint8_t>(h.n_checks(), 0)};
    for (std::size_t m = 0; m < h.n_checks(); ++m) {
        std::uint8_t parity = 0;
        for (const auto n : h.row(m))
            parity ^= word[n] & 1U;
        s.bits[m] = parity;
    }
    return s;
}

Syndrome syndrome_of(std::span<const std::uint8_t> word, const CompactIndex& index)
{
    if (word.size() != index.block_length())
        throw std::invalid_argument("word length does not match block length");
    const std::size_t z = index.z();
    Syndrome s{std::vector<std::uint8_t>(index.n_checks(), 0)};
    for (const auto& row : index.rows()) {
        const auto edges = index.row_edges(row);
        for (std::size_t k = 0; k < z; ++k) {
            std::uint8_t parity = 0;
            for (const auto& e : edges)
                parity ^= word[index.variable(e, k)] & 1U;
            s.bits[row.base_row * z + k] = parity;
        }
    }
    return s;
}

std::vector<std::uint8_t> hard_decision(std::span<const double> llr)
{
    std::vector<std::uint8_t> word(llr.size());
    for (std::size_t n = 0; n < llr.size(); ++n)
        word[n] = llr[n] >= 0.0 ? 0 : 1;
    return word;
}

DecoderState::DecoderState(std::span<const double> llr0, const CompactIndex& index, const DecoderConfig& cfg)
    : posterior_(llr0.size()),
      edge_messages_(index.expanded_edges(), 0.0),
      q_(index.max_row_degree()),
      phi_q_(index.max_row_degree()),
      prefix_(index.max_row_degree()),
      vars_(index.max_row_degree())
{
    if (llr0.size() != index.block_length())
        throw std::invalid_argument("LLR vector length does not match block length");
    for (std::size_t n = 0; n < llr0.size(); ++n)
        posterior_[n] = sanitize(llr0[n], cfg.llr_clip);
}

void layer_update(DecoderState& state, std::size_t layer, const Syndrome& syndrome, const CompactIndex& index,
                  const DecoderConfig& cfg)
{
    if (layer >= index.n_layers())
        throw std::out_of_range("layer index out of range");
    state.layer_ = layer;

    const std::size_t z = index.z();
    double* posterior = state.posterior_.data();

#ifndef NDEBUG
    std::vector<std::uint8_t> written(state.posterior_.size(), 0);
#endif

    for (const auto& row : index.layer_rows(layer)) {
        const auto edges = index.row_edges(row);
        const std::size_t degree = row.degree;
        const std::span<double> q(state.q_.data(), degree);
        const std::span<double> phi_q(state.phi_q_.data(), degree);
        const std::span<double> prefix(state.prefix_.data(), degree);

        for (std::size_t k = 0; k < z; ++k) {
            const std::span<double> r(state.edge_messages_.data() + row.first_edge * z + k * degree, degree);
            for (std::size_t j = 0; j < degree; ++j) {
                const std::size_t n = index.variable(edges[j], k);
                state.vars_[j] = n;
                q[j] = clip(posterior[n] - r[j], cfg.llr_clip);
#ifndef NDEBUG
                assert(written[n] == 0 && "variable written twice within one layer");
                written[n] = 1;
#endif
            }

            detail::check_node_update(q, syndrome.bits[row.base_row * z + k] != 0, r, phi_q, prefix, cfg);

            for (std::size_t j = 0; j < degree; ++j) {
                const double updated = clip(q[j] + r[j], cfg.llr_clip);
                assert(std::isfinite(updated));
                posterior[state.vars_[j]] = updated;
            }
        }
    }
}

DecodeOutcome decode(std::span<const double> llr0, const Syndrome& syndrome, const CompactIndex& index,
                     const DecoderConfig& cfg)
{
    cfg.validate();
    check_sizes(llr0.size(), syndrome.bits.size(), index.block_length(), index.n_checks());

    DecoderState state(llr0, index, cfg);
    DecodeOutcome out;
    for (std::size_t t = 1; t <= cfg.max_iterations; ++t) {
        state.iteration_ = t;
        for (std::size_t l = 0; l < index.n_layers(); ++l)
            layer_update(state, l, syndrome, index, cfg);
        out.iterations_used = t;
        if (cfg.early_termination) {
            out.word = hard_decision(state.posterior_);
            if (matches_syndrome(out.word, syndrome, index))
                break;
        }
    }
    out.word = hard_decision(state.posterior_);
    out.converged = matches_syndrome(out.word, syndrome, index);
    out.posterior = std::move(state.posterior_);
    return out;
}

std::vector<DecodeOutcome> decode_batch(std::span<const DecodeJob> jobs, const CompactIndex& index,
                                        const DecoderConfig& cfg, std::size_t workers)
{
    cfg.validate();
    for (const auto& job : jobs)
        check_sizes(job.llr0.size(), job.syndrome.bits.size(), index.block_length(), index.n_checks());

    std::vector<DecodeOutcome> outcomes(jobs.size());
    const std::size_t n_threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(jobs.size(), 1));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            outcomes[i] = decode(jobs[i].llr0, jobs[i].syndrome, index, cfg);
        return outcomes;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            try {
                outcomes[i] = decode(jobs[i].llr0, jobs[i].syndrome, index, cfg);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads - 1);
        for (std::size_t t = 1; t < n_threads; ++t)
            pool.emplace_back(work);
        work();
    }
    if (failure)
        std::rethrow_exception(failure);
    return outcomes;
}

DecodeOutcome flooding_decode(std::span<const double> llr0, const Syndrome& syndrome, const ParityCheckMatrix& h,
                              const DecoderConfig& cfg)
{
    cfg.validate();
    check_sizes(llr0.size(), syndrome.bits.size(), h.n_vars(), h.n_checks());

    std::vector<double> channel(llr0.size());
    for (std::size_t n = 0; n < llr0.size(); ++n)
        channel[n] = sanitize(llr0[n], cfg.llr_clip);
    std::vector<double> posterior = channel;
    std::vector<double> messages(h.n_edges(), 0.0);

    std::size_t max_degree = 0;
    for (std::size_t m = 0; m < h.n_checks(); ++m)
        max_degree = std::max(max_degree, h.row(m).size());
    std::vector<double> q(max_degree), phi_q(max_degree), prefix(max_degree);

    DecodeOutcome out;
    for (std::size_t t = 1; t <= cfg.max_iterations; ++t) {
        // all checks read the previous iteration's posteriors and messages
        for (std::size_t m = 0; m < h.n_checks(); ++m) {
            const auto vars = h.row(m);
            const std::size_t degree = vars.size();
            const std::span<double> r(messages.data() + h.row_begin(m), degree);
            for (std::size_t j = 0; j < degree; ++j)
                q[j] = clip(posterior[vars[j]] - r[j], cfg.llr_clip);
            detail::check_node_update({q.data(), degree}, syndrome.bits[m] != 0, r, {phi_q.data(), degree},
                                      {prefix.data(), degree}, cfg);
        }
        for (std::size_t n = 0; n < h.n_vars(); ++n) {
            double total = channel[n];
            for (const auto e : h.col_edges(n))
                total += messages[e];
            posterior[n] = clip(total, cfg.llr_clip);
        }
        out.iterations_used = t;
        if (cfg.early_termination) {
            out.word = hard_decision(posterior);
            if (syndrome_of(out.word, h) == syndrome)
                break;
        }
    }
    out.word = hard_decision(posterior);
    out.converged = syndrome_of(out.word, h) == syndrome;
    out.posterior = std::move(posterior);
    return out;
}

} // namespace qcldpc
