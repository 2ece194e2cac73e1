#pragma once

// Independent reference implementations used as oracles by the test suites.
// Nothing here calls into the expansion or decoding paths under test.

#include "qcldpc/base_matrix.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qcldpc::testing {

using DenseMatrix = std::vector<std::vector<std::uint8_t>>;

inline std::string code_path(const std::string& name)
{
    return std::string(QCLDPC_CODES_DIR) + "/" + name;
}

inline BaseMatrix no_merge_example(std::size_t z) { return BaseMatrix(3, 3, z, {1, 0, -1, 2, 1, 1, 0, 2, 0}); }
inline BaseMatrix merge_rows_01_example(std::size_t z) { return BaseMatrix(3, 3, z, {1, -1, -1, -1, 2, 1, 2, 0, 0}); }
inline BaseMatrix merge_rows_02_example(std::size_t z) { return BaseMatrix(3, 3, z, {1, -1, -1, 2, 0, 0, -1, 2, 1}); }

/// z x z circulant: the identity with its columns rotated right `shift`
/// times, one single-step rotation at a time.
inline DenseMatrix circulant(std::size_t z, int shift)
{
    DenseMatrix block(z, std::vector<std::uint8_t>(z, 0));
    if (shift < 0)
        return block;
    for (std::size_t k = 0; k < z; ++k)
        block[k][k] = 1;
    for (int step = 0; step < shift; ++step)
        for (auto& row : block) {
            const std::uint8_t last = row.back();
            for (std::size_t c = z - 1; c > 0; --c)
                row[c] = row[c - 1];
            row[0] = last;
        }
    return block;
}

inline DenseMatrix dense_expand(const BaseMatrix& base)
{
    const std::size_t z = base.z();
    DenseMatrix h(base.n_rows() * z, std::vector<std::uint8_t>(base.n_cols() * z, 0));
    for (std::size_t i = 0; i < base.n_rows(); ++i)
        for (std::size_t c = 0; c < base.n_cols(); ++c) {
            const auto block = circulant(z, base.shift(i, c));
            for (std::size_t a = 0; a < z; ++a)
                for (std::size_t b = 0; b < z; ++b)
                    h[i * z + a][c * z + b] = block[a][b];
        }
    return h;
}

inline std::vector<std::uint8_t> dense_syndrome(const DenseMatrix& h, const std::vector<std::uint8_t>& word)
{
    std::vector<std::uint8_t> s(h.size(), 0);
    for (std::size_t m = 0; m < h.size(); ++m) {
        unsigned acc = 0;
        for (std::size_t n = 0; n < word.size(); ++n)
            acc += h[m][n] * word[n];
        s[m] = static_cast<std::uint8_t>(acc % 2);
    }
    return s;
}

/// Random valid base matrix with at most max_rows x max_cols blocks and
/// z <= max_z; n_cols > n_rows.
inline BaseMatrix random_base(std::mt19937_64& rng, std::size_t max_rows = 6, std::size_t max_cols = 12,
                              std::size_t max_z = 16, double zero_probability = 0.4)
{
    std::uniform_int_distribution<std::size_t> rows_dist(1, max_rows);
    const std::size_t rows = rows_dist(rng);
    std::uniform_int_distribution<std::size_t> cols_dist(rows + 1, std::max(rows + 1, max_cols));
    const std::size_t cols = cols_dist(rng);
    std::uniform_int_distribution<std::size_t> z_dist(1, max_z);
    const std::size_t z = z_dist(rng);
    std::uniform_int_distribution<int> shift_dist(0, static_cast<int>(z) - 1);
    std::bernoulli_distribution zero(zero_probability);
    std::uniform_int_distribution<std::size_t> col_pick(0, cols - 1);

    std::vector<int> shifts(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        bool any = false;
        for (std::size_t c = 0; c < cols; ++c) {
            shifts[r * cols + c] = zero(rng) ? -1 : shift_dist(rng);
            any = any || shifts[r * cols + c] >= 0;
        }
        if (!any)
            shifts[r * cols + col_pick(rng)] = shift_dist(rng);
    }
    return BaseMatrix(rows, cols, z, std::move(shifts));
}

/// Scalar sum-product (tanh rule) over one check, long double precision.
inline std::vector<long double> tanh_rule(const std::vector<double>& q, bool odd_parity)
{
    std::vector<long double> out(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) {
        long double prod = 1.0L;
        for (std::size_t i = 0; i < q.size(); ++i)
            if (i != j)
                prod *= std::tanh(static_cast<long double>(q[i]) / 2.0L);
        const long double r = 2.0L * std::atanh(prod);
        out[j] = odd_parity ? -r : r;
    }
    return out;
}

/// Exhaustive maximum-likelihood decoding over all words w with H w = s:
/// maximizes sum_n llr_n * (1 - 2 w_n). Only for block length <= 24.
inline std::vector<std::uint8_t> exhaustive_ml(const DenseMatrix& h, const std::vector<std::uint8_t>& syndrome,
                                               const std::vector<double>& llr)
{
    const std::size_t n = llr.size();
    std::vector<std::uint8_t> best;
    double best_metric = -INFINITY;
    std::vector<std::uint8_t> word(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t b = 0; b < n; ++b)
            word[b] = static_cast<std::uint8_t>((mask >> b) & 1U);
        if (dense_syndrome(h, word) != syndrome)
            continue;
        double metric = 0.0;
        for (std::size_t b = 0; b < n; ++b)
            metric += word[b] ? -llr[b] : llr[b];
        if (metric > best_metric) {
            best_metric = metric;
            best = word;
        }
    }
    return best;
}

/// Wilson score interval for k successes out of n at ~95% confidence.
struct Interval {
    double low;
    double high;
};

inline Interval wilson_interval(std::size_t k, std::size_t n, double z = 1.959963984540054)
{
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double denom = 1.0 + z * z / nn;
    const double centre = (p + z * z / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

} // namespace qcldpc::testing
