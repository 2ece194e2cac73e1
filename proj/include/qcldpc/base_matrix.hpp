#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcldpc {

/// Shift value marking an all-zero Z x Z block.
inline constexpr int kZeroBlock = -1;

/// Quasi-cyclic base matrix: a grid of circulant shifts plus the expansion
/// factor Z. Entry a >= 0 stands for the identity cyclically shifted right by
/// a; kZeroBlock stands for the zero block.
///
/// Construction validates every shift and rejects all-zero rows. Square or
/// tall matrices are accepted here (schedules and syndromes are well defined
/// for them); only descriptor() requires a positive rate.
class BaseMatrix {
public:
    BaseMatrix(std::size_t n_rows, std::size_t n_cols, std::size_t z, std::vector<int> shifts);

    std::size_t n_rows() const noexcept { return n_rows_; }
    std::size_t n_cols() const noexcept { return n_cols_; }
    std::size_t z() const noexcept { return z_; }

    int shift(std::size_t row, std::size_t col) const { return shifts_[row * n_cols_ + col]; }
    bool is_zero(std::size_t row, std::size_t col) const { return shift(row, col) == kZeroBlock; }
    std::span<const int> row(std::size_t row) const
    {
        return {shifts_.data() + row * n_cols_, n_cols_};
    }

    /// Number of non-zero blocks.
    std::size_t edge_count() const noexcept;

    friend bool operator==(const BaseMatrix&, const BaseMatrix&) = default;

private:
    std::size_t n_rows_;
    std::size_t n_cols_;
    std::size_t z_;
    std::vector<int> shifts_;
};

enum class ParseErrorKind {
    malformed_header,
    bad_token,
    wrong_column_count,
    wrong_row_count,
    shift_out_of_range,
    empty_check_row,
};

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& what);

    ParseErrorKind kind() const noexcept { return kind_; }
    /// 1-based line number of the offending line.
    std::size_t line() const noexcept { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

/// Parses the text format:
///   line 1:        "n_rows n_cols z"
///   next n_rows:   n_cols whitespace-separated integers (-1 or [0, z-1])
/// Trailing blank lines are ignored; anything else after the last row is an
/// error.
BaseMatrix parse_base_matrix(std::string_view text);

/// Inverse of parse_base_matrix: LF endings, single spaces, no trailing
/// whitespace.
std::string serialize(const BaseMatrix& base);

/// Reads and parses a matrix file. Throws std::ios_base::failure when the
/// file cannot be read and ParseError on malformed content.
BaseMatrix load_base_matrix(const std::string& path);

/// Expanded binary parity-check matrix in compressed row and column form.
/// Check r = i*z + k (base row i, offset k) touches variable
/// c*z + ((k + shift(i, c)) mod z) for every non-zero block (i, c).
/// Edges are numbered in row-major order; col_edges() maps each variable to
/// the ids of its edges.
class ParityCheckMatrix {
public:
    std::size_t n_checks() const noexcept { return row_offsets_.size() - 1; }
    std::size_t n_vars() const noexcept { return col_offsets_.size() - 1; }
    std::size_t n_edges() const noexcept { return row_vars_.size(); }

    /// Sorted ascending variable indices adjacent to check m.
    std::span<const std::uint32_t> row(std::size_t m) const
    {
        return {row_vars_.data() + row_offsets_[m], row_offsets_[m + 1] - row_offsets_[m]};
    }
    std::size_t row_begin(std::size_t m) const { return row_offsets_[m]; }

    /// Sorted ascending check indices adjacent to variable n.
    std::span<const std::uint32_t> col(std::size_t n) const
    {
        return {col_checks_.data() + col_offsets_[n], col_offsets_[n + 1] - col_offsets_[n]};
    }
    /// Edge ids (row-major numbering) of variable n, aligned with col(n).
    std::span<const std::uint32_t> col_edges(std::size_t n) const
    {
        return {col_edges_.data() + col_offsets_[n], col_offsets_[n + 1] - col_offsets_[n]};
    }

    std::span<const std::uint32_t> edge_vars() const noexcept { return row_vars_; }

private:
    friend ParityCheckMatrix expand(const BaseMatrix& base);

    std::vector<std::size_t> row_offsets_;
    std::vector<std::uint32_t> row_vars_;
    std::vector<std::size_t> col_offsets_;
    std::vector<std::uint32_t> col_checks_;
    std::vector<std::uint32_t> col_edges_;
};

ParityCheckMatrix expand(const BaseMatrix& base);

struct CodeDescriptor {
    std::size_t block_length = 0;
    std::size_t n_checks = 0;
    double rate = 0.0;
    std::size_t total_edges = 0;
    std::size_t total_expanded_edges = 0;
};

/// Throws std::invalid_argument unless n_cols > n_rows.
CodeDescriptor descriptor(const BaseMatrix& base);

} // namespace qcldpc
