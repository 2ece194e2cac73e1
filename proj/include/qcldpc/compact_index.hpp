#pragma once

#include "qcldpc/base_matrix.hpp"
#include "qcldpc/layer_schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qcldpc {

/// One non-zero block of the base matrix as seen by the decoder.
struct EdgeRecord {
    std::uint32_t shift = 0;
    /// Position of the owning row after rearranging rows into layer order.
    std::uint32_t layer_slot = 0;
    std::uint32_t base_col = 0;

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// A base row in layer order together with the span of its edges.
struct CompactRow {
    std::size_t base_row = 0;
    std::size_t layer_slot = 0;
    std::size_t first_edge = 0;
    std::size_t degree = 0;
};

/// Flat decoder index over a base matrix: rows rearranged into schedule
/// order, edges grouped by layer then row. The check-to-variable message of
/// edge j of expanded check k in row r lives at
/// r.first_edge * z + k * r.degree + j.
class CompactIndex {
public:
    std::size_t z() const noexcept { return z_; }
    std::size_t n_rows() const noexcept { return rows_.size(); }
    std::size_t n_cols() const noexcept { return col_degrees_.size(); }
    std::size_t n_layers() const noexcept { return layer_offsets_.size() - 1; }

    std::size_t block_length() const noexcept { return n_cols() * z_; }
    std::size_t n_checks() const noexcept { return n_rows() * z_; }
    std::size_t total_edges() const noexcept { return edges_.size(); }
    std::size_t expanded_edges() const noexcept { return edges_.size() * z_; }
    std::size_t max_row_degree() const noexcept { return max_row_degree_; }

    std::span<const EdgeRecord> edges() const noexcept { return edges_; }
    std::span<const CompactRow> rows() const noexcept { return rows_; }
    std::span<const CompactRow> layer_rows(std::size_t layer) const
    {
        return {rows_.data() + layer_offsets_[layer], layer_offsets_[layer + 1] - layer_offsets_[layer]};
    }
    std::span<const EdgeRecord> row_edges(const CompactRow& row) const
    {
        return {edges_.data() + row.first_edge, row.degree};
    }
    std::span<const std::size_t> col_degrees() const noexcept { return col_degrees_; }

    /// Expanded variable touched by edge e of expanded check offset k.
    std::size_t variable(const EdgeRecord& e, std::size_t k) const noexcept
    {
        std::size_t offset = k + e.shift;
        if (offset >= z_)
            offset -= z_;
        return static_cast<std::size_t>(e.base_col) * z_ + offset;
    }

private:
    friend CompactIndex build_compact_index(const BaseMatrix&, const LayerSchedule&);

    std::size_t z_ = 0;
    std::size_t max_row_degree_ = 0;
    std::vector<EdgeRecord> edges_;
    std::vector<CompactRow> rows_;
    std::vector<std::size_t> layer_offsets_;
    std::vector<std::size_t> col_degrees_;
};

/// Throws std::invalid_argument when the schedule does not match the matrix
/// or puts two column-overlapping rows into one layer.
CompactIndex build_compact_index(const BaseMatrix& base, const LayerSchedule& schedule);

} // namespace qcldpc
