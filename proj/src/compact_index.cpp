#include "qcldpc/compact_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcldpc {

CompactIndex build_compact_index(const BaseMatrix& base, const LayerSchedule& schedule)
{
    if (schedule.n_rows() != base.n_rows())
        throw std::invalid_argument("schedule covers " + std::to_string(schedule.n_rows())
                                    + " rows, matrix has " + std::to_string(base.n_rows()));
    if (!is_conflict_free(schedule, base))
        throw std::invalid_argument("schedule merges rows that share a base column");

    CompactIndex index;
    index.z_ = base.z();
    index.col_degrees_.assign(base.n_cols(), 0);
    index.edges_.reserve(base.edge_count());
    index.rows_.reserve(base.n_rows());
    index.layer_offsets_.push_back(0);

    std::size_t slot = 0;
    for (const auto& layer : schedule.layers()) {
        for (const auto r : layer) {
            CompactRow row;
            row.base_row = r;
            row.layer_slot = slot;
            row.first_edge = index.edges_.size();
            for (std::size_t c = 0; c < base.n_cols(); ++c) {
                if (base.is_zero(r, c))
                    continue;
                index.edges_.push_back({static_cast<std::uint32_t>(base.shift(r, c)),
                                        static_cast<std::uint32_t>(slot), static_cast<std::uint32_t>(c)});
                ++index.col_degrees_[c];
            }
            row.degree = index.edges_.size() - row.first_edge;
            index.max_row_degree_ = std::max(index.max_row_degree_, row.degree);
            index.rows_.push_back(row);
            ++slot;
        }
        index.layer_offsets_.push_back(index.rows_.size());
    }
    return index;
}

} // namespace qcldpc
