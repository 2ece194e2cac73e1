#pragma once

#include "qcldpc/base_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qcldpc {

/// Reference lane budget of the utilization metric (2^26 concurrent lanes).
inline constexpr double kReferenceLaneBudget = 67108864.0;

/// Symmetric row-conflict relation: rows i and j conflict when some base
/// column is non-zero in both, i.e. merging them would give a variable
/// node degree 2 inside one layer.
class ConflictGraph {
public:
    explicit ConflictGraph(std::size_t n_rows);

    std::size_t n_rows() const noexcept { return n_; }
    bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i * n_ + j] != 0; }
    void connect(std::size_t i, std::size_t j);

    std::vector<std::size_t> neighbors(std::size_t i) const;
    std::size_t edge_count() const noexcept;
    bool is_complete() const noexcept;

private:
    std::size_t n_;
    std::vector<std::uint8_t> adjacency_;
};

ConflictGraph conflict_graph(const BaseMatrix& base);

/// Ordered partition of base rows into layers. Each layer keeps its rows in
/// ascending order. Partition validity is checked on construction; column
/// disjointness within a layer depends on the matrix and is checked by
/// is_conflict_free().
class LayerSchedule {
public:
    LayerSchedule(std::vector<std::vector<std::size_t>> layers, std::size_t n_rows);

    const std::vector<std::vector<std::size_t>>& layers() const noexcept { return layers_; }
    std::span<const std::size_t> layer(std::size_t l) const { return layers_[l]; }
    std::size_t n_layers() const noexcept { return layers_.size(); }
    std::size_t n_rows() const noexcept { return n_rows_; }

    /// Smallest layer size; the k1 used by utilization().
    std::size_t k1() const noexcept;
    std::size_t max_layer_size() const noexcept;

    friend bool operator==(const LayerSchedule&, const LayerSchedule&) = default;

private:
    std::vector<std::vector<std::size_t>> layers_;
    std::size_t n_rows_;
};

/// One row per layer, in row order.
LayerSchedule single_row_schedule(std::size_t n_rows);

/// First-fit in row order: each row joins the earliest layer containing no
/// conflicting row, otherwise opens a new layer.
LayerSchedule greedy_schedule(const BaseMatrix& base);

bool is_conflict_free(const LayerSchedule& schedule, const BaseMatrix& base);

/// One line per layer, row indices separated by single spaces.
std::string dump_schedule(const LayerSchedule& schedule);

struct UtilizationReport {
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    std::size_t z = 0;
    double lane_budget = kReferenceLaneBudget;
    double utilization = 0.0;
    /// Same formula evaluated with each layer's own row count.
    std::vector<double> per_layer;
};

/// k1 * k2 * z / lane_budget. Throws std::invalid_argument for zero
/// arguments or a non-positive budget, std::domain_error when the product
/// exceeds the budget.
double utilization_fraction(std::size_t k1, std::size_t k2, std::size_t z,
                            double lane_budget = kReferenceLaneBudget);

UtilizationReport utilization(const LayerSchedule& schedule, std::size_t k2, std::size_t z,
                              double lane_budget = kReferenceLaneBudget);

} // namespace qcldpc
