#include "qcldpc/layer_schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcldpc {

ConflictGraph::ConflictGraph(std::size_t n_rows) : n_(n_rows), adjacency_(n_rows * n_rows, 0) {}

void ConflictGraph::connect(std::size_t i, std::size_t j)
{
    if (i == j)
        return;
    adjacency_[i * n_ + j] = 1;
    adjacency_[j * n_ + i] = 1;
}

std::vector<std::size_t> ConflictGraph::neighbors(std::size_t i) const
{
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j)
        if (adjacent(i, j))
            out.push_back(j);
    return out;
}

std::size_t ConflictGraph::edge_count() const noexcept
{
    return static_cast<std::size_t>(std::count(adjacency_.begin(), adjacency_.end(), std::uint8_t{1})) / 2;
}

bool ConflictGraph::is_complete() const noexcept
{
    return edge_count() == n_ * (n_ - 1) / 2;
}

ConflictGraph conflict_graph(const BaseMatrix& base)
{
    ConflictGraph graph(base.n_rows());
    for (std::size_t c = 0; c < base.n_cols(); ++c) {
        for (std::size_t i = 0; i < base.n_rows(); ++i) {
            if (base.is_zero(i, c))
                continue;
            for (std::size_t j = i + 1; j < base.n_rows(); ++j)
                if (!base.is_zero(j, c))
                    graph.connect(i, j);
        }
    }
    return graph;
}

LayerSchedule::LayerSchedule(std::vector<std::vector<std::size_t>> layers, std::size_t n_rows)
    : layers_(std::move(layers)), n_rows_(n_rows)
{
    if (layers_.empty())
        throw std::invalid_argument("schedule has no layers");
    std::vector<bool> seen(n_rows_, false);
    std::size_t count = 0;
    for (auto& layer : layers_) {
        if (layer.empty())
            throw std::invalid_argument("schedule contains an empty layer");
        std::sort(layer.begin(), layer.end());
        for (const auto row : layer) {
            if (row >= n_rows_)
                throw std::invalid_argument("schedule row index " + std::to_string(row) + " out of range");
            if (seen[row])
                throw std::invalid_argument("schedule lists row " + std::to_string(row) + " twice");
            seen[row] = true;
            ++count;
        }
    }
    if (count != n_rows_)
        throw std::invalid_argument("schedule does not cover every row");
}

std::size_t LayerSchedule::k1() const noexcept
{
    std::size_t k = layers_.front().size();
    for (const auto& layer : layers_)
        k = std::min(k, layer.size());
    return k;
}

std::size_t LayerSchedule::max_layer_size() const noexcept
{
    std::size_t k = 0;
    for (const auto& layer : layers_)
        k = std::max(k, layer.size());
    return k;
}

LayerSchedule single_row_schedule(std::size_t n_rows)
{
    std::vector<std::vector<std::size_t>> layers(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r)
        layers[r] = {r};
    return LayerSchedule(std::move(layers), n_rows);
}

LayerSchedule greedy_schedule(const BaseMatrix& base)
{
    const auto graph = conflict_graph(base);
    std::vector<std::vector<std::size_t>> layers;
    for (std::size_t row = 0; row < base.n_rows(); ++row) {
        auto fits = [&](const std::vector<std::size_t>& layer) {
            return std::none_of(layer.begin(), layer.end(), [&](std::size_t other) { return graph.adjacent(row, other); });
        };
        auto it = std::find_if(layers.begin(), layers.end(), fits);
        if (it == layers.end())
            layers.push_back({row});
        else
            it->push_back(row);
    }
    return LayerSchedule(std::move(layers), base.n_rows());
}

bool is_conflict_free(const LayerSchedule& schedule, const BaseMatrix& base)
{
    if (schedule.n_rows() != base.n_rows())
        return false;
    std::vector<std::size_t> owner(base.n_cols());
    for (std::size_t l = 0; l < schedule.n_layers(); ++l) {
        std::fill(owner.begin(), owner.end(), base.n_rows());
        for (const auto row : schedule.layer(l)) {
            for (std::size_t c = 0; c < base.n_cols(); ++c) {
                if (base.is_zero(row, c))
                    continue;
                if (owner[c] != base.n_rows())
                    return false;
                owner[c] = row;
            }
        }
    }
    return true;
}

std::string dump_schedule(const LayerSchedule& schedule)
{
    std::string out;
    for (const auto& layer : schedule.layers()) {
        for (std::size_t i = 0; i < layer.size(); ++i) {
            if (i != 0)
                out += ' ';
            out += std::to_string(layer[i]);
        }
        out += '\n';
    }
    return out;
}

double utilization_fraction(std::size_t k1, std::size_t k2, std::size_t z, double lane_budget)
{
    if (k1 == 0 || k2 == 0 || z == 0)
        throw std::invalid_argument("k1, k2 and z must be positive");
    if (!(lane_budget > 0.0))
        throw std::invalid_argument("lane budget must be positive");
    const double lanes = static_cast<double>(k1) * static_cast<double>(k2) * static_cast<double>(z);
    if (lanes > lane_budget)
        throw std::domain_error("k1*k2*z = " + std::to_string(lanes) + " exceeds the lane budget");
    return lanes / lane_budget;
}

UtilizationReport utilization(const LayerSchedule& schedule, std::size_t k2, std::size_t z, double lane_budget)
{
    UtilizationReport report;
    report.k1 = schedule.k1();
    report.k2 = k2;
    report.z = z;
    report.lane_budget = lane_budget;
    report.utilization = utilization_fraction(report.k1, k2, z, lane_budget);
    report.per_layer.reserve(schedule.n_layers());
    for (const auto& layer : schedule.layers())
        report.per_layer.push_back(utilization_fraction(layer.size(), k2, z, lane_budget));
    return report;
}

} // namespace qcldpc
