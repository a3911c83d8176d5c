#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oswr {

/// Values over (time level) x (axis node) x (cross node), cross fastest.
class SpaceTimeField {
public:
    SpaceTimeField() = default;
    SpaceTimeField(std::size_t levels, std::size_t axis_nodes, std::size_t cross_nodes, double fill = 0.0)
        : levels_(levels), axis_(axis_nodes), cross_(cross_nodes),
          data_(levels * axis_nodes * cross_nodes, fill)
    {
    }

    std::size_t levels() const noexcept { return levels_; }
    std::size_t axis_nodes() const noexcept { return axis_; }
    std::size_t cross_nodes() const noexcept { return cross_; }
    std::size_t level_size() const noexcept { return axis_ * cross_; }

    double& operator()(std::size_t n, std::size_t j, std::size_t i) noexcept
    {
        return data_[(n * axis_ + j) * cross_ + i];
    }
    double operator()(std::size_t n, std::size_t j, std::size_t i) const noexcept
    {
        return data_[(n * axis_ + j) * cross_ + i];
    }

    std::span<double> level(std::size_t n) noexcept
    {
        return {data_.data() + n * level_size(), level_size()};
    }
    std::span<const double> level(std::size_t n) const noexcept
    {
        return {data_.data() + n * level_size(), level_size()};
    }

    std::span<const double> values() const noexcept { return data_; }
    std::span<double> values() noexcept { return data_; }

    bool same_shape(const SpaceTimeField& other) const noexcept
    {
        return levels_ == other.levels_ && axis_ == other.axis_ && cross_ == other.cross_;
    }

    bool operator==(const SpaceTimeField&) const = default;

private:
    std::size_t levels_ = 0;
    std::size_t axis_ = 0;
    std::size_t cross_ = 0;
    std::vector<double> data_;
};

/// Time series on one interface plane: values(n, i) for time level n and
/// cross node i.
class PlaneSeries {
public:
    PlaneSeries() = default;
    PlaneSeries(std::size_t levels, std::size_t cross_nodes, double fill = 0.0)
        : levels_(levels), cross_(cross_nodes), data_(levels * cross_nodes, fill)
    {
    }

    std::size_t levels() const noexcept { return levels_; }
    std::size_t cross_nodes() const noexcept { return cross_; }

    double& operator()(std::size_t n, std::size_t i) noexcept { return data_[n * cross_ + i]; }
    double operator()(std::size_t n, std::size_t i) const noexcept { return data_[n * cross_ + i]; }

    std::span<const double> level(std::size_t n) const noexcept
    {
        return {data_.data() + n * cross_, cross_};
    }
    std::span<const double> values() const noexcept { return data_; }

    bool operator==(const PlaneSeries&) const = default;

private:
    std::size_t levels_ = 0;
    std::size_t cross_ = 0;
    std::vector<double> data_;
};

} // namespace oswr
