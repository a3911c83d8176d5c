#pragma once

#include "oswr/banded.hpp"
#include "oswr/problem.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace oswr {

/// Uniform tensor grid over the closed cylinder. In one dimension
/// nx_cross is 1 and the cross accessors return 0.
struct SpaceTimeGrid {
    DomainSpec domain;
    std::size_t nx_cross = 1;
    std::size_t nx_axis = 0;
    std::size_t nt = 0;
    double hx_cross = 0.0;
    double hx_axis = 0.0;
    double dt = 0.0;

    int dim() const noexcept { return domain.dim; }
    std::size_t levels() const noexcept { return nt + 1; }

    double axis(std::size_t j) const noexcept
    {
        return domain.alpha + (domain.beta - domain.alpha) * static_cast<double>(j) /
                                  static_cast<double>(nx_axis - 1);
    }
    double cross(std::size_t i) const noexcept
    {
        if (domain.dim == 1)
            return 0.0;
        return domain.cross_lo + (domain.cross_hi - domain.cross_lo) * static_cast<double>(i) /
                                     static_cast<double>(nx_cross - 1);
    }
    double time(std::size_t n) const noexcept
    {
        return domain.T * static_cast<double>(n) / static_cast<double>(nt);
    }
    /// Lateral faces of D carry Dirichlet data (two-dimensional grids only).
    bool is_lateral(std::size_t i) const noexcept
    {
        return domain.dim == 2 && (i == 0 || i + 1 == nx_cross);
    }
};

/// Throws BadResolution when nx_axis < 3, nt < 1, or (2D) nx_cross < 3.
/// `nx_cross` is ignored for one-dimensional domains.
SpaceTimeGrid build_grid(const DomainSpec& domain, std::size_t nx_cross, std::size_t nx_axis,
                         std::size_t nt);

/// Inclusive range [first, last] of global axis node indices.
struct AxisRange {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t count() const noexcept { return last - first + 1; }
    bool contains(std::size_t j) const noexcept { return j >= first && j <= last; }
    bool strictly_contains(std::size_t j) const noexcept { return j > first && j < last; }
};

enum class FaceKind { Dirichlet, Robin };

/// Closure of one axis end face for a single time step.
///
/// Robin faces enforce  s * D_h u + p * u = data  with D_h the centered
/// difference across the face node; the ghost node outside the range is
/// eliminated with this relation.
struct FaceClosure {
    FaceKind kind = FaceKind::Dirichlet;
    std::span<const double> values;  ///< one entry per cross node
    double p = 0.0;
    double normal_sign = 1.0;        ///< s
};

struct BoundaryClosure {
    FaceClosure left;
    FaceClosure right;
};

/// One backward-Euler step  (I/dt + L_h(t_next)) u_next = u_prev/dt + f(t_next).
struct BandedSystem {
    BandedMatrix matrix;
    std::vector<double> rhs;

    std::size_t bandwidth() const noexcept { return matrix.lower(); }
};

/// Bandwidth of the step matrix: 1 in 1D, nx_cross + 1 in 2D (the mixed
/// derivative couples diagonal neighbours).
std::size_t step_bandwidth(const SpaceTimeGrid& grid) noexcept;

/// Assembles the step system on `range` (unknowns ordered axis-major, cross
/// fastest). `u_prev` holds the previous level on the range.
BandedSystem assemble_step(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                           AxisRange range, std::size_t level_next, const BoundaryClosure& bc,
                           std::span<const double> u_prev);

/// Matrix-only part of assemble_step; face values are not read.
BandedMatrix assemble_step_matrix(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                                  AxisRange range, std::size_t level_next, const BoundaryClosure& bc);

/// Right-hand-side-only part of assemble_step.
std::vector<double> assemble_step_rhs(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                                      AxisRange range, std::size_t level_next,
                                      const BoundaryClosure& bc, std::span<const double> u_prev);

} // namespace oswr
