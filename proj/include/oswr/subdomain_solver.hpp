#pragma once

#include "oswr/banded.hpp"
#include "oswr/decomposition.hpp"
#include "oswr/field.hpp"
#include "oswr/grid.hpp"
#include "oswr/problem.hpp"

#include <cstddef>
#include <vector>

namespace oswr {

/// Robin weight p of the transmission operator d/dx_n + p. Must be positive.
class RobinParameter {
public:
    explicit RobinParameter(double p);
    double value() const noexcept { return p_; }

private:
    double p_;
};

/// `Forward` applies +d/dx_n on both interfaces of every strip. `Outward`
/// uses the outward normal derivative, i.e. -d/dx_n on left interfaces.
enum class RobinOrientation { Forward, Outward };

enum class Side { Left, Right };
enum class TraceKind { Robin, Dirichlet };

/// Sign s of the axis derivative in the Robin operator s*du/dx_n + p*u
/// applied on the given face.
double robin_normal_sign(Side side, RobinOrientation orientation) noexcept;

/// Data imposed on one interface plane of a subdomain for every time level.
struct TraceData {
    double abscissa = 0.0;
    std::size_t node = 0;
    Side side = Side::Left;
    TraceKind kind = TraceKind::Robin;
    PlaneSeries values;  ///< (time level, cross node)

    bool operator==(const TraceData&) const = default;
};

/// u_l^k on the subdomain's nodes; values(n, j - nodes.first, i).
struct SubdomainSolution {
    std::size_t id = 0;
    AxisRange nodes;
    SpaceTimeField values;

    double at(std::size_t n, std::size_t global_j, std::size_t i) const
    {
        return values(n, global_j - nodes.first, i);
    }
};

inline constexpr double kSolveResidualTolerance = 1e-12;

/// Backward-Euler solver for one strip. Step matrices do not depend on the
/// face data, so they are assembled and factored once at construction;
/// solve() is const and may run concurrently on one instance.
class SubdomainSolver {
public:
    /// Face kinds follow the entry: Robin toward a neighbour, Dirichlet on
    /// the extreme faces x_n = alpha and x_n = beta.
    SubdomainSolver(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                    const SubdomainEntry& entry, RobinParameter p, RobinOrientation orientation);

    /// Throws DataMismatch when a trace has the wrong kind, node or shape,
    /// and SingularSystem when a step residual exceeds kSolveResidualTolerance.
    SubdomainSolution solve(const TraceData& left, const TraceData& right) const;

    const SubdomainEntry& entry() const noexcept { return entry_; }
    FaceKind left_kind() const noexcept { return left_kind_; }
    FaceKind right_kind() const noexcept { return right_kind_; }

private:
    void check_trace(const TraceData& trace, Side side) const;
    BoundaryClosure closure(const TraceData& left, const TraceData& right, std::size_t level) const;

    ParabolicProblem problem_;
    SpaceTimeGrid grid_;
    SubdomainEntry entry_;
    RobinParameter p_;
    RobinOrientation orientation_;
    FaceKind left_kind_;
    FaceKind right_kind_;
    std::vector<BandedMatrix> matrices_;  ///< per level 1..nt (index level-1)
    std::vector<BandedLU> factors_;
};

/// One-shot form of SubdomainSolver::solve.
SubdomainSolution solve_subdomain(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                                  const SubdomainEntry& entry, const TraceData& left,
                                  const TraceData& right, RobinParameter p,
                                  RobinOrientation orientation = RobinOrientation::Forward);

/// s * D_h u + p * u at `node` for every level, with D_h the centered
/// difference along x_n and s = robin_normal_sign(side, orientation).
/// `side` names the face of the receiving subdomain. Throws NodeOutOfRange
/// unless the node is strictly inside the solution's range.
TraceData extract_robin_trace(const SubdomainSolution& solution, const SpaceTimeGrid& grid,
                              std::size_t node, RobinParameter p, Side side,
                              RobinOrientation orientation = RobinOrientation::Forward);

/// Dirichlet trace with values g on the plane x_n = grid.axis(node).
TraceData dirichlet_trace(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                          std::size_t node, Side side);

} // namespace oswr
