#include "oswr/subdomain_solver.hpp"

#include "oswr/error.hpp"

#include <algorithm>
#include <string>

namespace oswr {

RobinParameter::RobinParameter(double p) : p_(p)
{
    if (!(p > 0.0))
        throw Error(ErrorCode::InvalidArgument, "Robin parameter p must be positive");
}

double robin_normal_sign(Side side, RobinOrientation orientation) noexcept
{
    return (side == Side::Left && orientation == RobinOrientation::Outward) ? -1.0 : 1.0;
}

SubdomainSolver::SubdomainSolver(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                                 const SubdomainEntry& entry, RobinParameter p,
                                 RobinOrientation orientation)
    : problem_(problem),
      grid_(grid),
      entry_(entry),
      p_(p),
      orientation_(orientation),
      left_kind_(entry.left_neighbor ? FaceKind::Robin : FaceKind::Dirichlet),
      right_kind_(entry.right_neighbor ? FaceKind::Robin : FaceKind::Dirichlet)
{
    if (entry.nodes.last >= grid.nx_axis || entry.nodes.count() < 3)
        throw Error(ErrorCode::InvalidArgument,
                    "subdomain " + std::to_string(entry.id + 1) + " needs at least 3 axis nodes on the grid");

    BoundaryClosure bc;
    bc.left = {left_kind_, {}, p_.value(), robin_normal_sign(Side::Left, orientation_)};
    bc.right = {right_kind_, {}, p_.value(), robin_normal_sign(Side::Right, orientation_)};
    matrices_.reserve(grid.nt);
    factors_.reserve(grid.nt);
    for (std::size_t n = 1; n <= grid.nt; ++n) {
        matrices_.push_back(assemble_step_matrix(problem_, grid_, entry_.nodes, n, bc));
        factors_.emplace_back(matrices_.back());
    }
}

void SubdomainSolver::check_trace(const TraceData& trace, Side side) const
{
    const FaceKind kind = side == Side::Left ? left_kind_ : right_kind_;
    const TraceKind expected = kind == FaceKind::Robin ? TraceKind::Robin : TraceKind::Dirichlet;
    const std::size_t node = side == Side::Left ? entry_.nodes.first : entry_.nodes.last;
    const std::string where = std::string(side == Side::Left ? "left" : "right") + " trace of subdomain " +
                              std::to_string(entry_.id + 1);
    if (trace.kind != expected)
        throw Error(ErrorCode::DataMismatch, where + " has the wrong kind for this face");
    if (trace.node != node)
        throw Error(ErrorCode::DataMismatch, where + " sits on node " + std::to_string(trace.node) +
                                                 ", expected " + std::to_string(node));
    if (trace.values.levels() != grid_.levels() || trace.values.cross_nodes() != grid_.nx_cross)
        throw Error(ErrorCode::DataMismatch, where + " has a shape that differs from the grid");
}

BoundaryClosure SubdomainSolver::closure(const TraceData& left, const TraceData& right,
                                         std::size_t level) const
{
    BoundaryClosure bc;
    bc.left = {left_kind_, left.values.level(level), p_.value(),
               robin_normal_sign(Side::Left, orientation_)};
    bc.right = {right_kind_, right.values.level(level), p_.value(),
                robin_normal_sign(Side::Right, orientation_)};
    return bc;
}

SubdomainSolution SubdomainSolver::solve(const TraceData& left, const TraceData& right) const
{
    check_trace(left, Side::Left);
    check_trace(right, Side::Right);

    SubdomainSolution solution;
    solution.id = entry_.id;
    solution.nodes = entry_.nodes;
    solution.values = SpaceTimeField(grid_.levels(), entry_.nodes.count(), grid_.nx_cross);

    for (std::size_t j = entry_.nodes.first; j <= entry_.nodes.last; ++j)
        for (std::size_t i = 0; i < grid_.nx_cross; ++i)
            solution.values(0, j - entry_.nodes.first, i) = problem_.g(0.0, grid_.cross(i), grid_.axis(j));

    for (std::size_t n = 1; n <= grid_.nt; ++n) {
        auto rhs = assemble_step_rhs(problem_, grid_, entry_.nodes, n, closure(left, right, n),
                                     solution.values.level(n - 1));
        auto next = solution.values.level(n);
        std::copy(rhs.begin(), rhs.end(), next.begin());
        factors_[n - 1].solve(next);
        const double residual = relative_residual(matrices_[n - 1], next, rhs);
        if (!(residual <= kSolveResidualTolerance))
            throw Error(ErrorCode::SingularSystem,
                        "subdomain " + std::to_string(entry_.id + 1) + " step " + std::to_string(n) +
                            ": relative residual " + std::to_string(residual));
    }
    return solution;
}

SubdomainSolution solve_subdomain(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                                  const SubdomainEntry& entry, const TraceData& left,
                                  const TraceData& right, RobinParameter p, RobinOrientation orientation)
{
    return SubdomainSolver(problem, grid, entry, p, orientation).solve(left, right);
}

TraceData extract_robin_trace(const SubdomainSolution& solution, const SpaceTimeGrid& grid,
                              std::size_t node, RobinParameter p, Side side, RobinOrientation orientation)
{
    if (!solution.nodes.strictly_contains(node))
        throw Error(ErrorCode::NodeOutOfRange,
                    "node " + std::to_string(node) + " is not interior to subdomain " +
                        std::to_string(solution.id + 1));

    TraceData trace;
    trace.abscissa = grid.axis(node);
    trace.node = node;
    trace.side = side;
    trace.kind = TraceKind::Robin;
    trace.values = PlaneSeries(grid.levels(), grid.nx_cross);

    const double s = robin_normal_sign(side, orientation);
    const double inv_2h = 1.0 / (2.0 * grid.hx_axis);
    for (std::size_t n = 0; n < grid.levels(); ++n) {
        for (std::size_t i = 0; i < grid.nx_cross; ++i) {
            const double derivative = (solution.at(n, node + 1, i) - solution.at(n, node - 1, i)) * inv_2h;
            trace.values(n, i) = s * derivative + p.value() * solution.at(n, node, i);
        }
    }
    return trace;
}

TraceData dirichlet_trace(const ParabolicProblem& problem, const SpaceTimeGrid& grid, std::size_t node,
                          Side side)
{
    if (node >= grid.nx_axis)
        throw Error(ErrorCode::NodeOutOfRange, "node " + std::to_string(node) + " outside the grid");
    TraceData trace;
    trace.abscissa = grid.axis(node);
    trace.node = node;
    trace.side = side;
    trace.kind = TraceKind::Dirichlet;
    trace.values = PlaneSeries(grid.levels(), grid.nx_cross);
    for (std::size_t n = 0; n < grid.levels(); ++n)
        for (std::size_t i = 0; i < grid.nx_cross; ++i)
            trace.values(n, i) = problem.g(grid.time(n), grid.cross(i), trace.abscissa);
    return trace;
}

} // namespace oswr
