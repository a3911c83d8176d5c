#include "oswr/monolithic_oracle.hpp"

#include "oswr/error.hpp"

#include <vector>

namespace oswr {

SubdomainSolution GlobalSolution::restrict_to(AxisRange range, std::size_t id) const
{
    if (range.last >= values.axis_nodes())
        throw Error(ErrorCode::ShapeMismatch, "restriction range exceeds the global grid");
    SubdomainSolution out;
    out.id = id;
    out.nodes = range;
    out.values = SpaceTimeField(values.levels(), range.count(), values.cross_nodes());
    for (std::size_t n = 0; n < values.levels(); ++n)
        for (std::size_t j = range.first; j <= range.last; ++j)
            for (std::size_t i = 0; i < values.cross_nodes(); ++i)
                out.values(n, j - range.first, i) = values(n, j, i);
    return out;
}

GlobalSolution solve_global(const ParabolicProblem& problem, const SpaceTimeGrid& grid)
{
    std::vector<double> times;
    std::vector<double> crosses;
    for (std::size_t n = 0; n < grid.levels(); ++n)
        times.push_back(grid.time(n));
    for (std::size_t i = 0; i < grid.nx_cross; ++i)
        crosses.push_back(grid.cross(i));
    check_assumptions(problem.coeffs, times, crosses);

    // The whole axis as one strip with Dirichlet faces; p is never used.
    SubdomainEntry whole;
    whole.nodes = {0, grid.nx_axis - 1};
    SubdomainSolver solver(problem, grid, whole, RobinParameter(1.0), RobinOrientation::Forward);
    auto solution = solver.solve(dirichlet_trace(problem, grid, 0, Side::Left),
                                 dirichlet_trace(problem, grid, grid.nx_axis - 1, Side::Right));
    return GlobalSolution{std::move(solution.values)};
}

} // namespace oswr
