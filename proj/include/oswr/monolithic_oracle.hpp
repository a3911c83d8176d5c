#pragma once

#include "oswr/field.hpp"
#include "oswr/grid.hpp"
#include "oswr/problem.hpp"
#include "oswr/subdomain_solver.hpp"

namespace oswr {

/// Reference solution u of the undecomposed problem on the full grid.
struct GlobalSolution {
    SpaceTimeField values;  ///< (level, axis node, cross node)

    double at(std::size_t n, std::size_t j, std::size_t i) const { return values(n, j, i); }

    /// Copy of the nodes in `range`, shaped like a SubdomainSolution.
    SubdomainSolution restrict_to(AxisRange range, std::size_t id = 0) const;
};

/// Backward-Euler march with Dirichlet data g on every face. Runs
/// check_assumptions on the grid times first.
GlobalSolution solve_global(const ParabolicProblem& problem, const SpaceTimeGrid& grid);

} // namespace oswr
