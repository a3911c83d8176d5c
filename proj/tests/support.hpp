#pragma once

#include "oswr/decomposition.hpp"
#include "oswr/grid.hpp"
#include "oswr/problem.hpp"

#include <cmath>
#include <cstddef>
#include <span>

namespace oswr::test {

inline DomainSpec unit_domain(int dim = 1, double T = 1.0)
{
    DomainSpec d;
    d.dim = dim;
    d.T = T;
    return d;
}

inline SubdomainLayout uniform_layout(const SpaceTimeGrid& grid, std::size_t count, double overlap)
{
    return snap(DecompositionSpec::uniform(grid.domain.alpha, grid.domain.beta, count, overlap), grid);
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b)
{
    double best = 0.0;
    for (std::size_t k = 0; k < a.size() && k < b.size(); ++k)
        best = std::max(best, std::abs(a[k] - b[k]));
    return best;
}

inline double max_abs(std::span<const double> a)
{
    double best = 0.0;
    for (double v : a)
        best = std::max(best, std::abs(v));
    return best;
}

} // namespace oswr::test
