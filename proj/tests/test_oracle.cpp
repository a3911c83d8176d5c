#include "doctest.h"

#include "oswr/error.hpp"
#include "oswr/monolithic_oracle.hpp"
#include "support.hpp"

#include <cmath>

using namespace oswr;
using oswr::test::unit_domain;

TEST_CASE("constant solution is preserved")
{
    for (int dim : {1, 2}) {
        ParabolicProblem problem;
        problem.domain = unit_domain(dim);
        problem.coeffs = coefficient_preset(dim == 1 ? "varcoef1d" : "varcoef2d");
        problem.coeffs.c = [](double, double) { return 0.0; };
        problem.f = [](double, double, double) { return 0.0; };
        problem.g = [](double, double, double) { return 1.0; };
        auto grid = build_grid(problem.domain, 9, 21, 7);
        auto sol = solve_global(problem, grid);
        for (double v : sol.values.values())
            CHECK(std::abs(v - 1.0) <= 1e-11);
    }
}

TEST_CASE("zero data")
{
    auto problem = make_preset_problem("zero1d", unit_domain());
    auto grid = build_grid(problem.domain, 1, 31, 9);
    CHECK(test::max_abs(solve_global(problem, grid).values.values()) == 0.0);
}

TEST_CASE("manufactured error shrinks under refinement")
{
    auto problem = make_preset_problem("heat1d", unit_domain());
    double previous = 1e300;
    for (std::size_t level = 0; level < 4; ++level) {
        const std::size_t nx = 10 * (std::size_t{1} << level) + 1;
        const std::size_t nt = 10 * (std::size_t{1} << (2 * level));
        auto grid = build_grid(problem.domain, 1, nx, nt);
        auto sol = solve_global(problem, grid);
        double err = 0.0;
        for (std::size_t n = 0; n < grid.levels(); ++n)
            for (std::size_t j = 0; j < nx; ++j)
                err = std::max(err, std::abs(sol.at(n, j, 0) - problem.g(grid.time(n), 0.0, grid.axis(j))));
        CHECK(err < previous);
        CHECK(err <= 0.1 * (grid.hx_axis * grid.hx_axis + grid.dt));
        previous = err;
    }
}

TEST_CASE("a single all-covering strip reproduces the oracle")
{
    for (const char* preset : {"varcoef1d", "varcoef2d"}) {
        auto problem = make_preset_problem(preset, unit_domain(preset_dimension(preset)));
        auto grid = build_grid(problem.domain, 9, 25, 8);
        SubdomainEntry whole;
        whole.nodes = {0, grid.nx_axis - 1};
        auto sol = solve_subdomain(problem, grid, whole, dirichlet_trace(problem, grid, 0, Side::Left),
                                   dirichlet_trace(problem, grid, grid.nx_axis - 1, Side::Right),
                                   RobinParameter(3.0));
        auto oracle = solve_global(problem, grid);
        CHECK(test::max_abs_diff(sol.values.values(), oracle.values.values()) <= 1e-12);
    }
}

TEST_CASE("oracle checks the coefficient assumptions")
{
    auto problem = make_preset_problem("heat1d", unit_domain());
    problem.coeffs.a[0][0] = [](double t, double) { return 0.5 - t; };
    auto grid = build_grid(problem.domain, 1, 11, 4);
    CHECK_THROWS_WITH_AS(solve_global(problem, grid), doctest::Contains("NonElliptic"), Error);
}

TEST_CASE("restriction")
{
    auto problem = make_preset_problem("heat1d", unit_domain());
    auto grid = build_grid(problem.domain, 1, 11, 2);
    auto oracle = solve_global(problem, grid);
    auto part = oracle.restrict_to({3, 7}, 4);
    CHECK(part.id == 4);
    CHECK(part.at(2, 5, 0) == oracle.at(2, 5, 0));
    CHECK_THROWS_AS(oracle.restrict_to({3, 11}), Error);
}
