#include "oswr/grid.hpp"

#include "oswr/error.hpp"

#include <array>
#include <string>

namespace oswr {

SpaceTimeGrid build_grid(const DomainSpec& domain, std::size_t nx_cross, std::size_t nx_axis,
                         std::size_t nt)
{
    domain.validate();
    if (nx_axis < 3)
        throw Error(ErrorCode::BadResolution, "nx_axis must be at least 3");
    if (nt < 1)
        throw Error(ErrorCode::BadResolution, "nt must be at least 1");
    if (domain.dim == 2 && nx_cross < 3)
        throw Error(ErrorCode::BadResolution, "nx_cross must be at least 3");

    SpaceTimeGrid grid;
    grid.domain = domain;
    grid.nx_axis = nx_axis;
    grid.nt = nt;
    grid.nx_cross = domain.dim == 2 ? nx_cross : 1;
    grid.hx_axis = (domain.beta - domain.alpha) / static_cast<double>(nx_axis - 1);
    grid.hx_cross = domain.dim == 2
                        ? (domain.cross_hi - domain.cross_lo) / static_cast<double>(grid.nx_cross - 1)
                        : 0.0;
    grid.dt = domain.T / static_cast<double>(nt);
    return grid;
}

std::size_t step_bandwidth(const SpaceTimeGrid& grid) noexcept
{
    return grid.dim() == 2 ? grid.nx_cross + 1 : 1;
}

namespace {

struct Contribution {
    int di;
    int dj;
    double coef;
};

void check_closure(const SpaceTimeGrid& grid, AxisRange range, const BoundaryClosure& bc, bool need_values)
{
    if (range.last >= grid.nx_axis || range.count() < 2)
        throw Error(ErrorCode::InvalidArgument, "axis range outside the grid or too short");
    for (const FaceClosure* face : {&bc.left, &bc.right}) {
        if (need_values && face->values.size() != grid.nx_cross)
            throw Error(ErrorCode::DataMismatch, "face data has " + std::to_string(face->values.size()) +
                                                     " entries, grid has " +
                                                     std::to_string(grid.nx_cross) + " cross nodes");
    }
    if (bc.left.kind == FaceKind::Robin && range.first == 0)
        throw Error(ErrorCode::InvalidArgument, "Robin face needs a ghost node inside the grid");
    if (bc.right.kind == FaceKind::Robin && range.last + 1 >= grid.nx_axis)
        throw Error(ErrorCode::InvalidArgument, "Robin face needs a ghost node inside the grid");
}

// Shared assembly; either output may be null.
void assemble(const ParabolicProblem& problem, const SpaceTimeGrid& grid, AxisRange range,
              std::size_t level_next, const BoundaryClosure& bc, std::span<const double> u_prev,
              BandedMatrix* matrix, std::vector<double>* rhs)
{
    const std::size_t nc = grid.nx_cross;
    const double t = grid.time(level_next);
    const double dt = grid.dt;
    const double h = grid.hx_axis;
    const double hc = grid.hx_cross;
    const auto& coeffs = problem.coeffs;
    const int axis = grid.dim() - 1;

    auto unknown = [&](std::size_t j, std::size_t i) { return (j - range.first) * nc + i; };
    auto add_matrix = [&](std::size_t row, std::size_t col, double v) {
        if (matrix)
            matrix->add(row, col, v);
    };
    auto add_rhs = [&](std::size_t row, double v) {
        if (rhs)
            (*rhs)[row] += v;
    };

    for (std::size_t j = range.first; j <= range.last; ++j) {
        const double x = grid.axis(j);
        const FaceClosure* face = nullptr;
        if (j == range.first)
            face = &bc.left;
        else if (j == range.last)
            face = &bc.right;

        for (std::size_t i = 0; i < nc; ++i) {
            const std::size_t row = unknown(j, i);
            const double X = grid.cross(i);

            if (grid.is_lateral(i)) {
                add_matrix(row, row, 1.0);
                add_rhs(row, problem.g(t, X, x));
                continue;
            }
            if (face && face->kind == FaceKind::Dirichlet) {
                add_matrix(row, row, 1.0);
                if (rhs)
                    add_rhs(row, face->values[i]);
                continue;
            }

            const double a_n = coeffs.diffusion(axis, axis, t, X);
            const double b_n = coeffs.advection(axis, t, X);
            const double c = coeffs.reaction(t, X);

            std::array<Contribution, 9> stencil{};
            std::size_t count = 0;
            stencil[count++] = {0, 0, 1.0 / dt + 2.0 * a_n / (h * h) + c};
            stencil[count++] = {0, -1, -a_n / (h * h) - b_n / (2.0 * h)};
            stencil[count++] = {0, +1, -a_n / (h * h) + b_n / (2.0 * h)};
            if (grid.dim() == 2) {
                const double a_c = coeffs.diffusion(0, 0, t, X);
                const double b_c = coeffs.advection(0, t, X);
                // sum_ij a_ij d_ij carries the mixed term twice
                const double a_m = coeffs.diffusion(0, 1, t, X) + coeffs.diffusion(1, 0, t, X);
                stencil[0].coef += 2.0 * a_c / (hc * hc);
                stencil[count++] = {-1, 0, -a_c / (hc * hc) - b_c / (2.0 * hc)};
                stencil[count++] = {+1, 0, -a_c / (hc * hc) + b_c / (2.0 * hc)};
                const double cross_coef = a_m / (4.0 * hc * h);
                stencil[count++] = {+1, +1, -cross_coef};
                stencil[count++] = {-1, -1, -cross_coef};
                stencil[count++] = {+1, -1, +cross_coef};
                stencil[count++] = {-1, +1, +cross_coef};
            }

            if (rhs)
                add_rhs(row, u_prev[row] / dt + problem.f(t, X, x));

            for (std::size_t s = 0; s < count; ++s) {
                const auto [di, dj, coef] = stencil[s];
                const auto ni = static_cast<std::size_t>(static_cast<long>(i) + di);
                const long nj_signed = static_cast<long>(j) + dj;
                const auto nj = static_cast<std::size_t>(nj_signed);
                if (range.contains(nj) && nj_signed >= 0) {
                    add_matrix(row, unknown(nj, ni), coef);
                    continue;
                }

                // Ghost node outside the range: only reachable from a Robin face row.
                if (grid.is_lateral(ni)) {
                    add_rhs(row, -coef * problem.g(t, grid.cross(ni), grid.axis(nj)));
                    continue;
                }
                const bool left = dj < 0;
                const FaceClosure& robin = left ? bc.left : bc.right;
                const std::size_t mirror = left ? j + 1 : j - 1;
                // left:  ghost = u[j+1] - (2h/s)(d - p u[j]);  right: ghost = u[j-1] + (2h/s)(d - p u[j])
                const double kappa = (left ? -2.0 : 2.0) * h / robin.normal_sign;
                add_matrix(row, unknown(mirror, ni), coef);
                add_matrix(row, unknown(j, ni), -coef * kappa * robin.p);
                if (rhs)
                    add_rhs(row, -coef * kappa * robin.values[ni]);
            }
        }
    }
}

} // namespace

BandedMatrix assemble_step_matrix(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                                  AxisRange range, std::size_t level_next, const BoundaryClosure& bc)
{
    check_closure(grid, range, bc, false);
    const std::size_t bw = step_bandwidth(grid);
    BandedMatrix matrix(range.count() * grid.nx_cross, bw, bw);
    assemble(problem, grid, range, level_next, bc, {}, &matrix, nullptr);
    return matrix;
}

std::vector<double> assemble_step_rhs(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                                      AxisRange range, std::size_t level_next,
                                      const BoundaryClosure& bc, std::span<const double> u_prev)
{
    check_closure(grid, range, bc, true);
    const std::size_t size = range.count() * grid.nx_cross;
    if (u_prev.size() != size)
        throw Error(ErrorCode::DataMismatch, "previous level does not match the axis range");
    std::vector<double> rhs(size, 0.0);
    assemble(problem, grid, range, level_next, bc, u_prev, nullptr, &rhs);
    return rhs;
}

BandedSystem assemble_step(const ParabolicProblem& problem, const SpaceTimeGrid& grid,
                           AxisRange range, std::size_t level_next, const BoundaryClosure& bc,
                           std::span<const double> u_prev)
{
    if (level_next == 0 || level_next > grid.nt)
        throw Error(ErrorCode::InvalidArgument, "t_next must lie in (0, T]");
    BandedSystem system;
    system.matrix = assemble_step_matrix(problem, grid, range, level_next, bc);
    system.rhs = assemble_step_rhs(problem, grid, range, level_next, bc, u_prev);
    return system;
}

} // namespace oswr
