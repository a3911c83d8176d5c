#include "oswr/diagnostics.hpp"

#include "oswr/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace oswr {

void WeightSpec::validate() const
{
    if (!(gamma > 0.0))
        throw Error(ErrorCode::InvalidArgument, "weight gamma must be positive");
    for (double w : varphi)
        if (!(w > 0.0))
            throw Error(ErrorCode::InvalidArgument, "time weight samples must be positive");
}

double WeightSpec::space_weight(double x) const noexcept
{
    return std::exp(-gamma * x);
}

double default_gamma(double alpha, double beta) noexcept
{
    return 5.0 / (beta - alpha);
}

double ErrorFields::sup_abs_error() const noexcept
{
    double best = 0.0;
    for (double v : e.values())
        best = std::max(best, std::abs(v));
    return best;
}

ErrorFields error_fields_from(SpaceTimeField error, AxisRange nodes, std::size_t id,
                              const SpaceTimeGrid& grid, double p, const WeightSpec& weights)
{
    weights.validate();
    const std::size_t m = nodes.count();
    if (error.axis_nodes() != m || error.cross_nodes() != grid.nx_cross || error.levels() != grid.levels())
        throw Error(ErrorCode::ShapeMismatch, "error field does not match the subdomain grid");
    if (m < 3)
        throw Error(ErrorCode::ShapeMismatch, "error fields need at least 3 axis nodes");
    if (!weights.varphi.empty() && weights.varphi.size() != grid.levels())
        throw Error(ErrorCode::ShapeMismatch, "time weight needs one sample per time level");

    ErrorFields fields;
    fields.id = id;
    fields.nodes = nodes;
    fields.e = std::move(error);
    fields.eps = SpaceTimeField(grid.levels(), m, grid.nx_cross);
    fields.nu = SpaceTimeField(grid.levels(), m, grid.nx_cross);
    fields.phi = SpaceTimeField(grid.levels(), m, grid.nx_cross);

    std::vector<double> growth(m);
    std::vector<double> space_weight(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = grid.axis(nodes.first + j);
        growth[j] = std::exp(p * x);
        space_weight[j] = weights.space_weight(x);
    }

    const double inv_2h = 1.0 / (2.0 * grid.hx_axis);
    for (std::size_t n = 0; n < grid.levels(); ++n) {
        const double w_t = weights.time_weight(n);
        for (std::size_t i = 0; i < grid.nx_cross; ++i) {
            for (std::size_t j = 0; j < m; ++j)
                fields.eps(n, j, i) = fields.e(n, j, i) * growth[j];
            auto eps = [&](std::size_t j) { return fields.eps(n, j, i); };
            for (std::size_t j = 0; j < m; ++j) {
                double d = 0.0;
                if (j == 0)
                    d = (-3.0 * eps(0) + 4.0 * eps(1) - eps(2)) * inv_2h;
                else if (j + 1 == m)
                    d = (3.0 * eps(m - 1) - 4.0 * eps(m - 2) + eps(m - 3)) * inv_2h;
                else
                    d = (eps(j + 1) - eps(j - 1)) * inv_2h;
                fields.nu(n, j, i) = d;
                fields.phi(n, j, i) = d * d * space_weight[j] * w_t;
            }
        }
    }
    return fields;
}

ErrorFields compute_error_fields(const SubdomainSolution& solution, const GlobalSolution& oracle,
                                 const SpaceTimeGrid& grid, double p, const WeightSpec& weights)
{
    const auto& u = oracle.values;
    if (u.levels() != grid.levels() || u.axis_nodes() != grid.nx_axis || u.cross_nodes() != grid.nx_cross)
        throw Error(ErrorCode::ShapeMismatch, "oracle does not match the grid");
    if (solution.nodes.last >= grid.nx_axis || solution.values.axis_nodes() != solution.nodes.count() ||
        solution.values.levels() != grid.levels() || solution.values.cross_nodes() != grid.nx_cross)
        throw Error(ErrorCode::ShapeMismatch,
                    "subdomain " + std::to_string(solution.id + 1) + " does not match the oracle grid");

    SpaceTimeField error(grid.levels(), solution.nodes.count(), grid.nx_cross);
    for (std::size_t n = 0; n < grid.levels(); ++n)
        for (std::size_t j = 0; j < solution.nodes.count(); ++j)
            for (std::size_t i = 0; i < grid.nx_cross; ++i)
                error(n, j, i) = solution.values(n, j, i) - u(n, solution.nodes.first + j, i);
    return error_fields_from(std::move(error), solution.nodes, solution.id, grid, p, weights);
}

double compute_E(std::span<const ErrorFields> fields, const WeightSpec& weights)
{
    double best = 0.0;
    for (const auto& f : fields) {
        for (std::size_t n = 0; n < f.nu.levels(); ++n) {
            const double w_t = weights.time_weight(n);
            for (double v : f.nu.level(n))
                best = std::max(best, v * v * w_t);
        }
    }
    return best;
}

std::string_view to_string(Verdict verdict) noexcept
{
    switch (verdict) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Converged: return "CONVERGED";
    }
    return "?";
}

std::string_view to_string(Termination termination) noexcept
{
    return termination == Termination::Tolerance ? "tolerance" : "max_iters";
}

WindowRatio WindowRatio::of(double numerator, double denominator) noexcept
{
    if (denominator > 0.0)
        return {State::Finite, numerator / denominator};
    if (numerator == 0.0)
        return {State::Converged, 0.0};
    return {State::Unbounded, std::numeric_limits<double>::infinity()};
}

std::string WindowRatio::to_csv() const
{
    switch (state) {
    case State::Finite: return format_number(value);
    case State::Converged: return "converged";
    case State::Unbounded: return "inf";
    }
    return {};
}

ContractionReport contraction_report(std::span<const double> E, std::size_t subdomains, double gamma_max)
{
    if (subdomains == 0)
        throw Error(ErrorCode::InvalidArgument, "subdomain count must be positive");
    if (E.size() < 2 * subdomains)
        throw Error(ErrorCode::TooShort, "contraction report needs at least " +
                                             std::to_string(2 * subdomains) + " values, got " +
                                             std::to_string(E.size()));

    ContractionReport report;
    report.subdomains = subdomains;
    report.warmup = subdomains;
    report.gamma_max = gamma_max;

    double log_sum = 0.0;
    bool any_failure = false;
    for (std::size_t k = 0; k + subdomains < E.size(); ++k) {
        const double window_max = *std::max_element(E.begin() + static_cast<std::ptrdiff_t>(k),
                                                    E.begin() + static_cast<std::ptrdiff_t>(k + subdomains));
        const auto ratio = WindowRatio::of(E[k + subdomains], window_max);
        report.windows.push_back(ratio);
        if (k < report.warmup || ratio.state == WindowRatio::State::Converged)
            continue;
        ++report.judged;
        report.max_ratio = std::max(report.max_ratio, ratio.value);
        if (ratio.state == WindowRatio::State::Unbounded || ratio.value > gamma_max)
            any_failure = true;
        log_sum += ratio.value > 0.0 ? std::log(ratio.value) : -std::numeric_limits<double>::infinity();
    }
    if (report.judged == 0) {
        report.verdict = Verdict::Converged;
        return report;
    }
    report.geometric_mean = std::exp(log_sum / static_cast<double>(report.judged));
    report.verdict = any_failure ? Verdict::Fail : Verdict::Pass;
    return report;
}

PhiBoundaryResult phi_boundary_check(const ErrorFields& fields, const SpaceTimeGrid& grid)
{
    PhiBoundaryResult result;
    result.interior_max = -1.0;
    result.boundary_max = -1.0;
    const std::size_t m = fields.nodes.count();
    for (std::size_t n = 0; n < fields.phi.levels(); ++n) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t i = 0; i < fields.phi.cross_nodes(); ++i) {
                const double v = fields.phi(n, j, i);
                const bool boundary = n == 0 || j == 0 || j + 1 == m || grid.is_lateral(i);
                GridLocation where{n, fields.nodes.first + j, i};
                if (boundary && v > result.boundary_max) {
                    result.boundary_max = v;
                    result.boundary_at = where;
                } else if (!boundary && v > result.interior_max) {
                    result.interior_max = v;
                    result.interior_at = where;
                }
            }
        }
    }
    result.interior_max = std::max(result.interior_max, 0.0);
    result.boundary_max = std::max(result.boundary_max, 0.0);
    result.ok = result.interior_max <= result.boundary_max * (1.0 + 1e-8) + 1e-13;
    return result;
}

std::vector<double> IterationHistory::E() const
{
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows)
        out.push_back(row.E);
    return out;
}

std::string IterationHistory::to_csv(bool with_wall_time) const
{
    std::ostringstream os;
    os << "k,E_k,sup_e_max,gamma_window,phi_boundary_ok,trace_increment,wall_ms\n";
    for (const auto& row : rows) {
        os << row.k << ',' << format_number(row.E) << ',' << format_number(row.sup_e_max) << ','
           << (row.gamma_window ? row.gamma_window->to_csv() : std::string()) << ','
           << (row.phi_boundary_ok ? 1 : 0) << ',' << format_number(row.trace_increment) << ','
           << (with_wall_time ? format_number(row.wall_ms) : std::string()) << '\n';
    }
    return os.str();
}

TrendResult pointwise_error_trend(const IterationHistory& history, double stop_tol, double K)
{
    const std::size_t needed = 2 * std::max<std::size_t>(history.subdomains, 1);
    if (history.rows.size() < needed)
        throw Error(ErrorCode::TooShort, "pointwise trend needs at least " + std::to_string(needed) +
                                             " iterations, got " + std::to_string(history.rows.size()));
    TrendResult result;
    for (const auto& row : history.rows)
        result.peak = std::max(result.peak, row.sup_e_max);
    result.final = history.rows.back().sup_e_max;
    result.decrease = result.final > 0.0 ? result.peak / result.final
                                          : std::numeric_limits<double>::infinity();
    const bool small = result.final <= stop_tol * K;
    const bool dropped = result.peak > 0.0 && result.decrease >= 100.0;
    result.verdict = (small || dropped) ? Verdict::Pass : Verdict::Fail;
    return result;
}

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

} // namespace oswr
