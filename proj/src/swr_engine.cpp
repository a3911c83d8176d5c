#include "oswr/swr_engine.hpp"

#include "oswr/error.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <random>

namespace oswr {

namespace {

// Uniform in [0, 1) from the raw engine output, so the sequence does not
// depend on the standard library's distribution implementation.
double unit_draw(std::mt19937_64& engine)
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

template <class Fn>
auto run_per_subdomain(std::size_t count, std::size_t threads, Fn&& fn)
{
    using Result = decltype(fn(std::size_t{0}));
    std::vector<Result> results;
    results.reserve(count);
    if (threads == 1 || count < 2) {
        for (std::size_t l = 0; l < count; ++l)
            results.push_back(fn(l));
        return results;
    }
    std::vector<std::future<Result>> futures;
    futures.reserve(count);
    for (std::size_t l = 0; l < count; ++l)
        futures.push_back(std::async(std::launch::async, [&fn, l] { return fn(l); }));
    for (auto& future : futures)
        results.push_back(future.get());
    return results;
}

} // namespace

SpaceTimeFn InitialGuess::function(const DomainSpec& domain) const
{
    switch (kind) {
    case Kind::Zero: return [](double, double, double) { return 0.0; };
    case Kind::Constant: return [v = value](double, double, double) { return v; };
    case Kind::RandomSmooth: break;
    }

    struct Mode {
        double amplitude;
        double kt;
        double kx;
        double kX;
        double phase;
    };
    std::mt19937_64 engine(seed);
    std::array<Mode, 4> modes{};
    for (auto& mode : modes) {
        mode.amplitude = 2.0 * unit_draw(engine) - 1.0;
        mode.kt = std::floor(3.0 * unit_draw(engine));
        mode.kx = std::floor(3.0 * unit_draw(engine));
        mode.kX = domain.dim == 2 ? std::floor(3.0 * unit_draw(engine)) : 0.0;
        mode.phase = 2.0 * std::numbers::pi * unit_draw(engine);
    }
    const double T = domain.T;
    const double alpha = domain.alpha;
    const double length = domain.beta - domain.alpha;
    const double lo = domain.cross_lo;
    const double width = domain.cross_hi - domain.cross_lo;
    return [modes, T, alpha, length, lo, width](double t, double X, double x) {
        double sum = 0.0;
        for (const auto& m : modes) {
            const double arg = m.kt * t / T + m.kx * (x - alpha) / length + m.kX * (X - lo) / width;
            sum += m.amplitude * std::cos(std::numbers::pi * arg + m.phase);
        }
        return sum;
    };
}

void SWRConfig::validate() const
{
    if (!(p > 0.0))
        throw Error(ErrorCode::ValidationError, "p must be positive");
    if (max_iters < 1)
        throw Error(ErrorCode::ValidationError, "max_iters must be at least 1");
    if (!(stop_tol > 0.0))
        throw Error(ErrorCode::ValidationError, "stop_tol must be positive");
    if (!(gamma_max > 0.0))
        throw Error(ErrorCode::ValidationError, "gamma_max must be positive");
    if (!std::isfinite(time_weight_rate))
        throw Error(ErrorCode::ValidationError, "time_weight_rate must be finite");
}

std::vector<InboundTraces> initial_traces(const InitialGuess& guess, const ParabolicProblem& problem,
                                          const SubdomainLayout& layout, const SpaceTimeGrid& grid)
{
    const auto h0 = guess.function(grid.domain);
    auto sampled = [&](std::size_t node, Side side) {
        TraceData trace;
        trace.abscissa = grid.axis(node);
        trace.node = node;
        trace.side = side;
        trace.kind = TraceKind::Robin;
        trace.values = PlaneSeries(grid.levels(), grid.nx_cross);
        for (std::size_t n = 0; n < grid.levels(); ++n)
            for (std::size_t i = 0; i < grid.nx_cross; ++i)
                trace.values(n, i) = h0(grid.time(n), grid.cross(i), trace.abscissa);
        return trace;
    };

    std::vector<InboundTraces> inbound;
    inbound.reserve(layout.size());
    for (const auto& entry : layout.entries) {
        InboundTraces traces;
        traces.left = entry.left_neighbor ? sampled(entry.nodes.first, Side::Left)
                                          : dirichlet_trace(problem, grid, entry.nodes.first, Side::Left);
        traces.right = entry.right_neighbor ? sampled(entry.nodes.last, Side::Right)
                                            : dirichlet_trace(problem, grid, entry.nodes.last, Side::Right);
        inbound.push_back(std::move(traces));
    }
    return inbound;
}

std::vector<InboundTraces> exchange(const IterationState& state, const SubdomainLayout& layout,
                                    const SpaceTimeGrid& grid, RobinParameter p,
                                    RobinOrientation orientation)
{
    if (state.solutions.size() != layout.size() || state.inbound.size() != layout.size())
        throw Error(ErrorCode::InvalidArgument, "exchange needs every subdomain solution of the sweep");

    std::vector<InboundTraces> next;
    next.reserve(layout.size());
    for (const auto& entry : layout.entries) {
        InboundTraces traces;
        if (entry.left_neighbor)
            traces.left = extract_robin_trace(state.solutions[*entry.left_neighbor], grid,
                                              entry.nodes.first, p, Side::Left, orientation);
        else
            traces.left = state.inbound[entry.id].left;
        if (entry.right_neighbor)
            traces.right = extract_robin_trace(state.solutions[*entry.right_neighbor], grid,
                                               entry.nodes.last, p, Side::Right, orientation);
        else
            traces.right = state.inbound[entry.id].right;
        next.push_back(std::move(traces));
    }
    return next;
}

double trace_increment(std::span<const InboundTraces> before, std::span<const InboundTraces> after)
{
    double best = 0.0;
    auto compare = [&](const TraceData& a, const TraceData& b) {
        if (a.kind != TraceKind::Robin || b.kind != TraceKind::Robin)
            return;
        for (std::size_t n = 1; n < a.values.levels(); ++n)
            for (std::size_t i = 0; i < a.values.cross_nodes(); ++i)
                best = std::max(best, std::abs(a.values(n, i) - b.values(n, i)));
    };
    for (std::size_t l = 0; l < std::min(before.size(), after.size()); ++l) {
        compare(before[l].left, after[l].left);
        compare(before[l].right, after[l].right);
    }
    return best;
}

SWREngine::SWREngine(const ParabolicProblem& problem, const SpaceTimeGrid& grid, SubdomainLayout layout,
                     SWRConfig config)
    : problem_(problem), grid_(grid), layout_(std::move(layout)), config_(std::move(config))
{
    config_.validate();
    if (config_.gamma <= 0.0)
        config_.gamma = default_gamma(grid.domain.alpha, grid.domain.beta);
    if (layout_.size() < 2)
        throw Error(ErrorCode::ValidationError, "at least 2 subdomains required");

    const RobinParameter p(config_.p);
    solvers_.reserve(layout_.size());
    for (const auto& entry : layout_.entries) {
        try {
            solvers_.push_back(
                std::make_shared<const SubdomainSolver>(problem_, grid_, entry, p, config_.orientation));
        } catch (const Error& err) {
            throw Error(err.code(), "subdomain " + std::to_string(entry.id + 1) + ": " + err.what());
        }
    }
}

WeightSpec SWREngine::weights() const
{
    WeightSpec weights{config_.gamma, {}};
    if (config_.time_weight_rate != 0.0)
        for (std::size_t n = 0; n < grid_.levels(); ++n)
            weights.varphi.push_back(std::exp(-config_.time_weight_rate * grid_.time(n)));
    return weights;
}

IterationState SWREngine::initial_state() const
{
    IterationState state;
    state.k = 0;
    state.inbound = initial_traces(config_.guess, problem_, layout_, grid_);
    return state;
}

IterationState SWREngine::sweep(const IterationState& state) const
{
    const std::size_t k = state.k + 1;
    IterationState next;
    next.k = k;
    next.solutions = run_per_subdomain(layout_.size(), config_.threads, [&](std::size_t l) {
        try {
            return solvers_[l]->solve(state.inbound[l].left, state.inbound[l].right);
        } catch (const Error& err) {
            throw Error(err.code(), "iteration " + std::to_string(k) + ", subdomain " +
                                        std::to_string(l + 1) + ": " + err.what());
        }
    });
    next.inbound = state.inbound;
    next.inbound = exchange(next, layout_, grid_, RobinParameter(config_.p), config_.orientation);
    return next;
}

IterationHistory SWREngine::run(const GlobalSolution& oracle, const Observer& observer) const
{
    IterationHistory history;
    run(oracle, history, observer);
    return history;
}

void SWREngine::run(const GlobalSolution& oracle, IterationHistory& history, const Observer& observer) const
{
    using Clock = std::chrono::steady_clock;
    const auto weights = this->weights();
    const std::size_t count = layout_.size();

    history = IterationHistory{};
    history.subdomains = count;
    IterationState state = initial_state();
    for (std::size_t k = 1; k <= config_.max_iters; ++k) {
        const auto start = Clock::now();
        IterationState next = sweep(state);
        auto fields = run_per_subdomain(count, config_.threads, [&](std::size_t l) {
            return compute_error_fields(next.solutions[l], oracle, grid_, config_.p, weights);
        });

        IterationRecord row;
        row.k = k;
        row.E = compute_E(fields, weights);
        for (const auto& f : fields) {
            row.sup_e.push_back(f.sup_abs_error());
            row.phi_boundary_ok = row.phi_boundary_ok && phi_boundary_check(f, grid_).ok;
        }
        row.sup_e_max = *std::max_element(row.sup_e.begin(), row.sup_e.end());
        row.trace_increment = trace_increment(state.inbound, next.inbound);
        if (history.rows.size() >= count) {
            double window = 0.0;
            for (std::size_t q = history.rows.size() - count; q < history.rows.size(); ++q)
                window = std::max(window, history.rows[q].E);
            row.gamma_window = WindowRatio::of(row.E, window);
        }
        row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        history.rows.push_back(std::move(row));

        if (observer)
            observer(next, fields);
        state = std::move(next);
        if (history.rows.back().E <= config_.stop_tol) {
            history.termination = Termination::Tolerance;
            break;
        }
    }
    if (history.rows.size() >= 2 * count)
        history.contraction = contraction_report(history.E(), count, config_.gamma_max);
}

} // namespace oswr
