#pragma once

#include "oswr/decomposition.hpp"
#include "oswr/diagnostics.hpp"
#include "oswr/monolithic_oracle.hpp"
#include "oswr/subdomain_solver.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace oswr {

/// Robin data h0 used on the interior interfaces before the first sweep.
struct InitialGuess {
    enum class Kind { Zero, Constant, RandomSmooth };

    Kind kind = Kind::Zero;
    double value = 0.0;
    std::uint64_t seed = 7;

    static InitialGuess zero() { return {}; }
    static InitialGuess constant(double v) { return {Kind::Constant, v, 0}; }
    /// Sum of four low-frequency cosine modes in (t, X, x_n) with seeded
    /// amplitudes in [-1, 1], wave numbers in {0, 1, 2} and phases.
    static InitialGuess random_smooth(std::uint64_t seed) { return {Kind::RandomSmooth, 0.0, seed}; }

    SpaceTimeFn function(const DomainSpec& domain) const;
};

struct SWRConfig {
    double p = 1.0;
    RobinOrientation orientation = RobinOrientation::Forward;
    std::size_t max_iters = 60;
    double stop_tol = 1e-10;     ///< threshold on E_k
    InitialGuess guess;
    double gamma = 0.0;          ///< Phi space weight; <= 0 selects default_gamma
    double time_weight_rate = 0.0;  ///< varphi(t) = exp(-rate t); 0 gives varphi == 1
    double gamma_max = kDefaultGammaMax;
    std::size_t threads = 0;     ///< 1 = serial sweeps, otherwise one task per subdomain
    /// Throws ValidationError on p <= 0, max_iters < 1 or stop_tol <= 0.
    void validate() const;
};

/// Inbound data for one subdomain.
struct InboundTraces {
    TraceData left;
    TraceData right;
};

struct IterationState {
    std::size_t k = 0;
    std::vector<SubdomainSolution> solutions;  ///< empty before the first sweep
    std::vector<InboundTraces> inbound;        ///< data for sweep k + 1
};

/// Robin traces sampled from h0 on interior interfaces; Dirichlet traces
/// from g on x_n = alpha and x_n = beta.
std::vector<InboundTraces> initial_traces(const InitialGuess& guess, const ParabolicProblem& problem,
                                          const SubdomainLayout& layout, const SpaceTimeGrid& grid);

/// Next inbound data: the left trace of strip l is extracted from strip l-1
/// at a_l, the right trace from strip l+1 at b_l; extreme Dirichlet traces
/// are carried over.
std::vector<InboundTraces> exchange(const IterationState& state, const SubdomainLayout& layout,
                                    const SpaceTimeGrid& grid, RobinParameter p,
                                    RobinOrientation orientation);

/// Largest change of any interior-interface trace value between two
/// inbound sets (level 0 excluded, it never enters a solve).
double trace_increment(std::span<const InboundTraces> before, std::span<const InboundTraces> after);

/// Additive (Jacobi) Schwarz waveform relaxation driver.
class SWREngine {
public:
    using Observer = std::function<void(const IterationState&, std::span<const ErrorFields>)>;

    SWREngine(const ParabolicProblem& problem, const SpaceTimeGrid& grid, SubdomainLayout layout,
              SWRConfig config);

    IterationState initial_state() const;
    /// Solves every strip from state.inbound (concurrently unless threads == 1)
    /// and exchanges. Solver errors are rethrown with iteration and subdomain.
    IterationState sweep(const IterationState& state) const;

    /// Iterates until E_k <= stop_tol or max_iters. The oracle is used only
    /// for error metrics. `observer` sees every state with its error fields.
    IterationHistory run(const GlobalSolution& oracle, const Observer& observer = {}) const;
    /// Same, appending to `history` so the rows written before a failure
    /// survive the exception.
    void run(const GlobalSolution& oracle, IterationHistory& history, const Observer& observer = {}) const;

    const SubdomainLayout& layout() const noexcept { return layout_; }
    const SWRConfig& config() const noexcept { return config_; }
    WeightSpec weights() const;

private:
    ParabolicProblem problem_;
    SpaceTimeGrid grid_;
    SubdomainLayout layout_;
    SWRConfig config_;
    std::vector<std::shared_ptr<const SubdomainSolver>> solvers_;
};

} // namespace oswr
