#pragma once

#include "oswr/diagnostics.hpp"
#include "oswr/error.hpp"
#include "oswr/swr_engine.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace oswr {

/// Everything one experiment file can set. `p_values` and `overlaps` hold a
/// single entry for a plain run; longer lists schedule their Cartesian
/// product.
struct ExperimentConfig {
    // [problem]
    std::string preset = "heat1d";
    std::filesystem::path coefficients;  ///< CSV table; replaces the preset when set
    std::string solution;                ///< manufactured solution; empty = preset default

    // [domain]
    DomainSpec domain;

    // [grid]
    std::size_t nx_axis = 101;
    std::size_t nx_cross = 21;
    std::size_t nt = 50;

    // [decomposition]
    std::size_t subdomains = 2;
    std::vector<double> overlaps{0.2};
    std::vector<double> a;  ///< explicit strip bounds (override subdomains/overlap)
    std::vector<double> b;

    // [solver]
    std::vector<double> p_values{1.0};
    RobinOrientation orientation = RobinOrientation::Forward;
    std::size_t max_iters = 60;
    double stop_tol = 1e-10;
    std::size_t threads = 0;

    // [guess]
    InitialGuess guess;

    // [weights]
    double gamma = 0.0;  ///< resolved to 5 / (beta - alpha) by load_config
    double time_weight_rate = 0.0;
    double gamma_max = kDefaultGammaMax;
    double trend_factor = kDefaultTrendFactor;

    // [output]
    std::filesystem::path output = "oswr-out";

    bool explicit_strips() const noexcept { return !a.empty(); }
    bool is_sweep() const noexcept { return p_values.size() > 1 || overlaps.size() > 1; }
    std::size_t run_count() const noexcept { return p_values.size() * overlaps.size(); }

    /// Throws ValidationError naming the offending field.
    void validate() const;
    /// The resolved configuration in the file format.
    std::string to_ini() const;
};

/// Reads an INI-style file (sections problem, domain, grid, decomposition,
/// solver, guess, weights, output). Lists are written `[v1, v2, ...]` or
/// `v1, v2, ...`. Relative paths resolve against the file's directory.
/// Throws ParseError (with line number) on syntax errors and unknown keys,
/// ValidationError naming the field otherwise.
ExperimentConfig load_config(const std::filesystem::path& path);

/// One scheduled run of a sweep.
struct RunSpec {
    std::size_t index = 0;
    double p = 1.0;
    std::optional<double> overlap;  ///< absent for explicit strip bounds
    std::string name() const;       ///< run_000, run_001, ...
};

/// p varies slowest, overlap fastest.
std::vector<RunSpec> schedule(const ExperimentConfig& config);

ParabolicProblem build_problem(const ExperimentConfig& config);
DecompositionSpec build_decomposition(const ExperimentConfig& config, const RunSpec& run);
SWRConfig build_engine_config(const ExperimentConfig& config, const RunSpec& run);

enum ExitCode : int {
    kExitSuccess = 0,
    kExitValidation = 2,
    kExitNumerical = 3,
    kExitContraction = 4,
};

/// Validation-class errors map to 2, solver failures to 3.
int exit_code_for(ErrorCode code) noexcept;

struct RunOutcome {
    RunSpec spec;
    IterationHistory history;
    std::optional<std::string> error;
    int exit_code = kExitSuccess;
    std::vector<std::string> warnings;
};

struct ExperimentResult {
    int exit_code = kExitSuccess;  ///< worst over runs
    std::vector<RunOutcome> runs;
    std::optional<std::size_t> fastest;  ///< run reaching stop_tol in the fewest sweeps
};

struct RunOptions {
    bool gnuplot_stub = false;
    std::ostream* log = nullptr;  ///< progress and errors; null = silent
};

/// Runs every scheduled configuration and writes, under config.output:
///   run_NNN/history.csv, summary.csv, meta.txt and optionally plot.gp.
/// Failing runs still write what they computed.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Header of summary.csv.
inline constexpr const char* kSummaryHeader =
    "run,p,overlap,iterations,final_E,mean_gamma,verdict,termination";

} // namespace oswr
