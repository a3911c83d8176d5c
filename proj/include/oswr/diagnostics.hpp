#pragma once

#include "oswr/field.hpp"
#include "oswr/grid.hpp"
#include "oswr/monolithic_oracle.hpp"
#include "oswr/subdomain_solver.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oswr {

/// Space weight phi(x_n) = exp(-gamma x_n) and time weight varphi(t)
/// sampled on the time levels (empty means varphi == 1).
struct WeightSpec {
    double gamma = 1.0;
    std::vector<double> varphi;

    /// Throws InvalidArgument unless gamma > 0 and every varphi sample > 0.
    void validate() const;
    double space_weight(double x) const noexcept;
    double time_weight(std::size_t level) const noexcept { return varphi.empty() ? 1.0 : varphi[level]; }
};

/// 5 / (beta - alpha)
double default_gamma(double alpha, double beta) noexcept;

/// Error e = u_l^k - u on one strip and its transforms
///   eps = e exp(p x_n),  nu = D_h eps,  Phi = nu^2 phi(x_n) varphi(t).
/// nu uses centered differences inside the strip and one-sided
/// second-order differences at its two end nodes.
struct ErrorFields {
    std::size_t id = 0;
    AxisRange nodes;
    SpaceTimeField e;
    SpaceTimeField eps;
    SpaceTimeField nu;
    SpaceTimeField phi;

    double sup_abs_error() const noexcept;
};

/// Throws ShapeMismatch when the solution does not fit the oracle grid.
ErrorFields compute_error_fields(const SubdomainSolution& solution, const GlobalSolution& oracle,
                                 const SpaceTimeGrid& grid, double p, const WeightSpec& weights);

/// Builds the transforms from a given error field on `nodes`.
ErrorFields error_fields_from(SpaceTimeField error, AxisRange nodes, std::size_t id,
                              const SpaceTimeGrid& grid, double p, const WeightSpec& weights);

/// E_k = max_l max_{cylinder} nu^2 varphi(t)  (space weight == 1).
double compute_E(std::span<const ErrorFields> fields, const WeightSpec& weights);

enum class Verdict { Pass, Fail, Converged };
std::string_view to_string(Verdict verdict) noexcept;

/// gamma_hat = E_{k+I} / max{E_k, ..., E_{k+I-1}}.
struct WindowRatio {
    enum class State { Finite, Converged, Unbounded };
    State state = State::Finite;
    double value = 0.0;

    static WindowRatio of(double numerator, double denominator) noexcept;
    std::string to_csv() const;
};

struct ContractionReport {
    std::size_t subdomains = 0;
    std::size_t warmup = 0;            ///< windows skipped by the verdict
    double gamma_max = 0.99;
    std::vector<WindowRatio> windows;  ///< window k starts at E[k] (0-based)
    Verdict verdict = Verdict::Converged;
    double max_ratio = 0.0;            ///< over judged finite windows
    double geometric_mean = 0.0;       ///< over judged finite windows
    std::size_t judged = 0;
};

inline constexpr double kDefaultGammaMax = 0.99;

/// Throws TooShort unless E has at least 2I entries. Windows with index
/// below I are reported but not judged. PASS iff every judged finite
/// ratio is <= gamma_max; all-0/0 judged windows give Converged.
ContractionReport contraction_report(std::span<const double> E, std::size_t subdomains,
                                     double gamma_max = kDefaultGammaMax);

struct GridLocation {
    std::size_t level = 0;
    std::size_t axis_node = 0;  ///< global index
    std::size_t cross_node = 0;
};

struct PhiBoundaryResult {
    bool ok = true;
    double interior_max = 0.0;
    double boundary_max = 0.0;
    GridLocation interior_at;
    GridLocation boundary_at;
};

/// Compares max Phi over interior nodes with max Phi over the parabolic
/// boundary (strip end planes, lateral faces, t = 0). ok iff
/// interior_max <= boundary_max (1 + 1e-8) + 1e-13.
PhiBoundaryResult phi_boundary_check(const ErrorFields& fields, const SpaceTimeGrid& grid);

enum class Termination { Tolerance, MaxIterations };
std::string_view to_string(Termination termination) noexcept;

struct IterationRecord {
    std::size_t k = 0;
    double E = 0.0;
    std::vector<double> sup_e;  ///< per subdomain
    double sup_e_max = 0.0;
    std::optional<WindowRatio> gamma_window;
    bool phi_boundary_ok = true;
    double trace_increment = 0.0;
    double wall_ms = 0.0;
};

struct IterationHistory {
    std::size_t subdomains = 0;
    std::vector<IterationRecord> rows;
    Termination termination = Termination::MaxIterations;
    std::optional<ContractionReport> contraction;  ///< present once rows >= 2I

    std::vector<double> E() const;
    /// Header `k,E_k,sup_e_max,gamma_window,phi_boundary_ok,trace_increment,wall_ms`.
    /// wall_ms is left empty unless `with_wall_time`, so reruns are byte-identical.
    std::string to_csv(bool with_wall_time = false) const;
};

inline constexpr double kDefaultTrendFactor = 10.0;

struct TrendResult {
    Verdict verdict = Verdict::Fail;
    double peak = 0.0;
    double final = 0.0;
    double decrease = 0.0;  ///< peak / final (infinite when final is 0)
};

/// PASS iff the final max_l sup|e_l^k| <= stop_tol * K or it dropped by at
/// least 100x from its peak. Throws TooShort below 2I rows.
TrendResult pointwise_error_trend(const IterationHistory& history, double stop_tol,
                                  double K = kDefaultTrendFactor);

/// Shortest round-trip decimal form, used for every CSV number.
std::string format_number(double value);

} // namespace oswr
