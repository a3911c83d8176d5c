#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oswr {

// Coordinates follow the strip convention x = (X, x_n): in two dimensions
// component 0 is the cross-section coordinate X and component 1 the
// decomposed axis x_n. In one dimension component 0 is the axis and X is
// always passed as 0.

/// Coefficient as a function of (t, X). Presets ignore X.
using CoefficientFn = std::function<double(double t, double cross)>;

/// Scalar field on the space-time cylinder, evaluated at (t, X, x_n).
using SpaceTimeFn = std::function<double(double t, double cross, double axis)>;

/// Named closed-form or tabulated function of time.
///
/// Text form (used by configuration files):
///   constant:v | affine:v0,slope | sinusoidal:mean,amplitude,omega
class TimeProfile {
public:
    enum class Kind { Constant, Affine, Sinusoidal, Table };

    static TimeProfile constant(double value);
    static TimeProfile affine(double value0, double slope);
    static TimeProfile sinusoidal(double mean, double amplitude, double omega);
    /// Piecewise-linear interpolation, clamped outside [times.front(), times.back()].
    static TimeProfile table(std::vector<double> times, std::vector<double> values);
    static TimeProfile parse(std::string_view text);

    double operator()(double t) const;
    Kind kind() const noexcept { return kind_; }
    std::string describe() const;
    CoefficientFn as_coefficient() const;

private:
    Kind kind_ = Kind::Constant;
    std::array<double, 3> params_{};
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Coefficients of  u_t - sum a_ij u_ij + sum b_i u_i + c u = f.
struct CoefficientSet {
    int dim = 1;
    std::array<std::array<CoefficientFn, 2>, 2> a;
    std::array<CoefficientFn, 2> b;
    CoefficientFn c;

    /// Builds a coefficient set from time profiles; a is given row-major
    /// (dim*dim entries), b has dim entries.
    static CoefficientSet from_profiles(int dim, std::span<const TimeProfile> a,
                                        std::span<const TimeProfile> b, const TimeProfile& c);

    /// Loads `t,a11,b1,c` (1D) or `t,a11,a12,a21,a22,b1,b2,c` (2D) samples.
    static CoefficientSet load_csv(const std::string& path);

    double diffusion(int i, int j, double t, double cross = 0.0) const { return a[i][j](t, cross); }
    double advection(int i, double t, double cross = 0.0) const { return b[i](t, cross); }
    double reaction(double t, double cross = 0.0) const { return c(t, cross); }

    int axis() const noexcept { return dim - 1; }
};

struct DomainSpec {
    int dim = 1;
    double cross_lo = 0.0;
    double cross_hi = 1.0;
    double alpha = 0.0;
    double beta = 1.0;
    double T = 1.0;

    /// Throws ValidationError on alpha >= beta, T <= 0 or an empty cross-section.
    void validate() const;
};

struct EllipticityReport {
    double nu0 = 0.0;            ///< min over samples of the smallest eigenvalue of A(t)
    bool symmetric = true;
    double max_asymmetry = 0.0;  ///< max |a_ij - a_ji|
    double max_abs_coefficient = 0.0;
};

inline constexpr double kSymmetryTolerance = 1e-12;

/// Samples A(t), b(t), c(t) at `times` (and each X in `cross_samples`).
/// Throws AsymmetricCoefficients, NonElliptic, or InvalidArgument for
/// non-finite samples.
EllipticityReport check_assumptions(const CoefficientSet& coeffs, std::span<const double> times,
                                    std::span<const double> cross_samples = {});

/// Exact solution together with the derivatives the operator needs.
/// grad[d] = du/dx_d, hess[d][e] = d2u/dx_d dx_e, with d, e < dim.
struct ManufacturedSolution {
    int dim = 1;
    SpaceTimeFn u;
    SpaceTimeFn u_t;
    std::array<SpaceTimeFn, 2> grad;
    std::array<std::array<SpaceTimeFn, 2>, 2> hess;

    /// Named solutions: "zero", "sine", "sine-plus-linear", "tx".
    static ManufacturedSolution preset(std::string_view name, int dim);
};

/// f = u_t - sum a_ij u_ij + sum b_i u_i + c u. Throws MissingDerivative.
SpaceTimeFn manufactured_forcing(const ManufacturedSolution& exact, const CoefficientSet& coeffs);

struct ParabolicProblem {
    std::string name;
    DomainSpec domain;
    CoefficientSet coeffs;
    SpaceTimeFn f;
    SpaceTimeFn g;  ///< Dirichlet boundary data and initial value
    std::optional<ManufacturedSolution> exact;

    int dim() const noexcept { return domain.dim; }
};

ParabolicProblem make_manufactured_problem(std::string name, const DomainSpec& domain,
                                           CoefficientSet coeffs, ManufacturedSolution exact);

/// Closed-form coefficient presets with the default solution for each.
/// heat1d, varcoef1d, zero1d, heat2d, varcoef2d, zero2d.
CoefficientSet coefficient_preset(std::string_view name);
std::string_view default_solution_for(std::string_view preset);
int preset_dimension(std::string_view preset);

ParabolicProblem make_preset_problem(std::string_view preset, const DomainSpec& domain);

} // namespace oswr
