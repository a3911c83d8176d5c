#include "oswr/problem.hpp"

#include "oswr/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace oswr {

namespace {

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> out;
    std::string current;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(current);
            current.clear();
        } else if (ch != ' ' && ch != '\t' && ch != '\r') {
            current.push_back(ch);
        }
    }
    out.push_back(current);
    return out;
}

double parse_number(const std::string& token, std::string_view context)
{
    try {
        std::size_t used = 0;
        double value = std::stod(token, &used);
        if (used != token.size())
            throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ValidationError,
                    "cannot parse number '" + token + "' in " + std::string(context));
    }
}

CoefficientFn zero_fn()
{
    return [](double, double) { return 0.0; };
}

} // namespace

// ---------------------------------------------------------------------------
// TimeProfile

TimeProfile TimeProfile::constant(double value)
{
    TimeProfile p;
    p.kind_ = Kind::Constant;
    p.params_ = {value, 0.0, 0.0};
    return p;
}

TimeProfile TimeProfile::affine(double value0, double slope)
{
    TimeProfile p;
    p.kind_ = Kind::Affine;
    p.params_ = {value0, slope, 0.0};
    return p;
}

TimeProfile TimeProfile::sinusoidal(double mean, double amplitude, double omega)
{
    TimeProfile p;
    p.kind_ = Kind::Sinusoidal;
    p.params_ = {mean, amplitude, omega};
    return p;
}

TimeProfile TimeProfile::table(std::vector<double> times, std::vector<double> values)
{
    if (times.empty() || times.size() != values.size())
        throw Error(ErrorCode::InvalidArgument, "tabulated profile needs matching nonempty columns");
    if (!std::is_sorted(times.begin(), times.end()) ||
        std::adjacent_find(times.begin(), times.end()) != times.end())
        throw Error(ErrorCode::InvalidArgument, "tabulated profile times must be strictly increasing");
    TimeProfile p;
    p.kind_ = Kind::Table;
    p.times_ = std::move(times);
    p.values_ = std::move(values);
    return p;
}

TimeProfile TimeProfile::parse(std::string_view text)
{
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        return constant(parse_number(split(text, ',').front(), text));

    auto name = split(text.substr(0, colon), ',').front();
    auto args = split(text.substr(colon + 1), ',');
    std::vector<double> values;
    for (const auto& arg : args)
        values.push_back(parse_number(arg, text));

    auto expect = [&](std::size_t count) {
        if (values.size() != count)
            throw Error(ErrorCode::ValidationError, "profile '" + name + "' takes " +
                                                        std::to_string(count) + " arguments");
    };
    if (name == "constant") {
        expect(1);
        return constant(values[0]);
    }
    if (name == "affine") {
        expect(2);
        return affine(values[0], values[1]);
    }
    if (name == "sinusoidal") {
        expect(3);
        return sinusoidal(values[0], values[1], values[2]);
    }
    throw Error(ErrorCode::ValidationError, "unknown time profile '" + name + "'");
}

double TimeProfile::operator()(double t) const
{
    switch (kind_) {
    case Kind::Constant: return params_[0];
    case Kind::Affine: return params_[0] + params_[1] * t;
    case Kind::Sinusoidal: return params_[0] + params_[1] * std::sin(params_[2] * t);
    case Kind::Table: {
        if (t <= times_.front())
            return values_.front();
        if (t >= times_.back())
            return values_.back();
        auto hi = std::upper_bound(times_.begin(), times_.end(), t);
        auto k = static_cast<std::size_t>(hi - times_.begin());
        double w = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
        return (1.0 - w) * values_[k - 1] + w * values_[k];
    }
    }
    return 0.0;
}

std::string TimeProfile::describe() const
{
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
    case Kind::Constant: os << "constant:" << params_[0]; break;
    case Kind::Affine: os << "affine:" << params_[0] << ',' << params_[1]; break;
    case Kind::Sinusoidal:
        os << "sinusoidal:" << params_[0] << ',' << params_[1] << ',' << params_[2];
        break;
    case Kind::Table: os << "table(" << times_.size() << " samples)"; break;
    }
    return os.str();
}

CoefficientFn TimeProfile::as_coefficient() const
{
    return [profile = *this](double t, double) { return profile(t); };
}

// ---------------------------------------------------------------------------
// CoefficientSet

CoefficientSet CoefficientSet::from_profiles(int dim, std::span<const TimeProfile> a,
                                             std::span<const TimeProfile> b, const TimeProfile& c)
{
    if (dim != 1 && dim != 2)
        throw Error(ErrorCode::InvalidArgument, "dimension must be 1 or 2");
    auto d = static_cast<std::size_t>(dim);
    if (a.size() != d * d || b.size() != d)
        throw Error(ErrorCode::InvalidArgument, "coefficient profile count does not match dimension");

    CoefficientSet set;
    set.dim = dim;
    for (std::size_t i = 0; i < 2; ++i) {
        set.b[i] = i < d ? b[i].as_coefficient() : zero_fn();
        for (std::size_t j = 0; j < 2; ++j)
            set.a[i][j] = (i < d && j < d) ? a[i * d + j].as_coefficient() : zero_fn();
    }
    set.c = c.as_coefficient();
    return set;
}

CoefficientSet CoefficientSet::load_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ValidationError, "cannot open coefficient table '" + path + "'");

    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
            header = split(line, ',');
            break;
        }
    }
    const std::vector<std::string> header1 = {"t", "a11", "b1", "c"};
    const std::vector<std::string> header2 = {"t", "a11", "a12", "a21", "a22", "b1", "b2", "c"};
    int dim = 0;
    if (header == header1)
        dim = 1;
    else if (header == header2)
        dim = 2;
    else
        throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line_no) +
                                               ": header must be 't,a11,b1,c' or "
                                               "'t,a11,a12,a21,a22,b1,b2,c'");

    std::vector<std::vector<double>> columns(header.size());
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line_no) +
                                                   ": expected " + std::to_string(header.size()) +
                                                   " columns");
        for (std::size_t k = 0; k < cells.size(); ++k) {
            try {
                columns[k].push_back(parse_number(cells[k], path));
            } catch (const Error&) {
                throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line_no) +
                                                       ": bad number '" + cells[k] + "'");
            }
        }
    }
    if (columns[0].empty())
        throw Error(ErrorCode::ParseError, path + ": no data rows");

    auto column = [&](std::size_t k) { return TimeProfile::table(columns[0], columns[k]); };
    std::vector<TimeProfile> a;
    std::vector<TimeProfile> b;
    if (dim == 1) {
        a = {column(1)};
        b = {column(2)};
        return from_profiles(1, a, b, column(3));
    }
    a = {column(1), column(2), column(3), column(4)};
    b = {column(5), column(6)};
    return from_profiles(2, a, b, column(7));
}

// ---------------------------------------------------------------------------
// DomainSpec

void DomainSpec::validate() const
{
    if (dim != 1 && dim != 2)
        throw Error(ErrorCode::ValidationError, "dimension must be 1 or 2");
    if (!(alpha < beta))
        throw Error(ErrorCode::ValidationError, "domain requires alpha < beta");
    if (!(T > 0.0))
        throw Error(ErrorCode::ValidationError, "time horizon T must be positive");
    if (dim == 2 && !(cross_lo < cross_hi))
        throw Error(ErrorCode::ValidationError, "cross-section requires lower < upper");
}

// ---------------------------------------------------------------------------
// check_assumptions

EllipticityReport check_assumptions(const CoefficientSet& coeffs, std::span<const double> times,
                                    std::span<const double> cross_samples)
{
    if (times.empty())
        throw Error(ErrorCode::InvalidArgument, "check_assumptions needs at least one sample time");
    const std::array<double, 1> origin{0.0};
    if (cross_samples.empty() || coeffs.dim == 1)
        cross_samples = origin;

    EllipticityReport report;
    report.nu0 = std::numeric_limits<double>::infinity();
    const int d = coeffs.dim;
    for (double t : times) {
        for (double x : cross_samples) {
            std::array<std::array<double, 2>, 2> m{};
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    m[i][j] = coeffs.diffusion(i, j, t, x);

            double bound = std::abs(coeffs.reaction(t, x));
            for (int i = 0; i < d; ++i) {
                bound = std::max(bound, std::abs(coeffs.advection(i, t, x)));
                for (int j = 0; j < d; ++j)
                    bound = std::max(bound, std::abs(m[i][j]));
            }
            if (!std::isfinite(bound))
                throw Error(ErrorCode::InvalidArgument,
                            "non-finite coefficient sample at t=" + std::to_string(t));
            report.max_abs_coefficient = std::max(report.max_abs_coefficient, bound);

            double lambda_min = m[0][0];
            if (d == 2) {
                report.max_asymmetry = std::max(report.max_asymmetry, std::abs(m[0][1] - m[1][0]));
                double off = 0.5 * (m[0][1] + m[1][0]);
                double mean = 0.5 * (m[0][0] + m[1][1]);
                double half_gap = 0.5 * (m[0][0] - m[1][1]);
                lambda_min = mean - std::hypot(half_gap, off);
            }
            report.nu0 = std::min(report.nu0, lambda_min);
        }
    }
    report.symmetric = report.max_asymmetry <= kSymmetryTolerance;
    if (!report.symmetric)
        throw Error(ErrorCode::AsymmetricCoefficients,
                    "max |a_ij - a_ji| = " + std::to_string(report.max_asymmetry));
    if (!(report.nu0 > 0.0))
        throw Error(ErrorCode::NonElliptic, "smallest eigenvalue estimate " +
                                                std::to_string(report.nu0) + " is not positive");
    return report;
}

// ---------------------------------------------------------------------------
// Manufactured solutions

namespace {

SpaceTimeFn constant_field(double value)
{
    return [value](double, double, double) { return value; };
}

} // namespace

ManufacturedSolution ManufacturedSolution::preset(std::string_view name, int dim)
{
    using std::cos;
    using std::exp;
    using std::sin;
    constexpr double pi = std::numbers::pi;

    if (dim != 1 && dim != 2)
        throw Error(ErrorCode::InvalidArgument, "dimension must be 1 or 2");

    ManufacturedSolution ms;
    ms.dim = dim;
    for (auto& row : ms.hess)
        row.fill(constant_field(0.0));
    ms.grad.fill(constant_field(0.0));

    if (name == "zero") {
        ms.u = constant_field(0.0);
        ms.u_t = constant_field(0.0);
        return ms;
    }
    if (name == "tx") {
        // u = t * x_n
        ms.u = [](double t, double, double x) { return t * x; };
        ms.u_t = [](double, double, double x) { return x; };
        ms.grad[dim - 1] = [](double t, double, double) { return t; };
        return ms;
    }
    if (name == "sine" && dim == 1) {
        ms.u = [](double t, double, double x) { return exp(-t) * sin(pi * x); };
        ms.u_t = [](double t, double, double x) { return -exp(-t) * sin(pi * x); };
        ms.grad[0] = [](double t, double, double x) { return pi * exp(-t) * cos(pi * x); };
        ms.hess[0][0] = [](double t, double, double x) { return -pi * pi * exp(-t) * sin(pi * x); };
        return ms;
    }
    if (name == "sine" && dim == 2) {
        ms.u = [](double t, double X, double x) { return exp(-t) * sin(pi * X) * sin(pi * x); };
        ms.u_t = [](double t, double X, double x) { return -exp(-t) * sin(pi * X) * sin(pi * x); };
        ms.grad[0] = [](double t, double X, double x) { return pi * exp(-t) * cos(pi * X) * sin(pi * x); };
        ms.grad[1] = [](double t, double X, double x) { return pi * exp(-t) * sin(pi * X) * cos(pi * x); };
        ms.hess[0][0] = [](double t, double X, double x) {
            return -pi * pi * exp(-t) * sin(pi * X) * sin(pi * x);
        };
        ms.hess[1][1] = ms.hess[0][0];
        ms.hess[0][1] = [](double t, double X, double x) {
            return pi * pi * exp(-t) * cos(pi * X) * cos(pi * x);
        };
        ms.hess[1][0] = ms.hess[0][1];
        return ms;
    }
    if (name == "sine-plus-linear" && dim == 1) {
        // u = e^{-t} sin(pi x) + x cos t
        ms.u = [](double t, double, double x) { return exp(-t) * sin(pi * x) + x * cos(t); };
        ms.u_t = [](double t, double, double x) { return -exp(-t) * sin(pi * x) - x * sin(t); };
        ms.grad[0] = [](double t, double, double x) { return pi * exp(-t) * cos(pi * x) + cos(t); };
        ms.hess[0][0] = [](double t, double, double x) { return -pi * pi * exp(-t) * sin(pi * x); };
        return ms;
    }
    if (name == "sine-plus-linear" && dim == 2) {
        // u = e^{-t} sin(pi X) sin(pi x) + X x cos t
        auto base = preset("sine", 2);
        ms.u = [u = base.u](double t, double X, double x) { return u(t, X, x) + X * x * cos(t); };
        ms.u_t = [ut = base.u_t](double t, double X, double x) { return ut(t, X, x) - X * x * sin(t); };
        ms.grad[0] = [g = base.grad[0]](double t, double X, double x) { return g(t, X, x) + x * cos(t); };
        ms.grad[1] = [g = base.grad[1]](double t, double X, double x) { return g(t, X, x) + X * cos(t); };
        ms.hess[0][0] = base.hess[0][0];
        ms.hess[1][1] = base.hess[1][1];
        ms.hess[0][1] = [h = base.hess[0][1]](double t, double X, double x) { return h(t, X, x) + cos(t); };
        ms.hess[1][0] = ms.hess[0][1];
        return ms;
    }
    throw Error(ErrorCode::ValidationError, "unknown manufactured solution '" + std::string(name) + "'");
}

SpaceTimeFn manufactured_forcing(const ManufacturedSolution& exact, const CoefficientSet& coeffs)
{
    const int d = coeffs.dim;
    if (exact.dim != d)
        throw Error(ErrorCode::InvalidArgument, "solution and coefficient dimensions differ");
    auto require = [](const SpaceTimeFn& fn, const char* what) {
        if (!fn)
            throw Error(ErrorCode::MissingDerivative, std::string("missing ") + what);
    };
    require(exact.u, "u");
    require(exact.u_t, "u_t");
    for (int i = 0; i < d; ++i) {
        require(exact.grad[i], "gradient component");
        for (int j = 0; j < d; ++j)
            require(exact.hess[i][j], "second derivative");
    }

    return [exact, coeffs, d](double t, double X, double x) {
        double value = exact.u_t(t, X, x) + coeffs.reaction(t, X) * exact.u(t, X, x);
        for (int i = 0; i < d; ++i) {
            value += coeffs.advection(i, t, X) * exact.grad[i](t, X, x);
            for (int j = 0; j < d; ++j)
                value -= coeffs.diffusion(i, j, t, X) * exact.hess[i][j](t, X, x);
        }
        return value;
    };
}

ParabolicProblem make_manufactured_problem(std::string name, const DomainSpec& domain,
                                           CoefficientSet coeffs, ManufacturedSolution exact)
{
    domain.validate();
    if (coeffs.dim != domain.dim)
        throw Error(ErrorCode::InvalidArgument, "coefficient and domain dimensions differ");
    ParabolicProblem problem;
    problem.name = std::move(name);
    problem.domain = domain;
    problem.f = manufactured_forcing(exact, coeffs);
    problem.g = exact.u;
    problem.coeffs = std::move(coeffs);
    problem.exact = std::move(exact);
    return problem;
}

// ---------------------------------------------------------------------------
// Presets

CoefficientSet coefficient_preset(std::string_view name)
{
    using P = TimeProfile;
    if (name == "heat1d" || name == "zero1d") {
        std::array a{P::constant(1.0)};
        std::array b{P::constant(0.0)};
        return CoefficientSet::from_profiles(1, a, b, P::constant(0.0));
    }
    if (name == "varcoef1d") {
        // a = 1 + t/2, b = sin t, c = 1
        std::array a{P::affine(1.0, 0.5)};
        std::array b{P::sinusoidal(0.0, 1.0, 1.0)};
        return CoefficientSet::from_profiles(1, a, b, P::constant(1.0));
    }
    if (name == "heat2d" || name == "zero2d") {
        std::array a{P::constant(1.0), P::constant(0.0), P::constant(0.0), P::constant(1.0)};
        std::array b{P::constant(0.0), P::constant(0.0)};
        return CoefficientSet::from_profiles(2, a, b, P::constant(0.0));
    }
    if (name == "varcoef2d") {
        std::array a{P::affine(1.0, 1.0), P::constant(0.5), P::constant(0.5), P::affine(1.0, 1.0)};
        std::array b{P::sinusoidal(0.0, 0.5, 1.0), P::sinusoidal(0.25, 0.5, 2.0)};
        return CoefficientSet::from_profiles(2, a, b, P::constant(1.0));
    }
    throw Error(ErrorCode::ValidationError, "unknown problem preset '" + std::string(name) + "'");
}

std::string_view default_solution_for(std::string_view preset)
{
    if (preset == "zero1d" || preset == "zero2d")
        return "zero";
    if (preset == "varcoef1d" || preset == "varcoef2d")
        return "sine-plus-linear";
    return "sine";
}

int preset_dimension(std::string_view preset)
{
    return coefficient_preset(preset).dim;
}

ParabolicProblem make_preset_problem(std::string_view preset, const DomainSpec& domain)
{
    auto coeffs = coefficient_preset(preset);
    auto exact = ManufacturedSolution::preset(default_solution_for(preset), coeffs.dim);
    return make_manufactured_problem(std::string(preset), domain, std::move(coeffs), std::move(exact));
}

} // namespace oswr
