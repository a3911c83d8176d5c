#include "doctest.h"

#include "oswr/error.hpp"
#include "oswr/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <vector>

using namespace oswr;

namespace {

constexpr double pi = std::numbers::pi;

CoefficientSet constant_coeffs_2d(double a11, double a12, double a21, double a22)
{
    std::array a{TimeProfile::constant(a11), TimeProfile::constant(a12), TimeProfile::constant(a21),
                 TimeProfile::constant(a22)};
    std::array b{TimeProfile::constant(0.0), TimeProfile::constant(0.0)};
    return CoefficientSet::from_profiles(2, a, b, TimeProfile::constant(0.0));
}

std::filesystem::path write_temp(const std::string& name, const std::string& text)
{
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path;
}

// Hand-derived forcing for each preset and its default solution.
double forcing_by_hand(const std::string& preset, double t, double X, double x)
{
    const double e = std::exp(-t);
    if (preset == "heat1d")
        return (pi * pi - 1.0) * e * std::sin(pi * x);
    if (preset == "varcoef1d") {
        const double s = std::sin(pi * x), c = std::cos(pi * x);
        const double u = e * s + x * std::cos(t);
        const double u_t = -e * s - x * std::sin(t);
        const double u_xx = -pi * pi * e * s;
        const double u_x = pi * e * c + std::cos(t);
        return u_t - (1.0 + 0.5 * t) * u_xx + std::sin(t) * u_x + u;
    }
    if (preset == "heat2d")
        return (2.0 * pi * pi - 1.0) * e * std::sin(pi * X) * std::sin(pi * x);
    // varcoef2d
    const double sX = std::sin(pi * X), cX = std::cos(pi * X);
    const double sx = std::sin(pi * x), cx = std::cos(pi * x);
    const double u = e * sX * sx + X * x * std::cos(t);
    const double u_t = -e * sX * sx - X * x * std::sin(t);
    const double u_XX = -pi * pi * e * sX * sx;
    const double u_xx = u_XX;
    const double u_Xx = pi * pi * e * cX * cx + std::cos(t);
    const double u_X = pi * e * cX * sx + x * std::cos(t);
    const double u_x = pi * e * sX * cx + X * std::cos(t);
    const double b1 = 0.5 * std::sin(t);
    const double b2 = 0.25 + 0.5 * std::sin(2.0 * t);
    return u_t - (1.0 + t) * (u_XX + u_xx) - u_Xx + b1 * u_X + b2 * u_x + u;
}

} // namespace

TEST_CASE("time profiles")
{
    CHECK(TimeProfile::constant(2.5)(7.0) == 2.5);
    CHECK(TimeProfile::affine(1.0, 0.5)(2.0) == doctest::Approx(2.0));
    CHECK(TimeProfile::sinusoidal(0.25, 0.5, 2.0)(0.3) == doctest::Approx(0.25 + 0.5 * std::sin(0.6)));

    auto table = TimeProfile::table({0.0, 1.0, 2.0}, {1.0, 3.0, 2.0});
    CHECK(table(0.5) == doctest::Approx(2.0));
    CHECK(table(1.5) == doctest::Approx(2.5));
    CHECK(table(-1.0) == 1.0);
    CHECK(table(5.0) == 2.0);

    CHECK(TimeProfile::parse("3")(0.0) == 3.0);
    CHECK(TimeProfile::parse("affine:1,0.5")(1.0) == doctest::Approx(1.5));
    CHECK(TimeProfile::parse("sinusoidal:0,1,1")(0.5) == doctest::Approx(std::sin(0.5)));
    CHECK_THROWS_AS(TimeProfile::parse("cubic:1"), Error);
    CHECK_THROWS_AS(TimeProfile::parse("affine:1"), Error);
    CHECK_THROWS_AS(TimeProfile::table({0.0, 0.0}, {1.0, 2.0}), Error);
}

TEST_CASE("check_assumptions examples")
{
    const std::vector<double> times{0.0, 0.5, 1.0};

    SUBCASE("identity diffusion in 1D")
    {
        auto report = check_assumptions(coefficient_preset("heat1d"), times);
        CHECK(report.nu0 == 1.0);
        CHECK(report.symmetric);
    }
    SUBCASE("diag(2, 1)")
    {
        auto report = check_assumptions(constant_coeffs_2d(2.0, 0.0, 0.0, 1.0), times);
        CHECK(report.nu0 == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("[[1+t, 0.5], [0.5, 1+t]]")
    {
        std::array a{TimeProfile::affine(1.0, 1.0), TimeProfile::constant(0.5), TimeProfile::constant(0.5),
                     TimeProfile::affine(1.0, 1.0)};
        std::array b{TimeProfile::constant(0.0), TimeProfile::constant(0.0)};
        auto coeffs = CoefficientSet::from_profiles(2, a, b, TimeProfile::constant(0.0));
        // eigenvalues (1+t) +- 0.5, smallest at t = 0
        CHECK(check_assumptions(coeffs, times).nu0 == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("failures")
    {
        CHECK_THROWS_WITH_AS(check_assumptions(constant_coeffs_2d(1.0, 0.2, 0.1, 1.0), times),
                             doctest::Contains("AsymmetricCoefficients"), Error);
        CHECK_THROWS_WITH_AS(check_assumptions(constant_coeffs_2d(1.0, 2.0, 2.0, 1.0), times),
                             doctest::Contains("NonElliptic"), Error);
        CHECK_THROWS_AS(check_assumptions(constant_coeffs_2d(0.0, 0.0, 0.0, 1.0), times), Error);
    }
}

TEST_CASE("check_assumptions is invariant under permutation of the sample times")
{
    auto coeffs = coefficient_preset("varcoef2d");
    std::vector<double> times{0.0, 0.1, 0.35, 0.5, 0.8, 1.0};
    const auto reference = check_assumptions(coeffs, times);
    std::mt19937_64 engine(11);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(times.begin(), times.end(), engine);
        const auto report = check_assumptions(coeffs, times);
        CHECK(report.nu0 == reference.nu0);
        CHECK(report.max_abs_coefficient == reference.max_abs_coefficient);
    }
}

TEST_CASE("manufactured_forcing examples")
{
    SUBCASE("zero solution")
    {
        auto f = manufactured_forcing(ManufacturedSolution::preset("zero", 1), coefficient_preset("varcoef1d"));
        CHECK(f(0.3, 0.0, 0.7) == 0.0);
    }
    SUBCASE("e^{-t} sin x under the heat operator")
    {
        ManufacturedSolution ms;
        ms.dim = 1;
        ms.u = [](double t, double, double x) { return std::exp(-t) * std::sin(x); };
        ms.u_t = [](double t, double, double x) { return -std::exp(-t) * std::sin(x); };
        ms.grad[0] = [](double t, double, double x) { return std::exp(-t) * std::cos(x); };
        ms.hess[0][0] = [](double t, double, double x) { return -std::exp(-t) * std::sin(x); };
        auto f = manufactured_forcing(ms, coefficient_preset("heat1d"));
        for (double x : {0.1, 0.5, 2.0})
            CHECK(std::abs(f(0.4, 0.0, x)) <= 1e-15);
    }
    SUBCASE("u = t x with a = b = c = 1")
    {
        std::array a{TimeProfile::constant(1.0)};
        std::array b{TimeProfile::constant(1.0)};
        auto f = manufactured_forcing(ManufacturedSolution::preset("tx", 1),
                                      CoefficientSet::from_profiles(1, a, b, TimeProfile::constant(1.0)));
        for (double t : {0.0, 0.3, 1.0})
            for (double x : {0.0, 0.25, 0.9})
                CHECK(f(t, 0.0, x) == doctest::Approx(x + t + t * x).epsilon(1e-15));
    }
    SUBCASE("missing derivative")
    {
        auto ms = ManufacturedSolution::preset("sine", 1);
        ms.hess[0][0] = nullptr;
        CHECK_THROWS_WITH_AS(manufactured_forcing(ms, coefficient_preset("heat1d")),
                             doctest::Contains("MissingDerivative"), Error);
    }
}

TEST_CASE("preset residuals vanish at random points")
{
    std::mt19937_64 engine(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const std::string preset : {"heat1d", "varcoef1d", "heat2d", "varcoef2d"}) {
        CAPTURE(preset);
        auto problem = make_preset_problem(preset, DomainSpec{preset_dimension(preset)});
        for (int k = 0; k < 100; ++k) {
            const double t = unit(engine), x = unit(engine);
            const double X = problem.dim() == 2 ? unit(engine) : 0.0;
            CHECK(std::abs(problem.f(t, X, x) - forcing_by_hand(preset, t, X, x)) <= 1e-10);
        }
    }
}

TEST_CASE("manufactured derivatives agree with finite differences of u")
{
    const double step = 1e-4;
    std::mt19937_64 engine(5);
    std::uniform_real_distribution<double> unit(0.1, 0.9);
    for (int dim : {1, 2}) {
        for (const char* name : {"tx", "sine", "sine-plus-linear"}) {
            CAPTURE(dim);
            CAPTURE(name);
            auto ms = ManufacturedSolution::preset(name, dim);
            for (int k = 0; k < 20; ++k) {
                std::array<double, 2> pt{unit(engine), unit(engine)};
                const double t = unit(engine);
                auto u = [&](double tt, std::array<double, 2> q) {
                    return dim == 2 ? ms.u(tt, q[0], q[1]) : ms.u(tt, 0.0, q[0]);
                };
                auto eval = [&](const SpaceTimeFn& fn) {
                    return dim == 2 ? fn(t, pt[0], pt[1]) : fn(t, 0.0, pt[0]);
                };
                CHECK(eval(ms.u_t) == doctest::Approx((u(t + step, pt) - u(t - step, pt)) / (2 * step)).epsilon(1e-6));
                for (int i = 0; i < dim; ++i) {
                    auto plus = pt, minus = pt;
                    plus[i] += step;
                    minus[i] -= step;
                    const double fd = (u(t, plus) - u(t, minus)) / (2 * step);
                    CHECK(std::abs(eval(ms.grad[i]) - fd) <= 1e-6);
                    for (int j = 0; j < dim; ++j) {
                        auto pp = pt, pm = pt, mp = pt, mm = pt;
                        pp[i] += step; pp[j] += step;
                        pm[i] += step; pm[j] -= step;
                        mp[i] -= step; mp[j] += step;
                        mm[i] -= step; mm[j] -= step;
                        const double fd2 = (u(t, pp) - u(t, pm) - u(t, mp) + u(t, mm)) / (4 * step * step);
                        CHECK(std::abs(eval(ms.hess[i][j]) - fd2) <= 1e-5);
                    }
                }
            }
        }
    }
}

TEST_CASE("coefficient tables")
{
    SUBCASE("1D table interpolates")
    {
        auto path = write_temp("oswr_coeffs_1d.csv", "t,a11,b1,c\n0,1,0,0\n1,2,0.5,1\n");
        auto coeffs = CoefficientSet::load_csv(path.string());
        CHECK(coeffs.dim == 1);
        CHECK(coeffs.diffusion(0, 0, 0.5) == doctest::Approx(1.5));
        CHECK(coeffs.advection(0, 0.5) == doctest::Approx(0.25));
        CHECK(coeffs.reaction(1.0) == doctest::Approx(1.0));
    }
    SUBCASE("2D table")
    {
        auto path = write_temp("oswr_coeffs_2d.csv", "t,a11,a12,a21,a22,b1,b2,c\n0,1,0.1,0.1,2,0,0,0\n");
        auto coeffs = CoefficientSet::load_csv(path.string());
        CHECK(coeffs.dim == 2);
        CHECK(coeffs.diffusion(1, 1, 0.3) == 2.0);
        CHECK(coeffs.diffusion(0, 1, 0.3) == doctest::Approx(0.1));
    }
    SUBCASE("bad header names the line")
    {
        auto path = write_temp("oswr_coeffs_bad.csv", "time,a,b,c\n0,1,0,0\n");
        CHECK_THROWS_WITH_AS(CoefficientSet::load_csv(path.string()), doctest::Contains(":1:"), Error);
    }
    SUBCASE("bad row names the line")
    {
        auto path = write_temp("oswr_coeffs_row.csv", "t,a11,b1,c\n0,1,0,0\n1,x,0,0\n");
        try {
            CoefficientSet::load_csv(path.string());
            FAIL("expected ParseError");
        } catch (const Error& err) {
            CHECK(err.code() == ErrorCode::ParseError);
            CHECK(std::string(err.what()).find(":3:") != std::string::npos);
        }
    }
}

TEST_CASE("domain validation")
{
    DomainSpec d;
    d.alpha = 1.0;
    d.beta = 1.0;
    CHECK_THROWS_AS(d.validate(), Error);
    d.beta = 2.0;
    d.T = 0.0;
    CHECK_THROWS_AS(d.validate(), Error);
    d.T = 1.0;
    CHECK_NOTHROW(d.validate());
    CHECK_THROWS_AS(make_preset_problem("heat3d", DomainSpec{}), Error);
}
