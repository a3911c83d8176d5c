#include "doctest.h"

#include "oswr/banded.hpp"
#include "oswr/error.hpp"

#include <Eigen/Dense>

#include <random>
#include <vector>

using namespace oswr;

namespace {

BandedMatrix random_banded(std::size_t n, std::size_t kl, std::size_t ku, std::mt19937_64& engine,
                           bool dominant)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    BandedMatrix m(n, kl, ku);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r >= kl ? r - kl : 0; c <= std::min(n - 1, r + ku); ++c)
            m.set(r, c, unit(engine));
    if (dominant)
        for (std::size_t r = 0; r < n; ++r)
            m.add(r, r, static_cast<double>(kl + ku + 1));
    return m;
}

Eigen::MatrixXd dense(const BandedMatrix& m)
{
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.size(), m.size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m.size(); ++c)
            d(r, c) = m(r, c);
    return d;
}

} // namespace

TEST_CASE("band storage")
{
    BandedMatrix m(5, 1, 2);
    m.set(2, 1, 3.0);
    m.add(2, 1, 1.0);
    m.set(2, 4, -2.0);
    CHECK(m(2, 1) == 4.0);
    CHECK(m(2, 4) == -2.0);
    CHECK(m(2, 0) == 0.0);
    CHECK(m(0, 3) == 0.0);
    CHECK_THROWS_AS(m.add(2, 0, 1.0), Error);
    CHECK_THROWS_AS(m.set(0, 3, 1.0), Error);
    CHECK(m.norm_inf() == 6.0);

    std::vector<double> x{1, 2, 3, 4, 5}, y(5);
    m.multiply(x, y);
    CHECK(y[2] == doctest::Approx(4.0 * 2 - 2.0 * 5));
}

TEST_CASE("banded LU matches a dense solve")
{
    std::mt19937_64 engine(3);
    for (auto [n, kl, ku] : {std::tuple{1, 0, 0}, {7, 1, 1}, {20, 3, 2}, {40, 6, 6}, {30, 0, 4}, {25, 5, 0}}) {
        for (bool dominant : {true, false}) {
            CAPTURE(n);
            CAPTURE(kl);
            CAPTURE(ku);
            auto m = random_banded(n, kl, ku, engine, dominant);
            std::vector<double> b(n);
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            for (auto& v : b)
                v = unit(engine);
            Eigen::VectorXd reference =
                dense(m).fullPivLu().solve(Eigen::Map<Eigen::VectorXd>(b.data(), static_cast<long>(n)));
            auto x = b;
            BandedLU lu(m);
            lu.solve(x);
            for (std::size_t k = 0; k < x.size(); ++k)
                CHECK(x[k] == doctest::Approx(reference[static_cast<long>(k)]).epsilon(1e-9));
            CHECK(relative_residual(m, x, b) <= 1e-13);
        }
    }
}

TEST_CASE("pivoting handles a zero leading entry")
{
    BandedMatrix m(3, 1, 1);
    m.set(0, 0, 0.0);
    m.set(0, 1, 1.0);
    m.set(1, 0, 1.0);
    m.set(1, 1, 1.0);
    m.set(1, 2, 1.0);
    m.set(2, 1, 1.0);
    m.set(2, 2, 2.0);
    std::vector<double> x{1.0, 3.0, 4.0};
    BandedLU(m).solve(x);
    // x = (0.5, 1, 1.5)
    CHECK(x[0] == doctest::Approx(0.5));
    CHECK(x[1] == doctest::Approx(1.0));
    CHECK(x[2] == doctest::Approx(1.5));
}

TEST_CASE("singular matrices are rejected")
{
    BandedMatrix m(3, 1, 1);
    m.set(0, 0, 1.0);
    m.set(0, 1, 2.0);
    m.set(1, 0, 2.0);
    m.set(1, 1, 4.0);
    m.set(2, 2, 1.0);
    CHECK_THROWS_WITH_AS(BandedLU{m}, doctest::Contains("SingularSystem"), Error);
}
