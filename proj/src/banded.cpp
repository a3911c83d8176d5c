#include "oswr/banded.hpp"

#include "oswr/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace oswr {

BandedMatrix::BandedMatrix(std::size_t size, std::size_t lower, std::size_t upper)
    : size_(size), lower_(lower), upper_(upper), data_(size * (lower + upper + 1), 0.0)
{
}

double BandedMatrix::operator()(std::size_t row, std::size_t col) const noexcept
{
    return in_band(row, col) ? data_[index(row, col)] : 0.0;
}

void BandedMatrix::add(std::size_t row, std::size_t col, double value)
{
    if (row >= size_ || col >= size_ || !in_band(row, col))
        throw Error(ErrorCode::InvalidArgument, "banded matrix entry outside the band");
    data_[index(row, col)] += value;
}

void BandedMatrix::set(std::size_t row, std::size_t col, double value)
{
    if (row >= size_ || col >= size_ || !in_band(row, col))
        throw Error(ErrorCode::InvalidArgument, "banded matrix entry outside the band");
    data_[index(row, col)] = value;
}

void BandedMatrix::multiply(std::span<const double> x, std::span<double> y) const
{
    for (std::size_t i = 0; i < size_; ++i) {
        std::size_t first = i > lower_ ? i - lower_ : 0;
        std::size_t last = std::min(size_ - 1, i + upper_);
        double sum = 0.0;
        for (std::size_t j = first; j <= last; ++j)
            sum += data_[index(i, j)] * x[j];
        y[i] = sum;
    }
}

double BandedMatrix::norm_inf() const noexcept
{
    double best = 0.0;
    for (std::size_t i = 0; i < size_; ++i) {
        double row = 0.0;
        for (std::size_t k = 0; k < lower_ + upper_ + 1; ++k)
            row += std::abs(data_[i * (lower_ + upper_ + 1) + k]);
        best = std::max(best, row);
    }
    return best;
}

BandedLU::BandedLU(const BandedMatrix& a)
    : size_(a.size()),
      lower_(a.lower()),
      fill_upper_(a.lower() + a.upper()),
      stride_(2 * a.lower() + a.upper() + 1),
      factors_(a.size() * (2 * a.lower() + a.upper() + 1), 0.0),
      pivots_(a.size())
{
    const std::size_t n = size_;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t first = col > a.upper() ? col - a.upper() : 0;
        std::size_t last = std::min(n - 1, col + lower_);
        for (std::size_t row = first; row <= last; ++row)
            at(row, col) = a(row, col);
    }

    const double tiny = std::numeric_limits<double>::epsilon() * std::max(a.norm_inf(), 1e-300);
    std::size_t reach = 0;  // last column touched by the upper factor so far
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t below = std::min(lower_, n - 1 - j);

        std::size_t pivot = j;
        double best = std::abs(at(j, j));
        for (std::size_t i = j + 1; i <= j + below; ++i) {
            if (std::abs(at(i, j)) > best) {
                best = std::abs(at(i, j));
                pivot = i;
            }
        }
        pivots_[j] = pivot;
        if (!(best > tiny))
            throw Error(ErrorCode::SingularSystem,
                        "pivot underflow in banded factorization at row " + std::to_string(j));

        reach = std::max(reach, std::min(n - 1, pivot + a.upper()));
        if (pivot != j)
            for (std::size_t c = j; c <= reach; ++c)
                std::swap(at(j, c), at(pivot, c));

        const double inv = 1.0 / at(j, j);
        for (std::size_t i = j + 1; i <= j + below; ++i)
            at(i, j) *= inv;
        for (std::size_t c = j + 1; c <= reach; ++c) {
            const double u = at(j, c);
            if (u == 0.0)
                continue;
            for (std::size_t i = j + 1; i <= j + below; ++i)
                at(i, c) -= at(i, j) * u;
        }
    }
}

void BandedLU::solve(std::span<double> rhs) const
{
    if (rhs.size() != size_)
        throw Error(ErrorCode::DataMismatch, "right-hand side length does not match the system");
    const std::size_t n = size_;
    for (std::size_t j = 0; j < n; ++j) {
        if (pivots_[j] != j)
            std::swap(rhs[j], rhs[pivots_[j]]);
        const double v = rhs[j];
        std::size_t below = std::min(lower_, n - 1 - j);
        for (std::size_t i = j + 1; i <= j + below; ++i)
            rhs[i] -= at(i, j) * v;
    }
    for (std::size_t j = n; j-- > 0;) {
        rhs[j] /= at(j, j);
        const double v = rhs[j];
        std::size_t first = j > fill_upper_ ? j - fill_upper_ : 0;
        for (std::size_t i = first; i < j; ++i)
            rhs[i] -= at(i, j) * v;
    }
}

double relative_residual(const BandedMatrix& a, std::span<const double> x, std::span<const double> b)
{
    std::vector<double> ax(a.size());
    a.multiply(x, ax);
    double r = 0.0;
    double xn = 0.0;
    double bn = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        r = std::max(r, std::abs(ax[i] - b[i]));
        xn = std::max(xn, std::abs(x[i]));
        bn = std::max(bn, std::abs(b[i]));
    }
    const double scale = a.norm_inf() * xn + bn;
    return scale > 0.0 ? r / scale : r;
}

} // namespace oswr
