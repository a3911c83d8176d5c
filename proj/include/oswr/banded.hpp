#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oswr {

/// Square matrix with `lower` sub- and `upper` super-diagonals, stored by
/// diagonal: row i keeps columns i-lower .. i+upper contiguously.
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(std::size_t size, std::size_t lower, std::size_t upper);

    std::size_t size() const noexcept { return size_; }
    std::size_t lower() const noexcept { return lower_; }
    std::size_t upper() const noexcept { return upper_; }

    bool in_band(std::size_t row, std::size_t col) const noexcept
    {
        return col + lower_ >= row && col <= row + upper_;
    }

    /// Entry (row, col); zero outside the band.
    double operator()(std::size_t row, std::size_t col) const noexcept;
    /// Accumulates into an in-band entry. Throws InvalidArgument off-band.
    void add(std::size_t row, std::size_t col, double value);
    void set(std::size_t row, std::size_t col, double value);

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    double norm_inf() const noexcept;

private:
    std::size_t index(std::size_t row, std::size_t col) const noexcept
    {
        return row * (lower_ + upper_ + 1) + (col + lower_ - row);
    }

    std::size_t size_ = 0;
    std::size_t lower_ = 0;
    std::size_t upper_ = 0;
    std::vector<double> data_;
};

/// LU factorization with partial pivoting of a BandedMatrix. The upper
/// factor widens to lower+upper diagonals to hold pivoting fill-in.
class BandedLU {
public:
    /// Throws SingularSystem when a pivot underflows relative to |A|.
    explicit BandedLU(const BandedMatrix& a);

    std::size_t size() const noexcept { return size_; }
    /// Overwrites rhs with A^{-1} rhs.
    void solve(std::span<double> rhs) const;

private:
    double& at(std::size_t row, std::size_t col) noexcept
    {
        return factors_[col * stride_ + (lower_ + fill_upper_ + row - col)];
    }
    double at(std::size_t row, std::size_t col) const noexcept
    {
        return factors_[col * stride_ + (lower_ + fill_upper_ + row - col)];
    }

    std::size_t size_ = 0;
    std::size_t lower_ = 0;
    std::size_t fill_upper_ = 0;
    std::size_t stride_ = 0;
    std::vector<double> factors_;
    std::vector<std::size_t> pivots_;
};

/// Relative residual |Ax - b|_inf / (|A|_inf |x|_inf + |b|_inf).
double relative_residual(const BandedMatrix& a, std::span<const double> x, std::span<const double> b);

} // namespace oswr
