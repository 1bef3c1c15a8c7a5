#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace solardry {

/// Dense square system A x = b, A stored row-major.
class LinearSystem {
public:
    explicit LinearSystem(std::size_t n) : n_(n), a_(n * n, 0.0), b_(n, 0.0) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    double& a(std::size_t row, std::size_t col) { return a_[row * n_ + col]; }
    [[nodiscard]] double a(std::size_t row, std::size_t col) const { return a_[row * n_ + col]; }
    double& b(std::size_t row) { return b_[row]; }
    [[nodiscard]] double b(std::size_t row) const { return b_[row]; }

    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return {a_.data() + r * n_, n_};
    }
    [[nodiscard]] std::span<const double> rhs() const { return b_; }

private:
    std::size_t n_;
    std::vector<double> a_;
    std::vector<double> b_;
};

inline constexpr double kPivotTolerance = 1e-12;

/// Gauss-Jordan elimination with partial pivoting. A pivot with magnitude below
/// kPivotTolerance throws SingularMatrixError carrying the failing column.
std::vector<double> gauss_jordan(const LinearSystem& system);

/// max_i |(A x - b)_i| / max(max_ij |A_ij| * max_j |x_j|, max_i |b_i|).
double relative_residual(const LinearSystem& system, std::span<const double> x);

}  // namespace solardry
