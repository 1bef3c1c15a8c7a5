#include "solardry/linear.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "solardry/errors.hpp"

namespace solardry {

std::vector<double> gauss_jordan(const LinearSystem& system) {
    const std::size_t n = system.size();
    // Augmented matrix [A | b], row-major with stride n + 1.
    const std::size_t stride = n + 1;
    std::vector<double> m(n * stride);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m[r * stride + c] = system.a(r, c);
        m[r * stride + n] = system.b(r);
    }
    auto at = [&](std::size_t r, std::size_t c) -> double& { return m[r * stride + c]; };

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
        }
        const double p = at(pivot, col);
        if (!(std::abs(p) >= kPivotTolerance)) throw SingularMatrixError(col, p);
        if (pivot != col) {
            std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(pivot * stride),
                             m.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * stride),
                             m.begin() + static_cast<std::ptrdiff_t>(col * stride));
        }
        const double inv = 1.0 / at(col, col);
        for (std::size_t c = col; c <= n; ++c) at(col, c) *= inv;
        at(col, col) = 1.0;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = at(r, col);
            if (factor == 0.0) continue;
            for (std::size_t c = col; c <= n; ++c) at(r, c) -= factor * at(col, c);
            at(r, col) = 0.0;
        }
    }

    std::vector<double> x(n);
    for (std::size_t r = 0; r < n; ++r) x[r] = at(r, n);
    return x;
}

double relative_residual(const LinearSystem& system, std::span<const double> x) {
    const std::size_t n = system.size();
    double max_a = 0.0;
    double max_x = 0.0;
    double max_b = 0.0;
    double max_res = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double acc = -system.b(r);
        for (std::size_t c = 0; c < n; ++c) {
            acc += system.a(r, c) * x[c];
            max_a = std::max(max_a, std::abs(system.a(r, c)));
        }
        max_res = std::max(max_res, std::abs(acc));
        max_b = std::max(max_b, std::abs(system.b(r)));
    }
    for (double v : x) max_x = std::max(max_x, std::abs(v));
    const double scale = std::max(max_a * max_x, max_b);
    return scale > 0.0 ? max_res / scale : max_res;
}

}  // namespace solardry
