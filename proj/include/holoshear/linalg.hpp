#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace holoshear {

// Small dense helpers; everything here is O(n^3) on matrices of size <= ~20.

using DMat = std::vector<std::vector<double>>;

inline DMat dmat(std::size_t r, std::size_t c, double fill = 0.0) {
    return DMat(r, std::vector<double>(c, fill));
}

inline DMat transpose(const DMat& a) {
    if (a.empty()) return {};
    DMat t = dmat(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline DMat matmul(const DMat& a, const DMat& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    DMat c = dmat(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            const double v = a[i][l];
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += v * b[l][j];
        }
    return c;
}

inline std::vector<double> matvec(const DMat& a, const std::vector<double>& x) {
    std::vector<double> y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

// Partial-pivot LU solve; throws on (numerically) singular systems.
inline std::vector<double> solve(DMat a, std::vector<double> b, double pivot_tol = 1e-12) {
    const std::size_t n = a.size();
    if (n == 0) return {};
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < pivot_tol)
            throw std::runtime_error("solve: singular linear system");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

inline DMat invert(const DMat& a, double pivot_tol = 1e-12) {
    const std::size_t n = a.size();
    DMat inv = dmat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(n, 0.0);
        e[j] = 1.0;
        auto col = solve(a, e, pivot_tol);
        for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
    }
    return inv;
}

inline std::size_t rank(DMat a, double tol = 1e-9) {
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a[0].size();
    std::size_t rk = 0;
    for (std::size_t col = 0; col < cols && rk < rows; ++col) {
        std::size_t piv = rk;
        for (std::size_t r = rk + 1; r < rows; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < tol) continue;
        std::swap(a[rk], a[piv]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rk) continue;
            const double f = a[r][col] / a[rk][col];
            for (std::size_t j = col; j < cols; ++j) a[r][j] -= f * a[rk][j];
        }
        ++rk;
    }
    return rk;
}

inline bool invertible(const DMat& a, double tol = 1e-9) {
    return !a.empty() && rank(a, tol) == a.size();
}

} // namespace holoshear
