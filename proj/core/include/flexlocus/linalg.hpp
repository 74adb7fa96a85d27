#pragma once

#include <optional>
#include <vector>

#include "flexlocus/errors.hpp"

namespace flexlocus {

template <class K>
using Matrix = std::vector<std::vector<K>>;

/// Raised when fraction-free elimination cannot find an invertible pivot in a
/// column that still holds nonzero (non-unit) entries. Only reachable over
/// rings with non-units, e.g. dual numbers; callers fall back to another route.
struct NonUnitPivot {};

/// Fraction-free (Bareiss) determinant. Works over any field, and over dual
/// numbers as long as every pivot has an invertible real part.
template <class K>
K det_bareiss(Matrix<K> m, const typename K::Ctx& ctx) {
    const int n = int(m.size());
    if (n == 0) return ctx.one();
    bool negate = false;
    K prev = ctx.one();
    for (int k = 0; k < n - 1; ++k) {
        int pivot = -1;
        bool nonzero_seen = false;
        for (int r = k; r < n; ++r) {
            if (m[r][k].is_zero()) continue;
            nonzero_seen = true;
            if (m[r][k].is_unit()) { pivot = r; break; }
        }
        if (pivot < 0) {
            if (nonzero_seen) throw NonUnitPivot{};
            return ctx.zero();
        }
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            negate = !negate;
        }
        K pinv = prev.inv();
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) * pinv;
            }
            m[i][k] = ctx.zero();
        }
        prev = m[k][k];
    }
    K det = m[n - 1][n - 1];
    return negate ? -det : det;
}

/// Particular solution of A x = b by Gaussian elimination (A is rows x cols,
/// possibly rank-deficient). Free variables are set to zero. Returns nullopt
/// when the system is inconsistent.
template <class K>
std::optional<std::vector<K>> solve_linear(Matrix<K> a, std::vector<K> b,
                                           const typename K::Ctx& ctx) {
    const int rows = int(a.size());
    const int cols = rows ? int(a[0].size()) : 0;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c].is_unit()) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[pr], a[r]);
        std::swap(b[pr], b[r]);
        K inv = a[r][c].inv();
        for (int j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        b[r] = b[r] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            K f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    std::vector<K> x(cols, ctx.zero());
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
    return x;
}

/// One nonzero kernel vector of an (n x m) matrix with m = n+1 and rank n,
/// e.g. the common zero of n independent linear forms in P^n.
template <class K>
std::optional<std::vector<K>> kernel_vector(Matrix<K> a, const typename K::Ctx& ctx) {
    const int rows = int(a.size());
    const int cols = rows ? int(a[0].size()) : 0;
    std::vector<int> pivot_of_col(cols, -1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c].is_unit()) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[pr], a[r]);
        K inv = a[r][c].inv();
        for (int j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            K f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivot_of_col[c] = r;
        ++r;
    }
    // first free column yields a kernel vector
    for (int c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<K> x(cols, ctx.zero());
        x[c] = ctx.one();
        for (int j = 0; j < cols; ++j) {
            if (pivot_of_col[j] >= 0) x[j] = -a[pivot_of_col[j]][c];
        }
        return x;
    }
    return std::nullopt;
}

}  // namespace flexlocus
