#ifndef EVASIVE_LINALG_HPP
#define EVASIVE_LINALG_HPP

#include <cstddef>
#include <vector>

#include "field.hpp"

namespace evasive {

/// Dense row-major matrix of field elements.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    Elem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    Elem at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Mat from_rows(const std::vector<std::vector<Elem>>& rows_in) {
        Mat m(rows_in.size(), rows_in.empty() ? 0 : rows_in[0].size());
        for (std::size_t r = 0; r < m.rows; ++r)
            for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows_in[r][c];
        return m;
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

/// In-place reduced row echelon form with first-nonzero pivoting.
/// Returns the pivot column of each pivot row; rank = pivots.size().
inline std::vector<std::size_t> rref_in_place(const Field& f, Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != row) {
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(row, c));
        }
        const Elem inv = f.inv(m.at(row, col));
        for (std::size_t c = col; c < m.cols; ++c) m.at(row, c) = f.mul(m.at(row, c), inv);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row) continue;
            const Elem factor = m.at(r, col);
            if (factor == 0) continue;
            for (std::size_t c = col; c < m.cols; ++c) {
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(const Field& f, Mat m) { return rref_in_place(f, m).size(); }

/// Determinant of a square matrix by Gaussian elimination.
inline Elem det(const Field& f, Mat m) {
    if (m.rows != m.cols) throw InvalidParameter("determinant of a non-square matrix");
    Elem d = 1;
    for (std::size_t col = 0; col < m.cols; ++col) {
        std::size_t pivot = col;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) return 0;
        if (pivot != col) {
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(col, c));
            d = f.neg(d);
        }
        d = f.mul(d, m.at(col, col));
        const Elem inv = f.inv(m.at(col, col));
        for (std::size_t r = col + 1; r < m.rows; ++r) {
            const Elem factor = f.mul(m.at(r, col), inv);
            if (factor == 0) continue;
            for (std::size_t c = col; c < m.cols; ++c) {
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(col, c)));
            }
        }
    }
    return d;
}

/// Solve Mx = b for square invertible M; throws SingularMatrix otherwise.
inline std::vector<Elem> solve(const Field& f, Mat m, std::vector<Elem> b) {
    if (m.rows != m.cols || b.size() != m.rows) throw InvalidParameter("solve expects a square system");
    const std::size_t n = m.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m.at(pivot, col) == 0) ++pivot;
        if (pivot == n) throw SingularMatrix("linear system has rank below its dimension");
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
            std::swap(b[pivot], b[col]);
        }
        const Elem inv = f.inv(m.at(col, col));
        for (std::size_t c = col; c < n; ++c) m.at(col, c) = f.mul(m.at(col, c), inv);
        b[col] = f.mul(b[col], inv);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Elem factor = m.at(r, col);
            if (factor == 0) continue;
            for (std::size_t c = col; c < n; ++c) {
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(col, c)));
            }
            b[r] = f.sub(b[r], f.mul(factor, b[col]));
        }
    }
    return b;
}

/// Inverse of a square matrix; throws SingularMatrix when rank-deficient.
inline Mat invert(const Field& f, const Mat& m) {
    if (m.rows != m.cols) throw InvalidParameter("inverse of a non-square matrix");
    const std::size_t n = m.rows;
    Mat aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, n + r) = 1;
    }
    auto pivots = rref_in_place(f, aug);
    if (pivots.size() != n || pivots.back() != n - 1) throw SingularMatrix("matrix is not invertible");
    for (std::size_t i = 0; i < n; ++i)
        if (pivots[i] != i) throw SingularMatrix("matrix is not invertible");
    Mat out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out.at(r, c) = aug.at(r, n + c);
    return out;
}

/// First kernel vector of M in reduced echelon order: the free variable with
/// the smallest column index is set to 1, pivot variables are back-filled,
/// and the result is scaled so its first nonzero coordinate is 1.
/// Empty vector when the kernel is trivial.
inline std::vector<Elem> first_kernel_vector(const Field& f, Mat m) {
    const std::size_t cols = m.cols;
    auto pivots = rref_in_place(f, m);
    if (pivots.size() == cols) return {};
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::size_t free_col = 0;
    while (free_col < cols && is_pivot[free_col]) ++free_col;
    std::vector<Elem> v(cols, 0);
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        v[pivots[r]] = f.neg(m.at(r, free_col));
    }
    for (std::size_t c = 0; c < cols; ++c) {
        if (v[c] != 0) {
            const Elem scale = f.inv(v[c]);
            for (std::size_t j = c; j < cols; ++j) v[j] = f.mul(v[j], scale);
            break;
        }
    }
    return v;
}

inline std::vector<Elem> mat_vec(const Field& f, const Mat& m, const std::vector<Elem>& x) {
    std::vector<Elem> y(m.rows, 0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        Elem acc = 0;
        for (std::size_t c = 0; c < m.cols; ++c) acc = f.add(acc, f.mul(m.at(r, c), x[c]));
        y[r] = acc;
    }
    return y;
}

} // namespace evasive

#endif // EVASIVE_LINALG_HPP
