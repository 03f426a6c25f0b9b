#pragma once

#include <utility>
#include <vector>

#include "ftv/cyclotomic.hpp"
#include "ftv/errors.hpp"
#include "ftv/padic.hpp"
#include "ftv/rational.hpp"

namespace ftv {

template <typename T>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Matrix() = default;
    Matrix(int r, int c, const T& fill) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    T& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const T& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

namespace detail {
inline Rat pivot_weight(const PadicScalar& s) { return s.valuation(); }
inline Rat pivot_weight(const CycElem& e) { return e.coeff_min_valuation(); }
}  // namespace detail

template <typename T>
Matrix<T> mat_mul(const Matrix<T>& x, const Matrix<T>& y) {
    Matrix<T> out(x.rows, y.cols, x.at(0, 0) - x.at(0, 0));
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const T& f = x.at(i, k);
            for (int j = 0; j < y.cols; ++j) out.at(i, j) = out.at(i, j) + f * y.at(k, j);
        }
    return out;
}

template <typename T>
Matrix<T> mat_pow(Matrix<T> b, std::uint64_t e, const Matrix<T>& identity) {
    Matrix<T> acc = identity;
    while (e) {
        if (e & 1) acc = mat_mul(acc, b);
        e >>= 1;
        if (e) b = mat_mul(b, b);
    }
    return acc;
}

// Kronecker product: (A (x) B)[i*rb+k][j*cb+l] = A[i][j]*B[k][l].
template <typename T>
Matrix<T> kronecker(const Matrix<T>& x, const Matrix<T>& y) {
    Matrix<T> out(x.rows * y.rows, x.cols * y.cols, x.at(0, 0) - x.at(0, 0));
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j)
            for (int k = 0; k < y.rows; ++k)
                for (int l = 0; l < y.cols; ++l)
                    out.at(i * y.rows + k, j * y.cols + l) = x.at(i, j) * y.at(k, l);
    return out;
}

// Determinant by Gaussian elimination with lowest-valuation pivoting.  Exact
// over the tracked precision; if a column has no usable pivot the result is
// the propagated zero (caller decides whether that means Indeterminate).
template <typename T>
T determinant(Matrix<T> m) {
    if (m.rows != m.cols || m.rows == 0)
        throw Error(ErrorKind::Internal, "determinant needs a non-empty square matrix");
    const int n = m.rows;
    // division-free direct forms preserve precision on tiny matrices
    if (n == 1) return m.at(0, 0);
    if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    T det = m.at(0, 0);  // overwritten by the first pivot
    bool have = false;
    bool neg = false;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        Rat best;
        for (int r = col; r < n; ++r) {
            const T& cand = m.at(r, col);
            if (cand.is_zero()) continue;
            Rat w = detail::pivot_weight(cand);
            if (pr < 0 || w < best) {
                pr = r;
                best = w;
            }
        }
        if (pr < 0) {
            // the column is zero at its tracked precision, and so is det
            return have ? det * m.at(col, col) : m.at(col, col);
        }
        if (pr != col) {
            for (int c = 0; c < n; ++c) std::swap(m.at(pr, c), m.at(col, c));
            neg = !neg;
        }
        const T pivot = m.at(col, col);
        det = have ? det * pivot : pivot;
        have = true;
        const T inv = pivot.invert();
        for (int r = col + 1; r < n; ++r) {
            if (m.at(r, col).is_zero()) continue;
            T f = m.at(r, col) * inv;
            for (int c = col; c < n; ++c) m.at(r, c) = m.at(r, c) - f * m.at(col, c);
        }
    }
    if (neg) det = -det;
    return det;
}

// Rank of the matrix at the tracked precision; kernel dim = cols - rank.
template <typename T>
int rank(Matrix<T> m) {
    int rk = 0;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int pr = -1;
        Rat best;
        for (int r = row; r < m.rows; ++r) {
            if (m.at(r, col).is_zero()) continue;
            Rat w = detail::pivot_weight(m.at(r, col));
            if (pr < 0 || w < best) {
                pr = r;
                best = w;
            }
        }
        if (pr < 0) continue;
        if (pr != row)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(row, c));
        const T inv = m.at(row, col).invert();
        for (int r = row + 1; r < m.rows; ++r) {
            if (m.at(r, col).is_zero()) continue;
            T f = m.at(r, col) * inv;
            for (int c = col; c < m.cols; ++c) m.at(r, c) = m.at(r, c) - f * m.at(row, c);
        }
        ++row;
        ++rk;
    }
    return rk;
}

// Solve m x = rhs for square m (exact Gaussian elimination).  Throws
// NotInvertible when m is singular at the tracked precision.
template <typename T>
std::vector<T> solve(Matrix<T> m, std::vector<T> rhs) {
    const int n = m.rows;
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        Rat best;
        for (int r = col; r < n; ++r) {
            if (m.at(r, col).is_zero()) continue;
            Rat w = detail::pivot_weight(m.at(r, col));
            if (pr < 0 || w < best) {
                pr = r;
                best = w;
            }
        }
        if (pr < 0) throw NotInvertible("singular system at current precision");
        if (pr != col) {
            for (int c = 0; c < n; ++c) std::swap(m.at(pr, c), m.at(col, c));
            std::swap(rhs[pr], rhs[col]);
        }
        const T inv = m.at(col, col).invert();
        for (int r = 0; r < n; ++r) {
            if (r == col || m.at(r, col).is_zero()) continue;
            T f = m.at(r, col) * inv;
            for (int c = col; c < n; ++c) m.at(r, c) = m.at(r, c) - f * m.at(col, c);
            rhs[r] = rhs[r] - f * rhs[col];
        }
    }
    std::vector<T> x;
    x.reserve(n);
    for (int i = 0; i < n; ++i) x.push_back(rhs[i] * m.at(i, i).invert());
    return x;
}

}  // namespace ftv
