#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace eqsyz {

/// Dense matrix over Q, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_) throw InvalidInput("matrix rows have different lengths");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QMatrix operator*(const QMatrix& o) const {
        if (cols_ != o.rows_) throw InvalidInput("matrix product: shape mismatch");
        QMatrix m(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) += a * o(k, j);
            }
        }
        return m;
    }

    QMatrix operator+(const QMatrix& o) const {
        QMatrix m = *this;
        for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] += o.data_[k];
        return m;
    }

    QMatrix operator*(const Rational& c) const {
        QMatrix m = *this;
        for (auto& x : m.data_) x *= c;
        return m;
    }

    QMatrix transpose() const {
        QMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        }
        return m;
    }

    bool is_zero() const {
        for (const auto& x : data_) {
            if (x != 0) return false;
        }
        return true;
    }

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && (*this)(p, c) == 0) ++p;
            if (p == rows_) continue;
            swap_rows(p, r);
            Rational inv = 1 / (*this)(r, c);
            for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || (*this)(i, c) == 0) continue;
                Rational f = (*this)(i, c);
                for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        QMatrix m = *this;
        return m.rref().size();
    }

    Rational determinant() const {
        if (rows_ != cols_) throw InvalidInput("determinant of a non-square matrix");
        QMatrix m = *this;
        Rational det = 1;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::size_t p = c;
            while (p < rows_ && m(p, c) == 0) ++p;
            if (p == rows_) return Rational(0);
            if (p != c) {
                m.swap_rows(p, c);
                det = -det;
            }
            det *= m(c, c);
            for (std::size_t i = c + 1; i < rows_; ++i) {
                if (m(i, c) == 0) continue;
                Rational f = m(i, c) / m(c, c);
                for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
            }
        }
        return det;
    }

    std::optional<QMatrix> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        QMatrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = 1;
        }
        auto piv = aug.rref();
        if (piv.size() < rows_ || piv.back() >= cols_) return std::nullopt;
        QMatrix inv(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
        }
        return inv;
    }

    /// One solution x of A x = b, if any.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const {
        QMatrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        auto piv = aug.rref();
        if (!piv.empty() && piv.back() == cols_) return std::nullopt;
        std::vector<Rational> x(cols_);
        for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, cols_);
        return x;
    }

    /// Coefficients c_0..c_n of det(I - s*A) = sum c_k s^k (Faddeev-LeVerrier).
    std::vector<Rational> reversed_characteristic_polynomial() const {
        if (rows_ != cols_) throw InvalidInput("characteristic polynomial of a non-square matrix");
        std::size_t n = rows_;
        // det(lambda I - A) = lambda^n + a_1 lambda^{n-1} + ... + a_n
        std::vector<Rational> a(n + 1);
        a[0] = 1;
        QMatrix M(n, n);
        for (std::size_t k = 1; k <= n; ++k) {
            QMatrix AM = *this * M;
            for (std::size_t i = 0; i < n; ++i) AM(i, i) += a[k - 1];
            M = AM;
            QMatrix AMk = *this * M;
            Rational tr = 0;
            for (std::size_t i = 0; i < n; ++i) tr += AMk(i, i);
            a[k] = -tr / Rational(static_cast<long>(k));
        }
        // det(I - sA) = s^n det(s^{-1} I - A) = sum_k a_k s^k
        return a;
    }

private:
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

/// Determinant of a square polynomial matrix by fraction-free (Bareiss) elimination.
inline Polynomial polynomial_determinant(std::vector<std::vector<Polynomial>> m, const RingPtr& ring) {
    std::size_t n = m.size();
    if (n == 0) return Polynomial::constant(ring, Rational(1));
    Polynomial prev = Polynomial::constant(ring, Rational(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return Polynomial(ring);
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                auto q = divide_exact(num, prev);
                if (!q) throw PreconditionFailed("Bareiss elimination: inexact division");
                m[i][j] = *q;
            }
        }
        prev = m[k][k];
    }
    Polynomial det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

} // namespace eqsyz
