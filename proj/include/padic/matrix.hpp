#pragma once

// Dense and sparse exact matrices.

#include "padic/arith.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace padic {

template <class T>
using Vec = std::vector<T>;

using IntVec = Vec<BigInt>;
using RatVec = Vec<Rational>;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    static Matrix from_columns(std::size_t rows, const std::vector<Vec<T>>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    static Matrix from_rows(std::size_t cols, const std::vector<Vec<T>>& rows) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec<T> column(std::size_t c) const {
        Vec<T> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }
    Vec<T> row(std::size_t r) const {
        return Vec<T>(data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_));
    }
    void set_column(std::size_t c, const Vec<T>& v) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Vec<T> apply(const Vec<T>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
        Vec<T> y(rows_, T(0));
        for (std::size_t r = 0; r < rows_; ++r) {
            T acc = 0;
            for (std::size_t c = 0; c < cols_; ++c)
                if ((*this)(r, c) != 0 && x[c] != 0) acc += (*this)(r, c) * x[c];
            y[r] = acc;
        }
        return y;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix scaled(const T& s) const {
        Matrix c = *this;
        for (auto& x : c.data_) x *= s;
        return c;
    }

    /// [A | B]
    static Matrix hstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
        Matrix c(a.rows_, a.cols_ + b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t j = 0; j < a.cols_; ++j) c(r, j) = a(r, j);
            for (std::size_t j = 0; j < b.cols_; ++j) c(r, a.cols_ + j) = b(r, j);
        }
        return c;
    }

    /// [A ; B]
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ == 0) return b;
        if (b.rows_ == 0) return a;
        if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
        Matrix c(a.rows_ + b.rows_, a.cols_);
        std::copy(a.data_.begin(), a.data_.end(), c.data_.begin());
        std::copy(b.data_.begin(), b.data_.end(), c.data_.begin() + static_cast<long>(a.data_.size()));
        return c;
    }

    Matrix columns(std::size_t begin, std::size_t end) const {
        Matrix c(rows_, end - begin);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = begin; j < end; ++j) c(r, j - begin) = (*this)(r, j);
        return c;
    }

    Matrix rows_range(std::size_t begin, std::size_t end) const {
        Matrix c(end - begin, cols_);
        for (std::size_t r = begin; r < end; ++r)
            for (std::size_t j = 0; j < cols_; ++j) c(r - begin, j) = (*this)(r, j);
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }
    /// row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const T& f) {
        if (f == 0) return;
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(src, c) != 0) (*this)(dst, c) += f * (*this)(src, c);
    }
    /// col[dst] += f * col[src]
    void add_col(std::size_t dst, std::size_t src, const T& f) {
        if (f == 0) return;
        for (std::size_t r = 0; r < rows_; ++r)
            if ((*this)(r, src) != 0) (*this)(r, dst) += f * (*this)(r, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
    }
    void negate_col(std::size_t c) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t r = 0; r < rows_; ++r) {
            os << "[";
            for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
            os << "]\n";
        }
        return os.str();
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

inline RatVec to_rational(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

/// Multiplies each row by the lcm of its denominators; the row space over Q
/// (and the solution set of the homogeneous system) is unchanged.
inline IntMatrix clear_row_denominators(const RatMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const BigInt& d = m(i, j).get_den();
            if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational s = m(i, j) * l;
            out(i, j) = s.get_num();
        }
    }
    return out;
}

/// Multiplies a whole matrix by the lcm of all its denominators.
inline std::pair<IntMatrix, BigInt> clear_denominators(const RatMatrix& m) {
    BigInt l = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const BigInt& d = m(i, j).get_den();
            if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rational s = m(i, j) * l;
            out(i, j) = s.get_num();
        }
    return {out, l};
}

/// Sparse integer matrix: absent entries are zero, stored entries are nonzero.
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    static SparseIntMatrix from_dense(const IntMatrix& m) {
        SparseIntMatrix s(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0) s.entries_[{i, j}] = m(i, j);
        return s;
    }

    IntMatrix to_dense() const {
        IntMatrix m(rows_, cols_);
        for (const auto& [k, v] : entries_) m(k.first, k.second) = v;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const { return entries_.size(); }

    BigInt get(std::size_t r, std::size_t c) const {
        check(r, c);
        auto it = entries_.find({r, c});
        return it == entries_.end() ? BigInt(0) : it->second;
    }

    void set(std::size_t r, std::size_t c, const BigInt& v) {
        check(r, c);
        if (v == 0) entries_.erase({r, c});
        else entries_[{r, c}] = v;
    }

    const std::map<std::pair<std::size_t, std::size_t>, BigInt>& entries() const { return entries_; }

    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("sparse matrix index out of range");
    }
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, BigInt> entries_;
};

}  // namespace padic
