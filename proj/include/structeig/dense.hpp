#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <vector>

#include "structeig/error.hpp"

namespace structeig {

using Scalar = std::complex<double>;
using Vector = std::vector<Scalar>;

/// Division that rejects an exactly-zero divisor instead of producing inf/nan.
inline Scalar checked_div(Scalar num, Scalar den) {
    if (den == Scalar{0.0, 0.0}) throw Error(ErrorCode::DivisionByZero, "division by exact zero");
    return num / den;
}

inline bool is_finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Row-major dense complex matrix. Indices are zero-based.
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Scalar{}) {
        if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
    }

    DenseMatrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged initializer list");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static DenseMatrix diagonal(std::span<const Scalar> d) {
        DenseMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    const std::vector<Scalar>& data() const noexcept { return data_; }

    DenseMatrix& operator+=(const DenseMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    DenseMatrix& operator-=(const DenseMatrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    DenseMatrix& operator*=(Scalar s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, Scalar s) { return a *= s; }
    friend DenseMatrix operator*(Scalar s, DenseMatrix a) { return a *= s; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

    DenseMatrix transpose() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    DenseMatrix adjoint() const {
        DenseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
        return t;
    }

private:
    void require_same_shape(const DenseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::ShapeMismatch, "matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "inner dimensions differ in product");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar aik = a(i, k);
            if (aik == Scalar{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Vector operator*(const DenseMatrix& a, std::span<const Scalar> x) {
    if (a.cols() != x.size()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector size mismatch");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Scalar s{};
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline Vector operator*(const DenseMatrix& a, const Vector& x) { return a * std::span<const Scalar>(x); }

/// Kronecker product: (A ⊗ B)_{i p + k, j q + l} = A_{ij} B_{kl} for B of shape p×q.
inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t p = b.rows(), q = b.cols();
    DenseMatrix c(a.rows() * p, a.cols() * q);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar aij = a(i, j);
            if (aij == Scalar{}) continue;
            for (std::size_t k = 0; k < p; ++k)
                for (std::size_t l = 0; l < q; ++l) c(i * p + k, j * q + l) = aij * b(k, l);
        }
    return c;
}

inline Vector kron(std::span<const Scalar> x, std::span<const Scalar> y) {
    Vector z;
    z.reserve(x.size() * y.size());
    for (Scalar xi : x)
        for (Scalar yj : y) z.push_back(xi * yj);
    return z;
}

// ---- norms and small vector helpers ----------------------------------------

inline double norm_inf(const DenseMatrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (Scalar v : a.row(i)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

inline double norm_fro(const DenseMatrix& a) {
    double s = 0.0;
    for (Scalar v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

inline double norm_inf(std::span<const Scalar> x) {
    double best = 0.0;
    for (Scalar v : x) best = std::max(best, std::abs(v));
    return best;
}

inline double norm2(std::span<const Scalar> x) {
    double s = 0.0;
    for (Scalar v : x) s += std::norm(v);
    return std::sqrt(s);
}

/// Conjugated inner product x* y.
inline Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y) {
    Scalar s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline void normalize(Vector& x) {
    const double nrm = norm2(x);
    if (nrm == 0.0) throw Error(ErrorCode::ZeroVector, "cannot normalize the zero vector");
    for (auto& v : x) v /= nrm;
}

/// Cosine of the angle between two vectors, phase-invariant: |x* y| / (|x||y|).
inline double cosine_similarity(std::span<const Scalar> x, std::span<const Scalar> y) {
    const double nx = norm2(x), ny = norm2(y);
    if (nx == 0.0 || ny == 0.0) throw Error(ErrorCode::ZeroVector, "cosine similarity of a zero vector");
    return std::abs(dot(x, y)) / (nx * ny);
}

inline bool is_hermitian(const DenseMatrix& a, double rel_tol = 1e-12) {
    if (!a.is_square()) return false;
    const double scale = std::max(norm_fro(a), 1e-300);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > rel_tol * scale) return false;
    return true;
}

/// Plain (non-conjugated) symmetry A = Aᵀ.
inline bool is_symmetric(const DenseMatrix& a, double rel_tol = 0.0) {
    if (!a.is_square()) return false;
    const double scale = norm_fro(a);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (std::abs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
    return true;
}

/// Symmetry about the anti-diagonal: A_{i,j} = A_{n-1-j, n-1-i}.
inline bool is_persymmetric(const DenseMatrix& a, double rel_tol = 0.0) {
    if (!a.is_square()) return false;
    const std::size_t n = a.rows();
    const double scale = norm_fro(a);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(a(i, j) - a(n - 1 - j, n - 1 - i)) > rel_tol * scale) return false;
    return true;
}

}  // namespace structeig
