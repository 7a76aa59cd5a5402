#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "structeig/dense.hpp"
#include "structeig/eigensolution.hpp"

namespace structeig {

// ============================================================================
// LU factorization with partial pivoting
// ============================================================================

/// PA = LU with unit lower L stored below the diagonal of `lu`.
class LUFactorization {
public:
    /// Factors `a`. Pivots below 1e-13 · ||A||_∞ raise SingularMatrix, unless
    /// `regularize` is set, in which case they are replaced by eps · ||A||_∞
    /// (used by inverse iteration, where A is singular by construction).
    explicit LUFactorization(const DenseMatrix& a, bool regularize = false) : lu_(a), perm_(a.rows()) {
        if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "LU requires a square matrix");
        const std::size_t n = a.rows();
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
        const double anorm = norm_inf(a);
        const double threshold = 1e-13 * anorm;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i)
                if (std::abs(lu_(i, k)) > best) best = std::abs(lu_(i, k)), p = i;
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
                std::swap(perm_[k], perm_[p]);
                sign_ = -sign_;
            }
            if (!(best > threshold) || anorm == 0.0) {
                if (!regularize) throw Error(ErrorCode::SingularMatrix, "pivot below 1e-13 * ||A||_inf");
                const double tiny = std::max(anorm, 1.0) * std::numeric_limits<double>::epsilon();
                if (std::abs(lu_(k, k)) < tiny) lu_(k, k) = tiny;
            }
            const Scalar pivot = lu_(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                const Scalar f = lu_(i, k) / pivot;
                lu_(i, k) = f;
                if (f == Scalar{}) continue;
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
            }
        }
    }

    std::size_t size() const noexcept { return lu_.rows(); }

    Vector solve(std::span<const Scalar> b) const {
        const std::size_t n = lu_.rows();
        if (b.size() != n) throw Error(ErrorCode::ShapeMismatch, "right-hand side length mismatch");
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) {
            Scalar s = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            Scalar s = x[i];
            for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
            x[i] = s / lu_(i, i);
        }
        return x;
    }

    DenseMatrix solve(const DenseMatrix& b) const {
        DenseMatrix x(b.rows(), b.cols());
        Vector col(b.rows());
        for (std::size_t j = 0; j < b.cols(); ++j) {
            for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
            const Vector sol = solve(col);
            for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
        }
        return x;
    }

    Scalar determinant() const {
        Scalar d = static_cast<double>(sign_);
        for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
        return d;
    }

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
};

/// Solves Ax = b by LU with partial pivoting.
inline Vector lu_solve(const DenseMatrix& a, std::span<const Scalar> b) { return LUFactorization(a).solve(b); }
inline Vector lu_solve(const DenseMatrix& a, const Vector& b) { return lu_solve(a, std::span<const Scalar>(b)); }

/// Determinant by LU; returns exactly zero for a matrix the factorization
/// rejects as singular.
inline Scalar determinant(const DenseMatrix& a) {
    try {
        return LUFactorization(a).determinant();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) return Scalar{};
        throw;
    }
}

// ============================================================================
// Hermitian eigensolver: cyclic Jacobi
// ============================================================================

struct HermitianEigenResult {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // column j is the unit eigenvector of values[j]
};

namespace detail {

inline HermitianEigenResult jacobi_eigen(DenseMatrix a) {
    const std::size_t n = a.rows();
    DenseMatrix v = DenseMatrix::identity(n);
    const double scale = norm_fro(a);
    constexpr int kMaxSweeps = 50;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    bool converged = n == 1 || scale == 0.0;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (off_norm() < 1e-13 * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = a(p, p).real(), aqq = a(q, q).real();
                // Skip rotations that cannot change the diagonal in floating point.
                if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
                    std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Scalar phase = std::conj(apq) / mag;  // e^{-i arg a_pq}
                // U restricted to (p,q): [[c, s], [-s·phase, c·phase]]
                const Scalar upp = c, upq = s, uqp = -s * phase, uqq = c * phase;
                for (std::size_t k = 0; k < n; ++k) {
                    const Scalar akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Scalar apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Scalar vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }
    if (!converged && off_norm() >= 1e-13 * scale)
        throw Error(ErrorCode::NoConvergence, "Jacobi did not converge in 50 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    HermitianEigenResult out{std::vector<double>(n), DenseMatrix(n, n)};
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
    }
    return out;
}

}  // namespace detail

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
inline HermitianEigenResult hermitian_eigen_decompose(const DenseMatrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "eigensolver requires a square matrix");
    if (!is_hermitian(a)) throw Error(ErrorCode::NotHermitian, "matrix fails the 1e-12 Hermitian check");
    return detail::jacobi_eigen(a);
}

/// Same as hermitian_eigen_decompose, packaged as a numeric EigenSolution.
inline EigenSolution hermitian_eigen(const DenseMatrix& a) {
    const auto r = hermitian_eigen_decompose(a);
    EigenSolution sol;
    sol.provenance = Provenance::Numeric;
    for (std::size_t j = 0; j < r.values.size(); ++j) {
        EigenPair p;
        p.mode = static_cast<int>(j + 1);
        p.value = r.values[j];
        p.vector.resize(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i) p.vector[i] = r.vectors(i, j);
        sol.pairs.push_back(std::move(p));
    }
    return sol;
}

// ============================================================================
// Cholesky and triangular solves
// ============================================================================

/// Lower-triangular L with B = L L*, or nullopt when B is not Hermitian
/// positive definite.
inline std::optional<DenseMatrix> cholesky(const DenseMatrix& b) {
    if (!b.is_square() || !is_hermitian(b)) return std::nullopt;
    const std::size_t n = b.rows();
    const double scale = norm_inf(b);
    DenseMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = b(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > 1e-14 * scale)) return std::nullopt;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            Scalar s = b(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return l;
}

/// Solves L y = b for lower-triangular L.
inline Vector forward_substitute(const DenseMatrix& l, std::span<const Scalar> b) {
    const std::size_t n = l.rows();
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Scalar s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    return y;
}

/// Solves L* x = y for lower-triangular L.
inline Vector backward_substitute_adjoint(const DenseMatrix& l, std::span<const Scalar> y) {
    const std::size_t n = l.rows();
    Vector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Scalar s = y[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= std::conj(l(k, i)) * x[k];
        x[i] = s / l(i, i);
    }
    return x;
}

// ============================================================================
// General (non-Hermitian) eigenvalues: balancing, Hessenberg, shifted QR
// ============================================================================

namespace detail {

inline void balance(DenseMatrix& h) {
    const std::size_t n = h.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(h(j, i));
                r += std::abs(h(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            double g = r / 2.0;
            while (c < g) f *= 2.0, c *= 4.0;
            g = r * 2.0;
            while (c >= g) f /= 2.0, c /= 4.0;
            if ((c + r) / f < 0.95 * s) {
                done = false;
                for (std::size_t j = 0; j < n; ++j) h(i, j) /= f;
                for (std::size_t j = 0; j < n; ++j) h(j, i) *= f;
            }
        }
    }
}

inline void to_hessenberg(DenseMatrix& h) {
    const std::size_t n = h.rows();
    Vector v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double xnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        const Scalar x0 = h(k + 1, k);
        const Scalar phase = std::abs(x0) == 0.0 ? Scalar{1.0} : x0 / std::abs(x0);
        const Scalar alpha = -phase * xnorm;
        std::fill(v.begin(), v.end(), Scalar{});
        for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
        v[k + 1] -= alpha;
        double vnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
        vnorm = std::sqrt(vnorm);
        if (vnorm == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;
        // H <- (I - 2vv*) H
        for (std::size_t j = 0; j < n; ++j) {
            Scalar s{};
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
            s *= 2.0;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
        }
        // H <- H (I - 2vv*)
        for (std::size_t i = 0; i < n; ++i) {
            Scalar s{};
            for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= 2.0;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

}  // namespace detail

/// All eigenvalues of a general square complex matrix (unordered).
inline Vector general_eigenvalues(DenseMatrix h) {
    if (!h.is_square()) throw Error(ErrorCode::ShapeMismatch, "eigensolver requires a square matrix");
    const std::size_t n = h.rows();
    for (Scalar v : h.data())
        if (!is_finite(v)) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
    detail::balance(h);
    detail::to_hessenberg(h);

    Vector eig(n);
    const double eps = std::numeric_limits<double>::epsilon();
    const double hnorm = std::max(norm_fro(h), std::numeric_limits<double>::min());
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    int iter = 0, total = 0;
    const int max_total = 60 * static_cast<int>(n) + 100;

    struct Rot {
        Scalar g11, g12, g21, g22;
    };
    std::vector<Rot> rots(n);

    while (hi >= 0) {
        if (hi == 0) {
            eig[0] = h(0, 0);
            break;
        }
        std::ptrdiff_t l = hi;
        for (; l > 0; --l) {
            const double sub = std::abs(h(l, l - 1));
            double ref = std::abs(h(l, l)) + std::abs(h(l - 1, l - 1));
            if (ref == 0.0) ref = hnorm;
            if (sub <= eps * ref) {
                h(l, l - 1) = 0.0;
                break;
            }
        }
        if (l == hi) {
            eig[hi] = h(hi, hi);
            --hi;
            iter = 0;
            continue;
        }
        if (++total > max_total) throw Error(ErrorCode::NoConvergence, "shifted QR iteration cap reached");
        ++iter;

        Scalar mu;
        if (iter % 11 == 0) {
            mu = h(hi, hi) + std::abs(h(hi, hi - 1)) * 0.75;  // exceptional shift
        } else {
            const Scalar a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
            const Scalar tr2 = (a + d) / 2.0;
            const Scalar disc = std::sqrt((a - d) * (a - d) / 4.0 + b * c);
            const Scalar m1 = tr2 + disc, m2 = tr2 - disc;
            mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
        }

        const std::size_t lo = static_cast<std::size_t>(l), top = static_cast<std::size_t>(hi);
        for (std::size_t k = lo; k <= top; ++k) h(k, k) -= mu;
        for (std::size_t k = lo; k < top; ++k) {
            const Scalar x = h(k, k), y = h(k + 1, k);
            const double r = std::hypot(std::abs(x), std::abs(y));
            Rot g{1.0, 0.0, 0.0, 1.0};
            if (r != 0.0) g = {std::conj(x) / r, std::conj(y) / r, -y / r, x / r};
            rots[k] = g;
            for (std::size_t j = k; j <= top; ++j) {
                const Scalar u = h(k, j), w = h(k + 1, j);
                h(k, j) = g.g11 * u + g.g12 * w;
                h(k + 1, j) = g.g21 * u + g.g22 * w;
            }
        }
        for (std::size_t k = lo; k < top; ++k) {
            const Rot& g = rots[k];
            const std::size_t last = std::min(k + 2, top);
            for (std::size_t i = lo; i <= last; ++i) {
                const Scalar u = h(i, k), w = h(i, k + 1);
                h(i, k) = u * std::conj(g.g11) + w * std::conj(g.g12);
                h(i, k + 1) = u * std::conj(g.g21) + w * std::conj(g.g22);
            }
        }
        for (std::size_t k = lo; k <= top; ++k) h(k, k) += mu;
    }
    return eig;
}

// ============================================================================
// Inverse iteration for pencil eigenvectors
// ============================================================================

/// Unit eigenvector of A x = λ B x near `lambda`, by inverse iteration with
/// shift λ(1+1e-10)+1e-12. Vectors in `deflate` (unit norm) are projected out
/// at each step; pass the vectors already found for a repeated eigenvalue.
inline Vector inverse_iteration(const DenseMatrix& a, const DenseMatrix& b, Scalar lambda,
                                const std::vector<Vector>& deflate = {}, unsigned seed = 12345u) {
    if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::ShapeMismatch, "pencil matrices must be square and equal in shape");
    const std::size_t n = a.rows();
    const Scalar shift = lambda * (1.0 + 1e-10) + 1e-12;
    const LUFactorization lu(a - shift * b, /*regularize=*/true);

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto random_start = [&] {
        Vector x(n);
        for (auto& v : x) v = {unif(rng), unif(rng)};
        return x;
    };
    auto project_and_normalize = [&](Vector& x) {
        for (const auto& d : deflate) {
            const Scalar c = dot(d, x);
            for (std::size_t i = 0; i < n; ++i) x[i] -= c * d[i];
        }
        const double nrm = norm2(x);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) return false;
        for (auto& v : x) v /= nrm;
        return true;
    };

    Vector x = random_start();
    project_and_normalize(x);
    constexpr int kMaxIterations = 50;
    int restarts = 0;
    for (int it = 0; it < kMaxIterations; ++it) {
        Vector y = lu.solve(b * x);
        if (!project_and_normalize(y)) {
            if (++restarts > 5) break;
            x = random_start();
            project_and_normalize(x);
            continue;
        }
        // Align phase with the previous iterate before measuring the change.
        const Scalar ph = dot(y, x);
        const Scalar phase = std::abs(ph) > 0.0 ? ph / std::abs(ph) : Scalar{1.0};
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(y[i] * phase - x[i]));
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] * phase;
        if (change < 1e-13 && it >= 1) break;
    }
    return x;
}

}  // namespace structeig
