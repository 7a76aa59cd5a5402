#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "structeig/analytic.hpp"
#include "structeig/reference.hpp"

namespace structeig {

/// Both sides of an identity instance plus the indices it was evaluated at.
/// Index fields not used by the identity stay 0.
struct IdentityReport {
    std::string kind;
    Scalar lhs{};
    Scalar rhs{};
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    int j = 0;
    int k = 0;
    int n = 0;
    int l = 0;
    bool ill_conditioned = false;  // eigenvalue gap below 1e-6
};

namespace detail {

inline IdentityReport make_report(std::string kind, Scalar lhs, Scalar rhs) {
    IdentityReport r;
    r.kind = std::move(kind);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_diff = std::abs(lhs - rhs);
    r.rel_diff = r.abs_diff / std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    return r;
}

template <class Values>
inline double min_gap(const Values& values, std::size_t j) {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < values.size(); ++l)
        if (l != j) g = std::min(g, std::abs(values[j] - values[l]));
    return g;
}

inline void check_indices(std::size_t n, int j, int k) {
    if (n < 2) throw Error(ErrorCode::IndexOutOfRange, "identity needs n >= 2");
    if (j < 1 || j > static_cast<int>(n) || k < 1 || k > static_cast<int>(n))
        throw Error(ErrorCode::IndexOutOfRange, "mode and entry indices must lie in 1..n");
}

}  // namespace detail

/// The (n−1)×(n−1) principal minor with row and column k (one-based) removed.
inline DenseMatrix minor_remove(const DenseMatrix& a, int k) {
    const std::size_t n = a.rows();
    if (!a.is_square() || n < 2 || k < 1 || k > static_cast<int>(n))
        throw Error(ErrorCode::IndexOutOfRange, "minor index out of range");
    const std::size_t skip = static_cast<std::size_t>(k - 1);
    DenseMatrix m(n - 1, n - 1);
    for (std::size_t i = 0, mi = 0; i < n; ++i) {
        if (i == skip) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
            if (c == skip) continue;
            m(mi, mc++) = a(i, c);
        }
        ++mi;
    }
    return m;
}

/// |x_{j,k}|² Π_{l≠j}(λ_j − λ_l) against Π_l(λ_j − μ_l^{(k)}) for Hermitian A.
/// j indexes the ascending spectrum, k the vector entry; both one-based.
inline IdentityReport eve_identity_evp(const DenseMatrix& a, int j, int k) {
    detail::check_indices(a.rows(), j, k);
    const auto full = hermitian_eigen_decompose(a);
    const auto minor = hermitian_eigen_decompose(minor_remove(a, k));
    const std::size_t n = a.rows();
    const std::size_t jj = static_cast<std::size_t>(j - 1);
    const Scalar lj = full.values[jj];

    Scalar lhs = std::norm(full.vectors(static_cast<std::size_t>(k - 1), jj));
    for (std::size_t l = 0; l < n; ++l)
        if (l != jj) lhs *= lj - full.values[l];
    Scalar rhs{1.0};
    for (Scalar mu : minor.values) rhs *= lj - mu;

    auto r = detail::make_report("eve", lhs, rhs);
    r.j = j, r.k = k, r.n = static_cast<int>(n);
    r.ill_conditioned = detail::min_gap(full.values, jj) < 1e-6;
    return r;
}

enum class GeviForm {
    Literal,   // eigenvalues of B and B^{(k)} as the weights
    ProofForm  // η_j = x_j* B x_j with determinant-scaled characteristic polynomials
};

/// Generalized identity for Hermitian A and nonsingular Hermitian B, eigenvectors
/// normalized to x*x = 1. The literal form pairs η_j with the j-th ascending
/// eigenvalue of B; it is not a true identity in general and is reported as is.
inline IdentityReport eve_identity_gevp(const DenseMatrix& a, const DenseMatrix& b, int j, int k, GeviForm form) {
    if (a.rows() != b.rows() || !a.is_square() || !b.is_square())
        throw Error(ErrorCode::ShapeMismatch, "pencil matrices must be square and of equal size");
    detail::check_indices(a.rows(), j, k);
    if (!is_hermitian(a) || !is_hermitian(b)) throw Error(ErrorCode::NotHermitian, "identity requires Hermitian A and B");
    const std::size_t n = a.rows();

    Scalar det_b, det_bk;
    try {
        det_b = LUFactorization(b).determinant();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) throw Error(ErrorCode::SingularB, "B is singular");
        throw;
    }
    const DenseMatrix ak = minor_remove(a, k), bk = minor_remove(b, k);

    const EigenSolution full = solve_gevp_numeric(a, b).sorted();
    const Vector mu = solve_gevp_numeric(ak, bk).eigenvalues();
    const Vector lam = full.eigenvalues();
    const std::size_t jj = static_cast<std::size_t>(j - 1);
    const Scalar lj = lam[jj];
    Vector x = full.pairs[jj].vector;
    normalize(x);
    const double xk2 = std::norm(x[static_cast<std::size_t>(k - 1)]);

    Scalar gaps{1.0}, minor_gaps{1.0};
    for (std::size_t l = 0; l < n; ++l)
        if (l != jj) gaps *= lj - lam[l];
    for (Scalar m : mu) minor_gaps *= lj - m;

    IdentityReport r;
    if (form == GeviForm::ProofForm) {
        det_bk = determinant(bk);
        const Scalar eta_j = dot(x, b * x);
        r = detail::make_report("gevp-eve-proof", xk2 * det_b * gaps, eta_j * det_bk * minor_gaps);
    } else {
        const auto eta = hermitian_eigen_decompose(b).values;
        const auto eta_k = hermitian_eigen_decompose(bk).values;
        Scalar weight{1.0};
        for (double e : eta_k) weight *= e;
        for (std::size_t l = 0; l < n; ++l)
            if (l != jj) weight /= eta[l];
        r = detail::make_report("gevp-eve-literal", xk2 * gaps, weight * minor_gaps);
    }
    r.j = j, r.k = k, r.n = static_cast<int>(n);
    r.ill_conditioned = detail::min_gap(lam, jj) < 1e-6;
    return r;
}

// ---------------------------------------------------------------------------
// Trigonometric identities from the m = 1 sine family
// ---------------------------------------------------------------------------

enum class TrigKind { Ti31, Ti3, Ti3g };

struct TrigBands {
    Scalar alpha0{2.0}, alpha1{-1.0};
    Scalar beta0{1.0}, beta1{0.0};
};

namespace detail {

inline Scalar checked_factor(Scalar f) {
    if (std::abs(f) < 1e-13) throw Error(ErrorCode::SingularDenominator, "identity denominator factor vanishes");
    return f;
}

inline Scalar cos_pi(double num, double den) { return std::cos(num * kPi / den); }

// cos(pπ/q) − cos(rπ/s) via sum-to-product, so factors that vanish exactly
// (p/q = r/s) come out as exact zeros instead of cancellation noise.
inline Scalar cos_pi_diff(long p, long q, long r, long s) {
    const double d = 2.0 * static_cast<double>(q * s);
    return -2.0 * std::sin(static_cast<double>(p * s + r * q) * kPi / d) *
           std::sin(static_cast<double>(p * s - r * q) * kPi / d);
}

}  // namespace detail

/// Evaluates the sine-family identities exactly as printed. LHS is
/// (2/(n+1)) sin²(k l π/(n+1)); Ti31 fixes l = 1 and ignores any bands.
/// Ti3 at l = 1 or l = n uses the empty-product convention and therefore
/// coincides with Ti31. Ti3g divides by β-symbol samples and by the
/// eigenvalue gaps of the full problem.
inline IdentityReport trig_identity(TrigKind kind, int n, int k, int l = 1, const TrigBands& bands = {}) {
    if (n < 2) throw Error(ErrorCode::IndexOutOfRange, "trigonometric identity needs n >= 2");
    if (k < 1 || k > n) throw Error(ErrorCode::IndexOutOfRange, "k must lie in 1..n");
    if (kind == TrigKind::Ti31) l = 1;
    if (l < 1 || l > n) throw Error(ErrorCode::IndexOutOfRange, "l must lie in 1..n");

    const double np1 = n + 1.0;
    const double s = std::sin(((k * l) % (n + 1)) * kPi / np1);
    const Scalar lhs = 2.0 / np1 * s * s;
    const Scalar ck = detail::cos_pi(k, np1);

    IdentityReport r;
    if (kind == TrigKind::Ti31 || kind == TrigKind::Ti3) {
        // Minor spectrum: l−1 modes of step 1/l, then n−l modes of step 1/(n−l+1).
        Scalar num{1.0}, den{1.0};
        for (int j = 1; j <= l - 1; ++j) num *= detail::cos_pi_diff(k, n + 1, j, l);
        for (int j = l; j <= n - 1; ++j) num *= detail::cos_pi_diff(k, n + 1, j - l + 1, n - l + 1);
        for (int j = 1; j <= n; ++j)
            if (j != k) den *= detail::checked_factor(detail::cos_pi_diff(k, n + 1, j, n + 1));
        r = detail::make_report(kind == TrigKind::Ti31 ? "ti31" : "ti3", lhs, num / den);
    } else {
        auto beta_sym = [&](Scalar c) { return detail::checked_factor(bands.beta0 + 2.0 * bands.beta1 * c); };
        auto ratio = [&](Scalar c) { return (bands.alpha0 + 2.0 * bands.alpha1 * c) / beta_sym(c); };
        const Scalar lk = ratio(ck);
        Scalar pre_num{1.0}, pre_den{1.0};
        for (int j = 1; j <= n - 1; ++j) pre_num *= bands.beta0 + 2.0 * bands.beta1 * detail::cos_pi(j, n);
        for (int j = 1; j <= n; ++j)
            if (j != k) pre_den *= beta_sym(detail::cos_pi(j, np1));
        Scalar p1{1.0}, p2{1.0}, p3{1.0};
        for (int j = 1; j <= l - 1; ++j) p1 *= lk - ratio(detail::cos_pi(j, l));
        for (int j = l; j <= n - 1; ++j) p2 *= lk - ratio(detail::cos_pi(j - l + 1, n - l + 1.0));
        for (int j = 1; j <= n; ++j)
            if (j != k) p3 *= detail::checked_factor(lk - ratio(detail::cos_pi(j, np1)));
        r = detail::make_report("ti3g", lhs, pre_num / pre_den * p1 * p2 / p3);
    }
    r.n = n, r.k = k, r.l = l;
    return r;
}

}  // namespace structeig
