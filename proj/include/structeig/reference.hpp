#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "structeig/eigensolution.hpp"
#include "structeig/linalg.hpp"

namespace structeig {

enum class SolvePath { HermitianDefinite, General };

struct NumericOptions {
    /// Largest dimension accepted by the general (non-Hermitian-definite) path.
    std::size_t general_limit = 16;
    /// Skip the Hermitian-definite path even when it applies.
    bool force_general = false;
};

/// Which path solve_gevp_numeric takes for (A, B).
inline SolvePath numeric_path(const DenseMatrix& a, const DenseMatrix& b, const NumericOptions& opt = {}) {
    if (!opt.force_general && is_hermitian(a) && cholesky(b)) return SolvePath::HermitianDefinite;
    return SolvePath::General;
}

/// ||Ax − λBx||_∞ / ((||A||_∞ + |λ|·||B||_∞)·||x||_∞).
inline double residual_gevp(const DenseMatrix& a, const DenseMatrix& b, Scalar lambda, std::span<const Scalar> x) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.cols() != x.size())
        throw Error(ErrorCode::ShapeMismatch, "residual shapes disagree");
    const double xn = norm_inf(x);
    if (xn == 0.0) throw Error(ErrorCode::ZeroVector, "residual of the zero vector");
    const Vector ax = a * x, bx = b * x;
    double r = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i) r = std::max(r, std::abs(ax[i] - lambda * bx[i]));
    const double scale = (norm_inf(a) + std::abs(lambda) * norm_inf(b)) * xn;
    return scale == 0.0 ? r : r / scale;
}

inline double residual_gevp(const DenseMatrix& a, const DenseMatrix& b, Scalar lambda, const Vector& x) {
    return residual_gevp(a, b, lambda, std::span<const Scalar>(x));
}

/// Fills the residual field of every pair against the pencil (A, B).
inline void attach_residuals(EigenSolution& sol, const DenseMatrix& a, const DenseMatrix& b) {
    for (auto& p : sol.pairs) p.residual = residual_gevp(a, b, p.value, p.vector);
}

namespace detail {

inline bool near_repeat(Scalar a, Scalar b) { return std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(a)); }

// λ minimizing ||Ax − λBx||₂ for fixed x.
inline Scalar rayleigh_refine(const DenseMatrix& a, const DenseMatrix& b, const Vector& x, Scalar fallback) {
    const Vector ax = a * x, bx = b * x;
    const double den = std::real(dot(bx, bx));
    if (!(den > 0.0)) return fallback;
    const Scalar cand = dot(bx, ax) / den;
    return is_finite(cand) ? cand : fallback;
}

}  // namespace detail

/// Eigenvectors for known eigenvalues of A x = λ B x by inverse iteration.
/// Repeated eigenvalues get vectors orthogonalized against earlier ones.
inline EigenSolution recover_eigenvectors(const DenseMatrix& a, const DenseMatrix& b, std::span<const Scalar> values) {
    EigenSolution sol;
    sol.provenance = Provenance::Numeric;
    std::vector<Vector> found;
    std::vector<Scalar> found_values;
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::vector<Vector> deflate;
        for (std::size_t f = 0; f < found.size(); ++f)
            if (detail::near_repeat(found_values[f], values[i])) deflate.push_back(found[f]);
        Vector x = inverse_iteration(a, b, values[i], deflate, 12345u + static_cast<unsigned>(i));
        found.push_back(x);
        found_values.push_back(values[i]);
        EigenPair p;
        p.mode = static_cast<int>(i + 1);
        p.value = values[i];
        p.vector = std::move(x);
        p.numeric_vector = true;
        sol.pairs.push_back(std::move(p));
    }
    return sol;
}

/// Dense numerical oracle for A x = λ B x. Hermitian A with Hermitian
/// positive definite B goes through Cholesky reduction and Jacobi; anything
/// else (up to opt.general_limit) through shifted QR on B⁻¹A with inverse
/// iteration for the vectors. Pairs come back in (real, imag) order.
inline EigenSolution solve_gevp_numeric(const DenseMatrix& a, const DenseMatrix& b, const NumericOptions& opt = {}) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw Error(ErrorCode::ShapeMismatch, "pencil matrices must be square and of equal size");
    const std::size_t n = a.rows();

    if (!opt.force_general && is_hermitian(a)) {
        if (auto l = cholesky(b)) {
            // C = L⁻¹ A L⁻*, built column by column.
            DenseMatrix w(n, n);
            Vector col(n);
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t i = 0; i < n; ++i) col[i] = a(i, j);
                const Vector y = forward_substitute(*l, col);
                for (std::size_t i = 0; i < n; ++i) w(i, j) = y[i];
            }
            DenseMatrix wh = w.adjoint();
            DenseMatrix c(n, n);
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t i = 0; i < n; ++i) col[i] = wh(i, j);
                const Vector y = forward_substitute(*l, col);
                for (std::size_t i = 0; i < n; ++i) c(i, j) = y[i];
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    const Scalar avg = 0.5 * (c(i, j) + std::conj(c(j, i)));
                    c(i, j) = avg;
                    c(j, i) = std::conj(avg);
                }
            const auto eig = detail::jacobi_eigen(c);
            EigenSolution sol;
            sol.provenance = Provenance::Numeric;
            for (std::size_t j = 0; j < n; ++j) {
                Vector y(n);
                for (std::size_t i = 0; i < n; ++i) y[i] = eig.vectors(i, j);
                EigenPair p;
                p.mode = static_cast<int>(j + 1);
                p.value = eig.values[j];
                p.vector = backward_substitute_adjoint(*l, y);
                normalize(p.vector);
                sol.pairs.push_back(std::move(p));
            }
            return sol;
        }
    }

    if (n > opt.general_limit)
        throw Error(ErrorCode::TooLargeForGeneralPath,
                    "general pencil path limited to n <= " + std::to_string(opt.general_limit));
    std::optional<LUFactorization> lub;
    try {
        lub.emplace(b);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) throw Error(ErrorCode::SingularB, "B is singular");
        throw;
    }
    Vector values = general_eigenvalues(lub->solve(a));
    sort_spectrum(values);
    EigenSolution sol = recover_eigenvectors(a, b, values);
    for (auto& p : sol.pairs) {
        p.value = detail::rayleigh_refine(a, b, p.vector, p.value);
        p.numeric_vector = false;
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Polynomial eigenvalue oracle: companion linearization
// ---------------------------------------------------------------------------

struct PevpNumericResult {
    Vector eigenvalues;        // finite eigenvalues, (real, imag) order
    bool degree_drop = false;  // leading coefficient singular: infinite eigenvalues dropped
    std::size_t expected = 0;  // n·q
};

/// Block companion pencil (𝔄, 𝔅) of Σ λ^k A_k: 𝔅 = diag(I, …, I, A_q), 𝔄 has
/// identity super-blocks and last block row −A_0 … −A_{q−1}.
inline std::pair<DenseMatrix, DenseMatrix> companion_linearization(const std::vector<DenseMatrix>& coeffs) {
    if (coeffs.size() < 2) throw Error(ErrorCode::InvalidArgument, "polynomial pencil needs q >= 1");
    const std::size_t n = coeffs[0].rows();
    for (const auto& c : coeffs)
        if (!c.is_square() || c.rows() != n) throw Error(ErrorCode::ShapeMismatch, "pencil coefficients differ in shape");
    const std::size_t q = coeffs.size() - 1;
    const std::size_t big = n * q;
    DenseMatrix la(big, big), lb(big, big);
    for (std::size_t blk = 0; blk + 1 < q; ++blk)
        for (std::size_t i = 0; i < n; ++i) {
            la(blk * n + i, (blk + 1) * n + i) = 1.0;
            lb(blk * n + i, blk * n + i) = 1.0;
        }
    const std::size_t last = (q - 1) * n;
    for (std::size_t k = 0; k < q; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) la(last + i, k * n + j) = -coeffs[k](i, j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) lb(last + i, last + j) = coeffs[q](i, j);
    return {std::move(la), std::move(lb)};
}

/// Eigenvalues of Σ_k λ^k A_k x = 0 via companion linearization to a size-nq
/// pencil. A singular A_q is handled by a shift-and-invert transform whose
/// infinite eigenvalues are dropped and flagged.
inline PevpNumericResult solve_pevp_numeric(const std::vector<DenseMatrix>& coeffs) {
    auto [la, lb] = companion_linearization(coeffs);
    const std::size_t big = la.rows();
    PevpNumericResult out;
    out.expected = big;

    bool leading_ok = true;
    std::optional<LUFactorization> lu_lead;
    try {
        lu_lead.emplace(coeffs.back());
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularMatrix) throw;
        leading_ok = false;
    }

    if (leading_ok) {
        out.eigenvalues = general_eigenvalues(LUFactorization(lb).solve(la));
    } else {
        out.degree_drop = true;
        const double scale = std::max(norm_inf(la), 1.0);
        const Scalar shifts[] = {Scalar{0.3141, 0.2718} * scale, Scalar{-0.577, 0.1414} * scale,
                                 Scalar{1.618, -0.3} * scale};
        bool done = false;
        for (Scalar sigma : shifts) {
            try {
                const LUFactorization lu(la - sigma * lb);
                const Vector nu = general_eigenvalues(lu.solve(lb));
                double numax = 0.0;
                for (Scalar v : nu) numax = std::max(numax, std::abs(v));
                for (Scalar v : nu)
                    if (std::abs(v) > 1e-10 * numax) out.eigenvalues.push_back(sigma + 1.0 / v);
                done = true;
                break;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::SingularMatrix) throw;
            }
        }
        if (!done) throw Error(ErrorCode::SingularLeading, "polynomial pencil is singular for every trial shift");
    }
    sort_spectrum(out.eigenvalues);
    return out;
}

/// P(λ) = Σ λ^k A_k.
inline DenseMatrix evaluate_matrix_polynomial(const std::vector<DenseMatrix>& coeffs, Scalar lambda) {
    DenseMatrix p = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        p *= lambda;
        p += coeffs[k];
    }
    return p;
}

/// ||P(λ)x||_∞ / (Σ_k ||A_k||_∞ |λ|^k) with x the approximate null vector of
/// P(λ) (unit ∞-norm). An upper bound on the scaled smallest singular value.
inline double pevp_backward_error(const std::vector<DenseMatrix>& coeffs, Scalar lambda) {
    const DenseMatrix p = evaluate_matrix_polynomial(coeffs, lambda);
    const std::size_t n = p.rows();
    Vector x = inverse_iteration(p, DenseMatrix::identity(n), Scalar{});
    const double xn = norm_inf(x);
    for (auto& v : x) v /= xn;
    double scale = 0.0, pow = 1.0;
    for (const auto& c : coeffs) {
        scale += norm_inf(c) * pow;
        pow *= std::abs(lambda);
    }
    const Vector px = p * x;
    return norm_inf(px) / std::max(scale, std::numeric_limits<double>::min());
}

// ---------------------------------------------------------------------------
// Spectrum matching
// ---------------------------------------------------------------------------

struct SpectrumMatch {
    std::size_t analytic_index = 0;  // index into the analytic solution's pairs
    std::size_t numeric_index = 0;   // index into the numeric solution's pairs
    Scalar analytic{};
    Scalar numeric{};
    double distance = 0.0;
};

struct OracleReport {
    Vector spectrum;  // numeric eigenvalues, sorted
    double max_residual = std::numeric_limits<double>::quiet_NaN();
    std::vector<SpectrumMatch> matches;
    double max_distance = 0.0;
    double max_relative_distance = 0.0;  // distance / max(|analytic|, |numeric|)
    bool count_mismatch = false;
};

/// Greedy nearest-neighbour pairing of two spectra, visiting the analytic
/// eigenvalues in sorted order. Unequal counts are flagged, not raised.
inline OracleReport match_spectra(const EigenSolution& analytic, const EigenSolution& numeric) {
    OracleReport rep;
    rep.spectrum = numeric.eigenvalues();
    sort_spectrum(rep.spectrum);
    rep.count_mismatch = analytic.size() != numeric.size();

    for (const auto& p : analytic.pairs)
        if (!std::isnan(p.residual))
            rep.max_residual = std::isnan(rep.max_residual) ? p.residual : std::max(rep.max_residual, p.residual);

    std::vector<std::size_t> order(analytic.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const Scalar a = analytic.pairs[i].value, b = analytic.pairs[j].value;
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<bool> used(numeric.size(), false);
    for (std::size_t ai : order) {
        const Scalar av = analytic.pairs[ai].value;
        std::size_t best = numeric.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t ni = 0; ni < numeric.size(); ++ni) {
            if (used[ni]) continue;
            const double d = std::abs(numeric.pairs[ni].value - av);
            if (d < best_d) best_d = d, best = ni;
        }
        if (best == numeric.size()) break;
        used[best] = true;
        const Scalar nv = numeric.pairs[best].value;
        rep.matches.push_back({ai, best, av, nv, best_d});
        rep.max_distance = std::max(rep.max_distance, best_d);
        const double mag = std::max(std::abs(av), std::abs(nv));
        rep.max_relative_distance = std::max(rep.max_relative_distance, mag > 0.0 ? best_d / mag : 0.0);
    }
    return rep;
}

/// Convenience overload for plain eigenvalue lists.
inline OracleReport match_spectra(std::span<const Scalar> analytic, std::span<const Scalar> numeric) {
    EigenSolution a, b;
    for (std::size_t i = 0; i < analytic.size(); ++i) a.pairs.push_back({static_cast<int>(i + 1), analytic[i], {}});
    for (std::size_t i = 0; i < numeric.size(); ++i) b.pairs.push_back({static_cast<int>(i + 1), numeric[i], {}});
    b.provenance = Provenance::Numeric;
    return match_spectra(a, b);
}

}  // namespace structeig
