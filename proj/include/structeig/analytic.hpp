#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "structeig/eigensolution.hpp"
#include "structeig/linalg.hpp"
#include "structeig/polynomial.hpp"
#include "structeig/structured.hpp"

namespace structeig {

inline constexpr double kPi = std::numbers::pi;

/// Symbol of a band: ξ_0 + 2 Σ_{l=1}^m ξ_l cos(lθ).
inline Scalar symbol(const CoefficientBand& band, double theta) {
    Scalar s = band[0];
    for (std::size_t l = 1; l < band.values.size(); ++l) s += 2.0 * band.values[l] * std::cos(l * theta);
    return s;
}

// ---------------------------------------------------------------------------
// Mode grids of the four Toeplitz-plus-Hankel variants
// ---------------------------------------------------------------------------

/// Mesh parameter h of a variant at dimension n.
inline double variant_mesh(HankelVariant variant, std::size_t n) {
    switch (variant) {
        case HankelVariant::Set1: return 1.0 / static_cast<double>(n + 1);
        case HankelVariant::Set2:
        case HankelVariant::Set4: return 1.0 / static_cast<double>(n);
        case HankelVariant::Set3: return 1.0 / static_cast<double>(n - 1);
    }
    return 0.0;
}

/// Frequency index j of the mode labelled `mode` (one-based). Set1/Set2 run
/// j = 1..n; Set3/Set4 run j = 0..n-1.
inline int variant_frequency(HankelVariant variant, int mode) {
    return (variant == HankelVariant::Set3 || variant == HankelVariant::Set4) ? mode - 1 : mode;
}

/// Sample angle θ = jπh of a mode.
inline double variant_angle(HankelVariant variant, std::size_t n, int mode) {
    return variant_frequency(variant, mode) * kPi * variant_mesh(variant, n);
}

/// Closed-form eigenvector (scale c = 1) of a mode.
inline Vector variant_eigenvector(HankelVariant variant, std::size_t n, int mode) {
    const double h = variant_mesh(variant, n);
    const double j = variant_frequency(variant, mode);
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = static_cast<double>(i + 1);  // one-based entry index
        switch (variant) {
            case HankelVariant::Set1: x[i] = std::sin(j * kPi * k * h); break;
            case HankelVariant::Set2: x[i] = std::sin(j * kPi * (k - 0.5) * h); break;
            case HankelVariant::Set3: x[i] = std::cos(j * kPi * (k - 1.0) * h); break;
            case HankelVariant::Set4: x[i] = std::cos(j * kPi * (k - 0.5) * h); break;
        }
    }
    return x;
}

namespace detail {

inline int shared_bandwidth(const CoefficientBand& a, const CoefficientBand& b, std::size_t n) {
    const int m = std::max(a.bandwidth(), b.bandwidth());
    if (n < 2 || m < 1 || static_cast<std::size_t>(m) > n - 1)
        throw Error(ErrorCode::BadBandwidth, "bands need 1 <= m <= n-1 and n >= 2");
    return m;
}

}  // namespace detail

/// Closed-form eigenpairs of A x = λ B x with A, B the Toeplitz-plus-Hankel
/// matrices of `variant` built from α and β. A shorter band is zero-padded to
/// the common bandwidth.
inline EigenSolution gevp_eigenpairs(const CoefficientBand& alpha, const CoefficientBand& beta, std::size_t n,
                                     HankelVariant variant) {
    const int m = detail::shared_bandwidth(alpha, beta, n);
    const CoefficientBand a = alpha.padded(m), b = beta.padded(m);
    const double beta_scale = b.abs_sum();

    EigenSolution sol;
    sol.provenance = Provenance::Analytic;
    sol.h = variant_mesh(variant, n);
    for (int mode = 1; mode <= static_cast<int>(n); ++mode) {
        const double theta = variant_angle(variant, n, mode);
        const Scalar den = symbol(b, theta);
        if (std::abs(den) < 1e-12 * beta_scale)
            throw Error(ErrorCode::SingularPencil, "symbol of B vanishes at mode " + std::to_string(mode));
        sol.pairs.push_back({mode, symbol(a, theta) / den, variant_eigenvector(variant, n, mode)});
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Corner-overlapped block-diagonal pencils
// ---------------------------------------------------------------------------

struct CornerQuadratic {
    Scalar a, b, c;  // â λ² + b̂ λ + ĉ = 0
};

/// Quadratic in λ whose roots are the two eigenvalues attached to cosine
/// sample ζ = cos(jπh) of a corner-overlapped pencil.
inline CornerQuadratic corner_quadratic(const CornerParams& al, const CornerParams& be, double zeta) {
    return {
        be[0] * be[3] - 2.0 * be[1] * be[1] + 2.0 * (be[2] * be[3] - be[1] * be[1]) * zeta,
        4.0 * al[1] * be[1] - be[0] * al[3] - al[0] * be[3] -
            2.0 * (be[2] * al[3] - 2.0 * al[1] * be[1] + al[2] * be[3]) * zeta,
        al[0] * al[3] - 2.0 * al[1] * al[1] + 2.0 * (al[2] * al[3] - al[1] * al[1]) * zeta,
    };
}

/// Closed-form eigenpairs of G(α) x = λ G(β) x for corner-overlapped
/// matrices of dimension 2·half_n+1. Modes 2j−1 and 2j carry the "−" and "+"
/// roots of the quadratic for ζ = cos(jπh), h = 1/(half_n+1); mode 2·half_n+1
/// is λ = α_3/β_3 with an alternating eigenvector on the odd entries.
inline EigenSolution corner_block_eigenpairs(const CornerParams& alpha, const CornerParams& beta, std::size_t half_n) {
    if (half_n < 1) throw Error(ErrorCode::TooSmall, "corner block needs half_n >= 1");
    if (beta[3] == Scalar{}) throw Error(ErrorCode::SingularPencil, "beta_3 must be nonzero");
    const std::size_t dim = 2 * half_n + 1;
    const double h = 1.0 / static_cast<double>(half_n + 1);

    EigenSolution sol;
    sol.provenance = Provenance::Analytic;
    sol.h = h;

    // Matrices are only materialized when an eigenvector must be recovered numerically.
    std::optional<std::pair<DenseMatrix, DenseMatrix>> pencil;
    auto recover = [&](Scalar lambda) {
        if (!pencil) pencil.emplace(build_corner_block(alpha, half_n), build_corner_block(beta, half_n));
        return inverse_iteration(pencil->first, pencil->second, lambda);
    };

    auto quadratic_mode_vector = [&](int j, Scalar lambda, bool& numeric) {
        const Scalar den = lambda * beta[3] - alpha[3];
        const Scalar num = alpha[1] - lambda * beta[1];
        if (std::abs(den) <= 1e-14 * (std::abs(lambda * beta[3]) + std::abs(alpha[3]))) {
            numeric = true;
            return recover(lambda);
        }
        const Scalar factor = num / den;
        // even entries (one-based 2k) are sin(jπkh); x_0 = x_{2n+2} = 0
        std::vector<Scalar> even(half_n + 2);
        for (std::size_t k = 1; k <= half_n; ++k) even[k] = std::sin(j * kPi * static_cast<double>(k) * h);
        Vector x(dim);
        for (std::size_t k = 1; k <= half_n; ++k) x[2 * k - 1] = even[k];
        for (std::size_t k = 0; k <= half_n; ++k) x[2 * k] = factor * (even[k] + even[k + 1]);
        return x;
    };

    for (int j = 1; j <= static_cast<int>(half_n); ++j) {
        const double zeta = std::cos(j * kPi * h);
        const auto q = corner_quadratic(alpha, beta, zeta);
        const double qscale = std::abs(q.a) + std::abs(q.b) + std::abs(q.c);
        if (std::abs(q.a) < 1e-14 * qscale) {
            if (std::abs(q.b) < 1e-14 * qscale)
                throw Error(ErrorCode::DegenerateQuadratic, "quadratic and linear terms vanish at j=" + std::to_string(j));
            const Scalar lambda = -q.c / q.b;
            bool numeric = false;
            Vector x = quadratic_mode_vector(j, lambda, numeric);
            sol.pairs.push_back({2 * j - 1, lambda, std::move(x), std::numeric_limits<double>::quiet_NaN(), numeric});
            continue;
        }
        const Scalar disc = std::sqrt(q.b * q.b - 4.0 * q.a * q.c);
        const Scalar minus = (-q.b - disc) / (2.0 * q.a);
        const Scalar plus = (-q.b + disc) / (2.0 * q.a);
        for (auto [mode, lambda] : {std::pair{2 * j - 1, minus}, std::pair{2 * j, plus}}) {
            bool numeric = false;
            Vector x = quadratic_mode_vector(j, lambda, numeric);
            sol.pairs.push_back({mode, lambda, std::move(x), std::numeric_limits<double>::quiet_NaN(), numeric});
        }
    }

    Vector alt(dim);
    for (std::size_t k = 0; k <= half_n; ++k) alt[2 * k] = (k % 2 == 0) ? 1.0 : -1.0;
    sol.pairs.push_back({static_cast<int>(dim), alpha[3] / beta[3], std::move(alt)});
    return sol;
}

/// Eigenpairs of the quadratic FEM pencil K u = λ M u on n_elems elements:
/// minus branch for modes 1..n−1, λ = 10n² at mode n, plus branch (with
/// frequency j−n) for modes n+1..2n−1.
inline EigenSolution fem_p2_eigenpairs(std::size_t n_elems) {
    if (n_elems < 2) throw Error(ErrorCode::TooSmall, "FEM P2 needs n_elems >= 2");
    const int n = static_cast<int>(n_elems);
    const double h = 1.0 / n;
    const double n2 = static_cast<double>(n) * n;
    const std::size_t dim = 2 * n_elems - 1;

    EigenSolution sol;
    sol.provenance = Provenance::Analytic;
    sol.h = h;
    for (int j = 1; j <= 2 * n - 1; ++j) {
        EigenPair p;
        p.mode = j;
        p.vector.assign(dim, Scalar{});
        if (j == n) {
            p.value = 10.0 * n2;
            for (int k = 0; k < n; ++k) p.vector[2 * k] = (k % 2 == 0) ? 1.0 : -1.0;
        } else {
            const int freq = j < n ? j : j - n;
            const double sgn = j < n ? -1.0 : 1.0;
            const double zeta = std::cos(freq * kPi * h);
            const double root = std::sqrt(124.0 + 112.0 * zeta - 11.0 * zeta * zeta);
            const double lam = 4.0 * (13.0 + 2.0 * zeta + sgn * root) / (3.0 - zeta) * n2;
            p.value = lam;
            const double big_lambda = lam * h * h;
            const double factor = (40.0 + big_lambda) / (80.0 - 8.0 * big_lambda);
            std::vector<double> even(n_elems + 1);
            for (int k = 1; k < n; ++k) even[k] = std::sin(freq * kPi * k * h);
            for (int k = 1; k < n; ++k) p.vector[2 * k - 1] = even[k];
            for (int k = 0; k < n; ++k) p.vector[2 * k] = factor * (even[k] + even[k + 1]);
        }
        sol.pairs.push_back(std::move(p));
    }
    return sol;
}

/// Eigenvalues of the cubic FEM pencil (ascending): three roots Λ/h² of
/// (4+ζ)Λ³ − 30(18−ζ)Λ² + 360(32+3ζ)Λ − 25200(1−ζ) = 0 per ζ = cos(jπh),
/// j = 1..n−1, plus 10n² and 42n².
inline Vector fem_p3_eigenvalues(std::size_t n_elems) {
    if (n_elems < 2) throw Error(ErrorCode::TooSmall, "FEM P3 needs n_elems >= 2");
    const double n = static_cast<double>(n_elems);
    const double h = 1.0 / n;
    Vector out{10.0 * n * n, 42.0 * n * n};
    for (std::size_t j = 1; j < n_elems; ++j) {
        const double zeta = std::cos(static_cast<double>(j) * kPi * h);
        const Polynomial cubic(Vector{-25200.0 * (1.0 - zeta), 360.0 * (32.0 + 3.0 * zeta), -30.0 * (18.0 - zeta),
                                      4.0 + zeta});
        for (Scalar r : poly_roots(cubic)) {
            // the cubic has three real roots; drop round-off imaginary parts
            if (std::abs(r.imag()) <= 1e-10 * std::abs(r)) r = r.real();
            out.push_back(r * n * n);
        }
    }
    sort_spectrum(out);
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial eigenvalue problems
// ---------------------------------------------------------------------------

/// P(λ) = Σ_k λ^k A_k where A_k is the Toeplitz-plus-Hankel matrix of
/// coeff_bands[k] under `variant`.
struct PolynomialPencil {
    std::vector<CoefficientBand> coeff_bands;
    HankelVariant variant = HankelVariant::Set1;
    std::size_t n = 0;

    int degree() const noexcept { return static_cast<int>(coeff_bands.size()) - 1; }

    int bandwidth() const {
        int m = -1;
        for (const auto& b : coeff_bands) m = std::max(m, b.bandwidth());
        return m;
    }

    void validate() const {
        if (coeff_bands.size() < 2) throw Error(ErrorCode::InvalidArgument, "pencil needs q >= 1 (two or more bands)");
        const int m = bandwidth();
        if (n < 2 || m < 1 || static_cast<std::size_t>(m) > n - 1)
            throw Error(ErrorCode::BadBandwidth, "pencil needs n >= 2 and 1 <= m <= n-1");
    }

    /// Dense coefficient matrices A_0..A_q, bands zero-padded to the common m.
    std::vector<DenseMatrix> matrices() const {
        validate();
        std::vector<DenseMatrix> out;
        for (const auto& b : coeff_bands) out.push_back(assemble_toeplitz_hankel(b.padded(bandwidth()), n, variant));
        return out;
    }
};

struct PevpMode {
    int mode = 0;
    Vector roots;
    Vector vector;
    bool degree_drop = false;
};

struct PevpSolution {
    std::vector<PevpMode> modes;
    double h = 0.0;
    int degree = 0;

    std::size_t eigenvalue_count() const {
        std::size_t c = 0;
        for (const auto& m : modes) c += m.roots.size();
        return c;
    }
    bool any_degree_drop() const {
        for (const auto& m : modes)
            if (m.degree_drop) return true;
        return false;
    }
    Vector eigenvalues() const {
        Vector v;
        for (const auto& m : modes) v.insert(v.end(), m.roots.begin(), m.roots.end());
        return v;
    }
};

/// Per-mode eigenvalues of P(λ) x = 0: the roots of Σ_k λ^k symbol(α^{(k)}, θ_j),
/// sharing the variant eigenvector of mode j. A vanishing leading symbol drops
/// the degree for that mode and is flagged instead of raised.
inline PevpSolution pevp_eigenpairs(const PolynomialPencil& pencil) {
    pencil.validate();
    const int m = pencil.bandwidth();
    const int q = pencil.degree();
    std::vector<CoefficientBand> bands;
    for (const auto& b : pencil.coeff_bands) bands.push_back(b.padded(m));

    PevpSolution sol;
    sol.h = variant_mesh(pencil.variant, pencil.n);
    sol.degree = q;
    for (int mode = 1; mode <= static_cast<int>(pencil.n); ++mode) {
        const double theta = variant_angle(pencil.variant, pencil.n, mode);
        Vector coeffs(static_cast<std::size_t>(q) + 1);
        for (int k = 0; k <= q; ++k) coeffs[k] = symbol(bands[k], theta);
        PevpMode pm;
        pm.mode = mode;
        pm.vector = variant_eigenvector(pencil.variant, pencil.n, mode);
        while (coeffs.size() > 1 &&
               std::abs(coeffs.back()) < 1e-12 * std::max(bands[coeffs.size() - 1].abs_sum(), 1e-300)) {
            coeffs.pop_back();
            pm.degree_drop = true;
        }
        const Polynomial poly(coeffs);
        if (poly.degree() < static_cast<int>(coeffs.size()) - 1) pm.degree_drop = true;
        if (poly.degree() == 0 && poly.coeffs()[0] == Scalar{})
            throw Error(ErrorCode::SingularLeading, "P(λ) vanishes identically on mode " + std::to_string(mode));
        if (poly.degree() >= 1) pm.roots = poly_roots(poly);
        sol.modes.push_back(std::move(pm));
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Composition rules
// ---------------------------------------------------------------------------

/// Eigenpairs of (A⊗D + B⊗C) z = η (B⊗D) z from those of (A,B) and (C,D):
/// η = λ_j + μ_k, z = x_j ⊗ y_k. Mode label is (j−1)·|right| + k.
inline EigenSolution tensor_eigenpairs(const EigenSolution& left, const EigenSolution& right) {
    if (left.pairs.empty() || right.pairs.empty())
        throw Error(ErrorCode::InvalidArgument, "tensor composition needs nonempty eigen-solutions");
    EigenSolution out;
    out.provenance = (left.provenance == Provenance::Analytic && right.provenance == Provenance::Analytic)
                         ? Provenance::Analytic
                         : Provenance::Numeric;
    const int nr = static_cast<int>(right.pairs.size());
    for (std::size_t a = 0; a < left.pairs.size(); ++a)
        for (std::size_t b = 0; b < right.pairs.size(); ++b) {
            EigenPair p;
            p.mode = static_cast<int>(a) * nr + static_cast<int>(b) + 1;
            p.value = left.pairs[a].value + right.pairs[b].value;
            p.vector = kron(left.pairs[a].vector, right.pairs[b].vector);
            out.pairs.push_back(std::move(p));
        }
    return out;
}

/// Eigenpairs of c1·A x = λ c2·B x given those of A x = λ B x: eigenvalues are
/// multiplied by c1/c2 and eigenvectors are unchanged.
inline EigenSolution scale_pencil(const EigenSolution& sol, Scalar c1, Scalar c2) {
    if (c1 == Scalar{} || c2 == Scalar{}) throw Error(ErrorCode::ZeroScale, "scaling constants must be nonzero");
    EigenSolution out = sol;
    const Scalar factor = c1 / c2;
    for (auto& p : out.pairs) p.value *= factor;
    return out;
}

}  // namespace structeig
