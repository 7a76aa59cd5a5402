#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "structeig/dense.hpp"

namespace structeig {

/// Band parameters (ξ_0, …, ξ_m) of a symmetric banded Toeplitz/Hankel family.
struct CoefficientBand {
    std::vector<Scalar> values;

    CoefficientBand() = default;
    CoefficientBand(std::initializer_list<Scalar> v) : values(v) {}
    explicit CoefficientBand(std::vector<Scalar> v) : values(std::move(v)) {}

    /// Bandwidth m; -1 for an empty band.
    int bandwidth() const noexcept { return static_cast<int>(values.size()) - 1; }
    Scalar operator[](std::size_t l) const { return l < values.size() ? values[l] : Scalar{}; }

    /// Copy zero-padded to bandwidth m (never truncates).
    CoefficientBand padded(int m) const {
        CoefficientBand b = *this;
        if (static_cast<int>(b.values.size()) < m + 1) b.values.resize(static_cast<std::size_t>(m) + 1);
        return b;
    }

    double abs_sum() const {
        double s = 0.0;
        for (Scalar v : values) s += std::abs(v);
        return s;
    }
};

/// Boundary correction families. Set1/Set2 are subtracted from the Toeplitz
/// part (sine eigenvectors), Set3/Set4 are added (cosine eigenvectors).
enum class HankelVariant { Set1 = 1, Set2 = 2, Set3 = 3, Set4 = 4 };

inline double hankel_sign(HankelVariant v) {
    return (v == HankelVariant::Set1 || v == HankelVariant::Set2) ? -1.0 : 1.0;
}

inline HankelVariant hankel_variant_from_int(int v) {
    if (v < 1 || v > 4) throw Error(ErrorCode::InvalidArgument, "variant must be 1, 2, 3 or 4");
    return static_cast<HankelVariant>(v);
}

// ---------------------------------------------------------------------------
// Toeplitz and Hankel builders
// ---------------------------------------------------------------------------

/// Symmetric banded Toeplitz matrix T_{j,j+k} = ξ_{|k|} for |k| ≤ m.
inline DenseMatrix build_toeplitz(const CoefficientBand& band, std::size_t n) {
    const int m = band.bandwidth();
    if (m < 1 || n < 2 || static_cast<std::size_t>(m) > n - 1)
        throw Error(ErrorCode::BadBandwidth, "Toeplitz bandwidth must satisfy 1 <= m <= n-1");
    DenseMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (int k = -m; k <= m; ++k) {
            const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + k;
            if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) continue;
            t(i, static_cast<std::size_t>(j)) = band.values[static_cast<std::size_t>(std::abs(k))];
        }
    return t;
}

namespace detail {

// Adds one top-left entry (one-based indices) and its persymmetric image.
// The correction is the sum of the corner block and its reflection, so where
// the two meet (Set3 with m = n-1 reaches the anti-diagonal) entries add up.
inline void put_corner(DenseMatrix& h, std::size_t j, std::size_t k, Scalar v) {
    const std::size_t n = h.rows();
    h(j - 1, k - 1) += v;
    h(n - j, n - k) += v;
}

}  // namespace detail

/// Corner (Hankel) boundary correction for the given variant. The top-left
/// block follows the variant's index rule and the bottom-right block is its
/// persymmetric reflection; the two are summed.
inline DenseMatrix build_hankel(const CoefficientBand& band, std::size_t n, HankelVariant variant) {
    const int m = band.bandwidth();
    if (m < 1 || n < 2 || static_cast<std::size_t>(m) > n)
        throw Error(ErrorCode::BadBandwidth, "Hankel bandwidth must satisfy 1 <= m <= n");
    if (2 * static_cast<std::size_t>(m) - 1 > n)
        throw Error(ErrorCode::OverlapError,
                    "top-left and bottom-right corrections collide (2m-1 > n); increase n");
    DenseMatrix h(n, n);
    const auto um = static_cast<std::size_t>(m);
    switch (variant) {
        case HankelVariant::Set1:
            // H_{j,k} = ξ_{j+k}, k = 1..m-j, j = 1..m-1
            for (std::size_t j = 1; j + 1 <= um; ++j)
                for (std::size_t k = 1; k + j <= um; ++k) detail::put_corner(h, j, k, band.values[j + k]);
            break;
        case HankelVariant::Set2:
        case HankelVariant::Set4:
            // H_{j,k} = ξ_{j+k-1}, k = 1..m-j+1, j = 1..m
            for (std::size_t j = 1; j <= um; ++j)
                for (std::size_t k = 1; k + j <= um + 1; ++k) detail::put_corner(h, j, k, band.values[j + k - 1]);
            break;
        case HankelVariant::Set3:
            // H_{1,1} = -ξ_0/2; H_{j+1,k+1} = ξ_{j+k}, k = 1..m-j, j = 1..m-1
            detail::put_corner(h, 1, 1, -band.values[0] / 2.0);
            for (std::size_t j = 1; j + 1 <= um; ++j)
                for (std::size_t k = 1; k + j <= um; ++k) detail::put_corner(h, j + 1, k + 1, band.values[j + k]);
            break;
    }
    return h;
}

/// T − H for Set1/Set2, T + H for Set3/Set4.
inline DenseMatrix assemble_toeplitz_hankel(const CoefficientBand& band, std::size_t n, HankelVariant variant) {
    DenseMatrix t = build_toeplitz(band, n);
    const DenseMatrix h = build_hankel(band, n, variant);
    return hankel_sign(variant) < 0 ? t - h : t + h;
}

// ---------------------------------------------------------------------------
// Corner-overlapped block-diagonal matrices and FEM pencils
// ---------------------------------------------------------------------------

/// The four parameters (ξ_0, ξ_1, ξ_2, ξ_3) of a corner-overlapped family.
using CornerParams = std::array<Scalar, 4>;

/// Corner-overlapped block-diagonal matrix of dimension 2·half_n+1. With
/// one-based indices: odd diagonal ξ_3, even diagonal ξ_0, first
/// off-diagonal ξ_1, and (2j, 2j+2) entries ξ_2.
inline DenseMatrix build_corner_block(const CornerParams& xi, std::size_t half_n) {
    if (half_n < 1) throw Error(ErrorCode::TooSmall, "corner block needs half_n >= 1");
    const std::size_t n = 2 * half_n + 1;
    DenseMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = (i % 2 == 0) ? xi[3] : xi[0];
        if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = xi[1];
        if (i % 2 == 1 && i + 2 < n) g(i, i + 2) = g(i + 2, i) = xi[2];
    }
    return g;
}

struct StiffnessMass {
    DenseMatrix stiffness;  // K
    DenseMatrix mass;       // M
};

/// Quadratic Lagrange element parameters of the unit-interval Laplacian, in
/// corner-block slots (ξ_0, ξ_1, ξ_2, ξ_3), before the 1/h and h scalings.
inline constexpr std::array<double, 4> kFemP2Stiffness{14.0 / 3.0, -8.0 / 3.0, 1.0 / 3.0, 16.0 / 3.0};
inline constexpr std::array<double, 4> kFemP2Mass{4.0 / 15.0, 1.0 / 15.0, -1.0 / 30.0, 8.0 / 15.0};

inline CornerParams to_corner_params(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

/// Quadratic FEM stiffness and mass matrices on n_elems uniform elements with
/// homogeneous Dirichlet ends, dimension 2n−1.
inline StiffnessMass build_fem_p2(std::size_t n_elems) {
    if (n_elems < 2) throw Error(ErrorCode::TooSmall, "FEM P2 needs n_elems >= 2");
    const double h = 1.0 / static_cast<double>(n_elems);
    return {build_corner_block(to_corner_params(kFemP2Stiffness), n_elems - 1) * (1.0 / h),
            build_corner_block(to_corner_params(kFemP2Mass), n_elems - 1) * h};
}

/// Cubic Lagrange element matrices (equispaced nodes) on [0, h]: stiffness
/// times h and mass divided by h.
inline const std::array<std::array<double, 4>, 4>& fem_p3_element_stiffness() {
    static const std::array<std::array<double, 4>, 4> k{{
        {148.0 / 40, -189.0 / 40, 54.0 / 40, -13.0 / 40},
        {-189.0 / 40, 432.0 / 40, -297.0 / 40, 54.0 / 40},
        {54.0 / 40, -297.0 / 40, 432.0 / 40, -189.0 / 40},
        {-13.0 / 40, 54.0 / 40, -189.0 / 40, 148.0 / 40},
    }};
    return k;
}

inline const std::array<std::array<double, 4>, 4>& fem_p3_element_mass() {
    static const std::array<std::array<double, 4>, 4> m{{
        {128.0 / 1680, 99.0 / 1680, -36.0 / 1680, 19.0 / 1680},
        {99.0 / 1680, 648.0 / 1680, -81.0 / 1680, -36.0 / 1680},
        {-36.0 / 1680, -81.0 / 1680, 648.0 / 1680, 99.0 / 1680},
        {19.0 / 1680, -36.0 / 1680, 99.0 / 1680, 128.0 / 1680},
    }};
    return m;
}

/// Cubic FEM stiffness and mass matrices, dimension 3n−1: 4×4 element
/// blocks overlapping at shared vertices, boundary vertices removed.
inline StiffnessMass build_fem_p3(std::size_t n_elems) {
    if (n_elems < 2) throw Error(ErrorCode::TooSmall, "FEM P3 needs n_elems >= 2");
    const double h = 1.0 / static_cast<double>(n_elems);
    const std::size_t full = 3 * n_elems + 1;
    const std::size_t n = full - 2;
    DenseMatrix k(n, n), m(n, n);
    const auto& ke = fem_p3_element_stiffness();
    const auto& me = fem_p3_element_mass();
    for (std::size_t e = 0; e < n_elems; ++e) {
        for (std::size_t a = 0; a < 4; ++a) {
            const std::size_t ga = 3 * e + a;
            if (ga == 0 || ga == full - 1) continue;
            for (std::size_t b = 0; b < 4; ++b) {
                const std::size_t gb = 3 * e + b;
                if (gb == 0 || gb == full - 1) continue;
                k(ga - 1, gb - 1) += ke[a][b] / h;
                m(ga - 1, gb - 1) += me[a][b] * h;
            }
        }
    }
    return {std::move(k), std::move(m)};
}

struct TensorPencil {
    DenseMatrix lhs;  // A ⊗ D + B ⊗ C
    DenseMatrix rhs;  // B ⊗ D
};

/// Pencil (A ⊗ D + B ⊗ C, B ⊗ D) whose eigenvalues are sums λ_j + μ_k of the
/// factor pencils (A, B) and (C, D).
inline TensorPencil assemble_tensor_pencil(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                                           const DenseMatrix& d) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw Error(ErrorCode::ShapeMismatch, "A and B must be square and of equal size");
    if (!c.is_square() || !d.is_square() || c.rows() != d.rows())
        throw Error(ErrorCode::ShapeMismatch, "C and D must be square and of equal size");
    return {kron(a, d) + kron(b, c), kron(b, d)};
}

// ---------------------------------------------------------------------------
// StructuredSpec: a family descriptor that materializes to a dense matrix
// ---------------------------------------------------------------------------

enum class FemOperator { Stiffness, Mass };

struct StructuredSpec;

struct ToeplitzHankelFamily {
    HankelVariant variant = HankelVariant::Set1;
    CoefficientBand band;
    bool plain_toeplitz = false;  // skip the Hankel correction
};
struct CornerBlockFamily {
    CornerParams xi{};
};
struct FemP2Family {
    std::size_t n_elems = 2;
    FemOperator which = FemOperator::Stiffness;
};
struct FemP3Family {
    std::size_t n_elems = 2;
    FemOperator which = FemOperator::Stiffness;
};
struct TensorFamily {
    std::shared_ptr<const StructuredSpec> left;
    std::shared_ptr<const StructuredSpec> right;
};

struct StructuredSpec {
    std::variant<ToeplitzHankelFamily, CornerBlockFamily, FemP2Family, FemP3Family, TensorFamily> family;
    std::size_t n = 0;  // dimension (half_n for CornerBlock is derived)
    Scalar scale{1.0};

    /// Throws the builder's error if the descriptor violates a dimension rule.
    void validate() const { (void)materialize(); }

    std::size_t dimension() const {
        return std::visit(
            [&](const auto& f) -> std::size_t {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, FemP2Family>) return 2 * f.n_elems - 1;
                else if constexpr (std::is_same_v<F, FemP3Family>) return 3 * f.n_elems - 1;
                else if constexpr (std::is_same_v<F, TensorFamily>)
                    return f.left->dimension() * f.right->dimension();
                else return n;
            },
            family);
    }

    DenseMatrix materialize() const {
        DenseMatrix out = std::visit(
            [&](const auto& f) -> DenseMatrix {
                using F = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<F, ToeplitzHankelFamily>) {
                    return f.plain_toeplitz ? build_toeplitz(f.band, n) : assemble_toeplitz_hankel(f.band, n, f.variant);
                } else if constexpr (std::is_same_v<F, CornerBlockFamily>) {
                    if (n < 3 || n % 2 == 0)
                        throw Error(ErrorCode::InvalidArgument, "corner block dimension must be odd and >= 3");
                    return build_corner_block(f.xi, (n - 1) / 2);
                } else if constexpr (std::is_same_v<F, FemP2Family>) {
                    auto km = build_fem_p2(f.n_elems);
                    return f.which == FemOperator::Stiffness ? km.stiffness : km.mass;
                } else if constexpr (std::is_same_v<F, FemP3Family>) {
                    auto km = build_fem_p3(f.n_elems);
                    return f.which == FemOperator::Stiffness ? km.stiffness : km.mass;
                } else {
                    if (!f.left || !f.right) throw Error(ErrorCode::InvalidArgument, "tensor factors missing");
                    return kron(f.left->materialize(), f.right->materialize());
                }
            },
            family);
        if (scale != Scalar{1.0}) out *= scale;
        return out;
    }
};

}  // namespace structeig
