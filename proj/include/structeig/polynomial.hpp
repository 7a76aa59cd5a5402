#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "structeig/dense.hpp"

namespace structeig {

/// Polynomial with coefficients in ascending powers: c[0] + c[1] z + ... .
/// Leading coefficients below 1e-14 · max|c_k| are trimmed on construction.
class Polynomial {
public:
    Polynomial() : coeffs_{Scalar{}} {}

    explicit Polynomial(Vector coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(Scalar{});
        double biggest = 0.0;
        for (Scalar c : coeffs_) biggest = std::max(biggest, std::abs(c));
        while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= 1e-14 * biggest) coeffs_.pop_back();
    }

    /// Monic polynomial with the given roots.
    static Polynomial from_roots(std::span<const Scalar> roots) {
        Vector c{Scalar{1.0}};
        for (Scalar r : roots) {
            Vector next(c.size() + 1);
            for (std::size_t k = 0; k < c.size(); ++k) {
                next[k + 1] += c[k];
                next[k] -= r * c[k];
            }
            c = std::move(next);
        }
        return Polynomial(std::move(c));
    }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const Vector& coeffs() const noexcept { return coeffs_; }
    Scalar leading() const { return coeffs_.back(); }

    Scalar operator()(Scalar z) const {
        Scalar acc{};
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
        return acc;
    }

    Scalar derivative_at(Scalar z) const {
        Scalar acc{};
        for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * coeffs_[k];
        return acc;
    }

    /// Σ |c_k| |z|^k, the scale against which |p(z)| is judged.
    double magnitude_bound(Scalar z) const {
        const double r = std::abs(z);
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * r + std::abs(coeffs_[k]);
        return acc;
    }

private:
    Vector coeffs_;
};

namespace detail {

/// Roots of a z² + b z + c avoiding cancellation.
inline Vector quadratic_roots(Scalar a, Scalar b, Scalar c) {
    Scalar s = std::sqrt(b * b - 4.0 * a * c);
    if ((std::conj(b) * s).real() < 0.0) s = -s;
    const Scalar q = -0.5 * (b + s);
    if (q == Scalar{}) return {Scalar{}, Scalar{}};  // b = 0 and c = 0
    return {q / a, c / q};
}

}  // namespace detail

/// All roots of p (with multiplicity). Closed form for degree ≤ 2; Aberth
/// simultaneous iteration for higher degree, followed by Newton polishing.
inline Vector poly_roots(const Polynomial& p) {
    const int deg = p.degree();
    if (deg < 1) throw Error(ErrorCode::InvalidArgument, "poly_roots requires degree >= 1");
    const Vector& c = p.coeffs();
    if (deg == 1) return {-c[0] / c[1]};
    if (deg == 2) return detail::quadratic_roots(c[2], c[1], c[0]);

    const Scalar lead = c[deg];
    double radius = 0.0;
    for (int k = 0; k < deg; ++k) radius = std::max(radius, std::abs(c[k] / lead));
    radius += 1.0;

    constexpr double kOffset = 0.4;  // irrational-ish angular offset breaks symmetry
    Vector z(deg);
    for (int k = 0; k < deg; ++k) {
        const double ang = 2.0 * std::numbers::pi * k / deg + kOffset;
        z[k] = std::polar(radius, ang);
    }

    constexpr int kMaxIterations = 500;
    bool converged = false;
    for (int it = 0; it < kMaxIterations && !converged; ++it) {
        double max_step = 0.0;
        for (int i = 0; i < deg; ++i) {
            const Scalar pv = p(z[i]);
            if (pv == Scalar{}) continue;
            const Scalar ratio = pv / p.derivative_at(z[i]);
            Scalar sum{};
            for (int j = 0; j < deg; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            Scalar step = ratio / (1.0 - ratio * sum);
            if (!is_finite(step)) step = ratio;
            if (!is_finite(step)) continue;
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[i])));
        }
        converged = max_step < 1e-13;
    }

    // Newton polish; keeps a step only when it reduces |p|.
    for (auto& r : z) {
        for (int it = 0; it < 3; ++it) {
            const Scalar d = p.derivative_at(r);
            if (d == Scalar{}) break;
            const Scalar cand = r - p(r) / d;
            if (std::abs(p(cand)) < std::abs(p(r))) r = cand;
            else break;
        }
    }

    for (const auto& r : z)
        if (!is_finite(r) || std::abs(p(r)) > 1e-10 * p.magnitude_bound(r))
            throw Error(ErrorCode::NoConvergence, "simultaneous root iteration did not converge");
    return z;
}

}  // namespace structeig
