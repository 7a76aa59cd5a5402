#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "structeig/dense.hpp"

namespace structeig {

enum class Provenance { Analytic, Numeric };

/// One eigenpair. `mode` carries the mode index the generating formula uses
/// (one-based); numeric solvers number pairs by ascending order.
struct EigenPair {
    int mode = 0;
    Scalar value{};
    Vector vector;
    double residual = std::numeric_limits<double>::quiet_NaN();
    bool numeric_vector = false;  // eigenvector recovered by inverse iteration
};

struct EigenSolution {
    std::vector<EigenPair> pairs;
    Provenance provenance = Provenance::Analytic;
    double h = std::numeric_limits<double>::quiet_NaN();

    std::size_t size() const noexcept { return pairs.size(); }

    Vector eigenvalues() const {
        Vector v;
        v.reserve(pairs.size());
        for (const auto& p : pairs) v.push_back(p.value);
        return v;
    }

    /// Copy ordered by (real part, imaginary part), ties broken by mode index.
    EigenSolution sorted() const {
        EigenSolution s = *this;
        std::stable_sort(s.pairs.begin(), s.pairs.end(), [](const EigenPair& a, const EigenPair& b) {
            if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
            if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
            return a.mode < b.mode;
        });
        return s;
    }

    /// Copy with every eigenvector rescaled to unit Euclidean norm.
    EigenSolution normalized() const {
        EigenSolution s = *this;
        for (auto& p : s.pairs) normalize(p.vector);
        return s;
    }
};

/// Sorts a plain eigenvalue list by (real, imag).
inline void sort_spectrum(Vector& values) {
    std::sort(values.begin(), values.end(), [](Scalar a, Scalar b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

}  // namespace structeig
