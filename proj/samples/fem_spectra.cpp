// Quadratic and cubic finite elements on (0,1): closed-form spectra against
// (jπ)², including the outlier branches.

#include <cstdio>

#include "structeig.hpp"

using namespace structeig;

int main() {
    const std::size_t n = 8;
    Vector p2 = fem_p2_eigenpairs(n).eigenvalues();
    sort_spectrum(p2);
    const Vector p3 = fem_p3_eigenvalues(n);

    std::printf("%4s %16s %16s %16s\n", "j", "P2", "P3", "(j pi)^2");
    for (std::size_t j = 0; j < p3.size(); ++j) {
        const double exact = (j + 1.0) * (j + 1.0) * kPi * kPi;
        if (j < p2.size()) std::printf("%4zu %16.6f %16.6f %16.6f\n", j + 1, p2[j].real(), p3[j].real(), exact);
        else std::printf("%4zu %16s %16.6f %16.6f\n", j + 1, "", p3[j].real(), exact);
    }
    std::printf("10n^2 = %zu, 42n^2 = %zu\n", 10 * n * n, 42 * n * n);
}
