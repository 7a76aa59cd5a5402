// Closed-form eigenpairs of a complex Toeplitz-plus-Hankel pencil, next to
// the dense oracle.

#include <cstdio>

#include "structeig.hpp"

using namespace structeig;

int main() {
    const CoefficientBand alpha{Vector{{8, 2}, {5, -1}, {0, 2}}};
    const CoefficientBand beta{Vector{{6, 0}, {0, 3}, {1, -1}}};
    const std::size_t n = 5;
    const auto v = HankelVariant::Set3;

    const DenseMatrix a = assemble_toeplitz_hankel(alpha, n, v);
    const DenseMatrix b = assemble_toeplitz_hankel(beta, n, v);
    EigenSolution analytic = gevp_eigenpairs(alpha, beta, n, v);
    attach_residuals(analytic, a, b);
    const OracleReport rep = match_spectra(analytic, solve_gevp_numeric(a, b));

    std::printf("A(1,1) = %s\n", format_scalar(a(0, 0)).c_str());
    for (const auto& m : rep.matches) {
        const EigenPair& p = analytic.pairs[m.analytic_index];
        std::printf("mode %d  lambda = %-40s residual %.1e  oracle gap %.1e\n", p.mode, format_scalar(p.value, 12).c_str(),
                    p.residual, m.distance);
    }
}
