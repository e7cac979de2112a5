#include "vws/numerics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace vws {

EigenDecomposition hermitian_evd(const CMatrix& m)
{
    if (m.rows() != m.cols())
        throw InvalidArgument("EVD needs a square matrix");
    if (!m.allFinite())
        throw InvalidArgument("EVD input has non-finite entries");

    const CMatrix sym = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw InvalidArgument("EVD did not converge");

    // Eigen returns ascending order.
    const auto n = m.rows();
    EigenDecomposition out{RVector(n), CMatrix(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
        out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

cplx polyval(std::span<const cplx> coeffs, cplx z)
{
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

namespace {

cplx polyder_val(std::span<const cplx> coeffs, cplx z)
{
    cplx acc = 0.0;
    for (std::size_t k = coeffs.size() - 1; k >= 1; --k)
        acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
}

// Diagonal similarity scaling by powers of two so that row and column norms
// are comparable (Parlett-Reinsch, no permutations).
void balance(CMatrix& a)
{
    constexpr double radix = 2.0;
    const auto n = a.rows();
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0)
                continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix * radix;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

}  // namespace

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs)
{
    std::size_t len = coeffs.size();
    while (len > 0 && coeffs[len - 1] == cplx(0.0))
        --len;
    if (len == 0)
        throw InvalidArgument("cannot root the zero polynomial");
    if (len == 1)
        throw InvalidArgument("constant polynomial has no roots");
    for (std::size_t k = 0; k < len; ++k)
        if (!std::isfinite(coeffs[k].real()) || !std::isfinite(coeffs[k].imag()))
            throw InvalidArgument("polynomial has non-finite coefficients");

    const auto poly = coeffs.first(len);
    const auto degree = static_cast<Eigen::Index>(len - 1);
    const cplx lead = poly[len - 1];

    CMatrix companion = CMatrix::Zero(degree, degree);
    for (Eigen::Index k = 0; k < degree; ++k)
        companion(0, k) = -poly[static_cast<std::size_t>(degree - 1 - k)] / lead;
    for (Eigen::Index k = 1; k < degree; ++k)
        companion(k, k - 1) = 1.0;
    balance(companion);

    Eigen::ComplexEigenSolver<CMatrix> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw InvalidArgument("companion eigenvalue iteration did not converge");

    std::vector<cplx> roots(static_cast<std::size_t>(degree));
    for (Eigen::Index k = 0; k < degree; ++k) {
        cplx z = solver.eigenvalues()(k);
        double res = std::abs(polyval(poly, z));
        for (int iter = 0; iter < 4 && res > 0.0; ++iter) {
            const cplx dp = polyder_val(poly, z);
            if (dp == cplx(0.0))
                break;
            const cplx next = z - polyval(poly, z) / dp;
            const double next_res = std::abs(polyval(poly, next));
            if (!(next_res < res))
                break;
            z = next;
            res = next_res;
        }
        roots[static_cast<std::size_t>(k)] = z;
    }
    return roots;
}

}  // namespace vws
