#include "catch_amalgamated.hpp"

#include <algorithm>
#include <limits>

#include "vws/numerics.hpp"
#include "vws/signal_model.hpp"

using namespace vws;
using Catch::Matchers::WithinAbs;

namespace {

CMatrix random_hermitian(int n, std::uint64_t seed)
{
    Rng rng(seed);
    CMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = rng.complex_normal();
    return (a + a.adjoint()) / 2.0;
}

// Ascending coefficients of prod (z - r_k).
std::vector<cplx> expand(const std::vector<cplx>& roots)
{
    std::vector<cplx> c{1.0};
    for (const cplx& r : roots) {
        std::vector<cplx> next(c.size() + 1, 0.0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = next;
    }
    return c;
}

// Greedy nearest matching; returns the worst distance.
double match_roots(std::vector<cplx> got, const std::vector<cplx>& want)
{
    double worst = 0.0;
    for (const cplx& w : want) {
        auto it = std::min_element(got.begin(), got.end(), [&](const cplx& x, const cplx& y) {
            return std::abs(x - w) < std::abs(y - w);
        });
        worst = std::max(worst, std::abs(*it - w));
        got.erase(it);
    }
    return worst;
}

}  // namespace

TEST_CASE("hermitian_evd basics")
{
    const EigenDecomposition id = hermitian_evd(CMatrix::Identity(3, 3));
    CHECK(id.eigenvalues.isApprox(RVector::Ones(3)));

    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    d(2, 2) = 2.0;
    const EigenDecomposition e = hermitian_evd(d);
    CHECK_THAT(e.eigenvalues(0), WithinAbs(3.0, 1e-14));
    CHECK_THAT(e.eigenvalues(1), WithinAbs(2.0, 1e-14));
    CHECK_THAT(e.eigenvalues(2), WithinAbs(1.0, 1e-14));
    CHECK_THAT(std::abs(e.eigenvectors(0, 0)), WithinAbs(1.0, 1e-14));
    CHECK_THAT(std::abs(e.eigenvectors(2, 1)), WithinAbs(1.0, 1e-14));
    CHECK_THAT(std::abs(e.eigenvectors(1, 2)), WithinAbs(1.0, 1e-14));
}

TEST_CASE("hermitian_evd contract on random Hermitian matrices")
{
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const int n = 2 + static_cast<int>(seed % 30);
        const CMatrix a = random_hermitian(n, seed);
        const EigenDecomposition e = hermitian_evd(a);
        const CMatrix& v = e.eigenvectors;
        CHECK((v.adjoint() * v - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
        for (int i = 0; i < n; ++i)
            CHECK((a * v.col(i) - e.eigenvalues(i) * v.col(i)).norm() <= 1e-9 * a.norm());
        const CMatrix rebuilt = v * e.eigenvalues.cast<cplx>().asDiagonal() * v.adjoint();
        CHECK((rebuilt - a).norm() <= 1e-9 * a.norm());
        for (int i = 1; i < n; ++i)
            CHECK(e.eigenvalues(i - 1) >= e.eigenvalues(i));
    }
}

TEST_CASE("hermitian_evd symmetrizes and keeps PSD spectra non-negative")
{
    CMatrix b = random_hermitian(12, 99);
    const CMatrix psd = b * b.adjoint();
    CMatrix skewed = psd;
    skewed(0, 1) += cplx(1e-13, 1e-13);  // tiny asymmetry
    const EigenDecomposition e = hermitian_evd(skewed);
    CHECK(e.eigenvalues.minCoeff() >= -1e-10 * psd.trace().real());

    CMatrix bad = CMatrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(hermitian_evd(bad), InvalidArgument);
    CHECK_THROWS_AS(hermitian_evd(CMatrix::Zero(2, 3)), InvalidArgument);
}

TEST_CASE("polynomial_roots")
{
    const std::vector<cplx> zsq_minus_one{-1.0, 0.0, 1.0};
    CHECK(match_roots(polynomial_roots(zsq_minus_one), {1.0, -1.0}) < 1e-14);

    const std::vector<cplx> zsq_plus_one{1.0, 0.0, 1.0};
    CHECK(match_roots(polynomial_roots(zsq_plus_one), {cplx(0, 1), cplx(0, -1)}) < 1e-14);

    const std::vector<cplx> want{0.5, 2.0, cplx(0, 1)};
    CHECK(match_roots(polynomial_roots(expand(want)), want) < 1e-8);

    // Trailing zeros are trimmed; low-order zeros give roots at 0.
    const std::vector<cplx> padded{0.0, 0.0, 1.0, 0.0, 0.0};
    const auto zeros = polynomial_roots(padded);
    REQUIRE(zeros.size() == 2);
    CHECK(std::abs(zeros[0]) < 1e-14);
    CHECK(std::abs(zeros[1]) < 1e-14);

    const std::vector<cplx> zero{0.0, 0.0};
    CHECK_THROWS_AS(polynomial_roots(zero), InvalidArgument);
    const std::vector<cplx> constant{3.0};
    CHECK_THROWS_AS(polynomial_roots(constant), InvalidArgument);
    CHECK_THROWS_AS(polynomial_roots(std::vector<cplx>{}), InvalidArgument);
}

TEST_CASE("polynomial_roots residual on random polynomials")
{
    Rng rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const int degree = 1 + trial % 40;
        std::vector<cplx> c(static_cast<std::size_t>(degree + 1));
        for (auto& v : c)
            v = rng.complex_normal();
        double scale = 0.0;
        for (const auto& v : c)
            scale = std::max(scale, std::abs(v));
        const auto roots = polynomial_roots(c);
        REQUIRE(roots.size() == static_cast<std::size_t>(degree));
        for (const cplx& z : roots) {
            // Residual relative to the size of the terms being summed.
            double terms = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k)
                terms += std::abs(c[k]) * std::pow(std::abs(z), static_cast<double>(k));
            CHECK(std::abs(polyval(c, z)) <= 1e-7 * std::max(scale, terms));
        }
    }
}
