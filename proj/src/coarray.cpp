#include "vws/coarray.hpp"

#include <string>

namespace vws {

SmoothingPlan SmoothingPlan::make(int g, int a)
{
    if (a < 0)
        throw InvalidArgument("shrinkage a must be >= 0");
    if (g - a < 2)
        throw InvalidArgument("shrinkage a=" + std::to_string(a) +
                              " leaves a window shorter than 2 (g=" + std::to_string(g) + ")");
    return {a, g, g - a, g + a};
}

CMatrix OracleDecomposition::smoothed() const
{
    return (r1 * r1 + r2sq) / static_cast<double>(plan.p);
}

CoarraySignal coarray_signal(const CMatrix& r, const ArrayGeometry& geom)
{
    const auto n = static_cast<Eigen::Index>(geom.size());
    if (r.rows() != n || r.cols() != n)
        throw InvalidArgument("covariance is " + std::to_string(r.rows()) + "x" +
                              std::to_string(r.cols()) + " but the geometry has " +
                              std::to_string(n) + " sensors");

    const Coarray ca = difference_coarray(geom);
    const int lmax = ca.max_contiguous_lag();
    CoarraySignal x{CVector::Zero(ca.udof), ca.g};
    std::vector<int> count(static_cast<std::size_t>(ca.udof), 0);

    const auto& pos = geom.positions();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const int lag = pos[static_cast<std::size_t>(j)] - pos[static_cast<std::size_t>(i)];
            if (lag < -lmax || lag > lmax)
                continue;
            x.values(lag + lmax) += r(i, j);
            ++count[static_cast<std::size_t>(lag + lmax)];
        }
    }
    for (Eigen::Index k = 0; k < x.values.size(); ++k)
        x.values(k) /= static_cast<double>(count[static_cast<std::size_t>(k)]);
    return x;
}

SmoothedMatrix vws_smooth(const CoarraySignal& x, int a)
{
    const SmoothingPlan plan = SmoothingPlan::make(x.g, a);
    const int offset = x.g - 1;
    CMatrix acc = CMatrix::Zero(plan.m, plan.m);
    for (int p = 1; p <= plan.p; ++p) {
        const auto w = x.values.segment(plan.first_lag(p) + offset, plan.m);
        acc.noalias() += w * w.adjoint();
    }
    acc /= static_cast<double>(plan.p);
    return {std::move(acc), plan};
}

OracleDecomposition decompose_oracle(const SourceScene& scene, const Coarray& coarray, int a,
                                     double noise_var)
{
    const SmoothingPlan plan = SmoothingPlan::make(coarray.g, a);
    const auto d_count = static_cast<Eigen::Index>(scene.size());

    std::vector<int> ref_lags(static_cast<std::size_t>(plan.m));
    for (int k = 0; k < plan.m; ++k)
        ref_lags[static_cast<std::size_t>(k)] = k;

    OracleDecomposition out;
    out.plan = plan;
    out.reference = steering_matrix(ref_lags, scene.thetas(), PhaseSign::Positive);
    out.omegas.resize(d_count);
    for (Eigen::Index d = 0; d < d_count; ++d)
        out.omegas(d) = std::polar(1.0, -kPi * scene.thetas()[static_cast<std::size_t>(d)]);

    CVector p(d_count);
    for (Eigen::Index d = 0; d < d_count; ++d)
        p(d) = scene.powers()[static_cast<std::size_t>(d)];

    out.r1 = out.reference * p.asDiagonal() * out.reference.adjoint();
    out.r1.diagonal().array() += noise_var;

    // Unperturbed windows: exponents -a..-1 and g-a..g-1.
    out.b.resize(d_count, 2 * a);
    for (int k = 0; k < 2 * a; ++k) {
        const int exponent = k < a ? k - a : plan.g - a + (k - a);
        for (Eigen::Index d = 0; d < d_count; ++d)
            out.b(d, k) = p(d) * std::pow(out.omegas(d), exponent);
    }
    out.r2sq = out.reference * (out.b * out.b.adjoint()) * out.reference.adjoint();
    return out;
}

int max_shrinkage(int udof, int d)
{
    if (udof < 1 || udof % 2 == 0)
        throw InvalidArgument("udof must be a positive odd integer");
    if (d < 1)
        throw InvalidArgument("source count must be >= 1");
    const int bound = udof - 2 * d - 1;
    if (bound < 0)
        throw Infeasible(std::to_string(d) + " sources exceed what udof=" +
                         std::to_string(udof) + " can identify");
    return bound / 2;
}

int numerical_rank(const CMatrix& m, double rel_tol)
{
    if (m.size() == 0)
        return 0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const RVector& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0))
            ++rank;
    return rank;
}

}  // namespace vws
