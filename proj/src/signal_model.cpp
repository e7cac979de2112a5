#include "vws/signal_model.hpp"

#include <cmath>
#include <string>

namespace vws {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t master, std::uint64_t axis_index, std::uint64_t trial_index)
{
    return Rng(splitmix64(splitmix64(splitmix64(master) ^ axis_index) ^ trial_index));
}

double Rng::uniform_open0()
{
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

cplx Rng::complex_normal()
{
    // Box-Muller: |z|^2 ~ Exp(1), phase uniform, so E|z|^2 = 1.
    const double radius = std::sqrt(-std::log(uniform_open0()));
    const double phase = 2.0 * kPi * uniform_open0();
    return {radius * std::cos(phase), radius * std::sin(phase)};
}

SourceScene::SourceScene(std::vector<double> thetas, std::vector<double> powers)
    : thetas_(std::move(thetas)), powers_(std::move(powers))
{
    if (thetas_.empty())
        throw InvalidArgument("scene needs at least one source");
    if (thetas_.size() != powers_.size())
        throw InvalidArgument("thetas and powers differ in length");
    for (std::size_t d = 0; d < thetas_.size(); ++d) {
        if (!(thetas_[d] >= -1.0 && thetas_[d] < 1.0))
            throw InvalidArgument("theta " + std::to_string(thetas_[d]) + " outside [-1, 1)");
        if (d > 0 && !(thetas_[d] > thetas_[d - 1]))
            throw InvalidArgument("thetas must be strictly increasing");
        if (!(powers_[d] > 0.0) || !std::isfinite(powers_[d]))
            throw InvalidArgument("source powers must be positive");
    }
}

SourceScene::SourceScene(std::vector<double> thetas)
    : SourceScene(thetas, std::vector<double>(thetas.size(), 1.0))
{
}

CMatrix steering_matrix(std::span<const int> positions, std::span<const double> thetas,
                        PhaseSign sign)
{
    const double s = sign == PhaseSign::Positive ? 1.0 : -1.0;
    CMatrix a(static_cast<Eigen::Index>(positions.size()),
              static_cast<Eigen::Index>(thetas.size()));
    for (Eigen::Index k = 0; k < a.rows(); ++k)
        for (Eigen::Index d = 0; d < a.cols(); ++d)
            a(k, d) = std::polar(1.0, s * kPi * positions[static_cast<std::size_t>(k)] *
                                          thetas[static_cast<std::size_t>(d)]);
    return a;
}

SnapshotSet simulate_snapshots(const SourceScene& scene, const ArrayGeometry& geom,
                               int snapshots, double noise_var, Rng& rng)
{
    if (snapshots < 1)
        throw InvalidArgument("snapshot count must be >= 1");
    if (!(noise_var >= 0.0) || !std::isfinite(noise_var))
        throw InvalidArgument("noise variance must be finite and >= 0");

    const CMatrix a = steering_matrix(geom.positions(), scene.thetas(), PhaseSign::Negative);
    const auto n = a.rows();
    const auto d_count = a.cols();
    const double noise_amp = std::sqrt(noise_var);
    std::vector<double> amp(scene.powers().size());
    for (std::size_t d = 0; d < amp.size(); ++d)
        amp[d] = std::sqrt(scene.powers()[d]);

    CMatrix data(n, snapshots);
    CVector s(d_count);
    for (int t = 0; t < snapshots; ++t) {
        for (Eigen::Index d = 0; d < d_count; ++d)
            s(d) = amp[static_cast<std::size_t>(d)] * rng.complex_normal();
        data.col(t).noalias() = a * s;
        for (Eigen::Index k = 0; k < n; ++k)
            data(k, t) += noise_amp * rng.complex_normal();
    }
    return {geom, std::move(data)};
}

SnapshotSet simulate_snapshots(const SourceScene& scene, const ArrayGeometry& geom,
                               int snapshots, double noise_var, std::uint64_t seed)
{
    Rng rng(seed);
    return simulate_snapshots(scene, geom, snapshots, noise_var, rng);
}

CMatrix exact_covariance(const SourceScene& scene, const ArrayGeometry& geom, double noise_var)
{
    const CMatrix a = steering_matrix(geom.positions(), scene.thetas(), PhaseSign::Negative);
    const Eigen::Map<const RVector> p(scene.powers().data(),
                                      static_cast<Eigen::Index>(scene.powers().size()));
    CMatrix r = a * p.cast<cplx>().asDiagonal() * a.adjoint();
    r.diagonal().array() += noise_var;
    return r;
}

CMatrix sample_covariance(const SnapshotSet& x)
{
    if (x.data.cols() < 1)
        throw InvalidArgument("sample covariance needs at least one snapshot");
    return (x.data * x.data.adjoint()) / static_cast<double>(x.data.cols());
}

double noise_var_from_snr_db(double snr_db)
{
    return std::pow(10.0, -snr_db / 10.0);
}

}  // namespace vws
