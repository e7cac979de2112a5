#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "vws/geometry.hpp"
#include "vws/types.hpp"

namespace vws {

/// Seedable generator with a fixed stream-splitting rule.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Gaussian variates are produced here rather than through
/// std::normal_distribution (whose algorithm is implementation-defined), so a
/// given seed yields the same draws with any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream for one Monte Carlo trial:
    /// seed = mix(mix(mix(master) ^ axis_index) ^ trial_index), mix = splitmix64.
    static Rng stream(std::uint64_t master, std::uint64_t axis_index, std::uint64_t trial_index);

    /// Uniform on (0, 1], 53-bit resolution.
    double uniform_open0();

    /// Circular complex Gaussian with unit variance: (g1 + j g2) / sqrt(2).
    cplx complex_normal();

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Far-field narrowband sources. Thetas are sines of the arrival angles.
class SourceScene {
public:
    /// Throws InvalidArgument unless thetas are strictly increasing in [-1, 1)
    /// and powers are positive with matching length.
    SourceScene(std::vector<double> thetas, std::vector<double> powers);
    /// Unit-power sources.
    explicit SourceScene(std::vector<double> thetas);

    const std::vector<double>& thetas() const { return thetas_; }
    const std::vector<double>& powers() const { return powers_; }
    std::size_t size() const { return thetas_.size(); }

private:
    std::vector<double> thetas_;
    std::vector<double> powers_;
};

enum class PhaseSign { Negative, Positive };

/// Entry (k, d) = exp(sign * j * pi * positions[k] * thetas[d]).
/// Physical arrays use Negative, coarray manifolds use Positive.
CMatrix steering_matrix(std::span<const int> positions, std::span<const double> thetas,
                        PhaseSign sign);

/// Sensors x time snapshot matrix together with the array it was taken on.
struct SnapshotSet {
    ArrayGeometry geometry;
    CMatrix data;

    std::size_t snapshots() const { return static_cast<std::size_t>(data.cols()); }
};

/// x(t) = A s(t) + n(t). For each snapshot the D source amplitudes are drawn
/// first, then the N noise samples, all from `rng` in that order.
SnapshotSet simulate_snapshots(const SourceScene& scene, const ArrayGeometry& geom,
                               int snapshots, double noise_var, Rng& rng);
SnapshotSet simulate_snapshots(const SourceScene& scene, const ArrayGeometry& geom,
                               int snapshots, double noise_var, std::uint64_t seed);

/// A diag(p) A^H + noise_var * I.
CMatrix exact_covariance(const SourceScene& scene, const ArrayGeometry& geom, double noise_var);

/// (1/T) X X^H.
CMatrix sample_covariance(const SnapshotSet& x);

/// Noise variance for unit-power sources at the given SNR in dB.
double noise_var_from_snr_db(double snr_db);

}  // namespace vws
