#pragma once

#include <string>
#include <vector>

#include "vws/coarray.hpp"
#include "vws/types.hpp"

namespace vws {

enum class Method { Music, RootMusic };

std::string method_name(Method m);
/// Accepts "music"/"vws-ca-music" and "rmusic"/"root-music"/"vws-ca-rmusic".
Method parse_method(const std::string& name);

struct SubspacePair {
    CMatrix signal;  // M x D
    CMatrix noise;   // M x (M - D)
    RVector eigenvalues;  // descending, all M
};

struct Spectrum {
    std::vector<double> grid;
    std::vector<double> values;
};

struct EstimationResult {
    std::vector<double> thetas;  // ascending
    Method method = Method::Music;
    int peaks_found = 0;         // MUSIC: local maxima in the spectrum
    int fill_count = 0;          // MUSIC: estimates taken from non-maxima
    std::vector<double> root_moduli;  // root-MUSIC: |z| of the selected roots
    bool used_outer_roots = false;    // root-MUSIC: took an unpaired root with |z| >= 1
};

inline constexpr double kSpectrumFloor = 1e-18;
inline constexpr int kDefaultGridSize = 2000;
/// Roots closer than this (after reflecting into the unit disk) are treated as
/// one reciprocal pair by root_music.
inline constexpr double kRootPairTolerance = 1e-4;
/// Outer Laurent coefficients below this fraction of the largest one are
/// treated as zero before rooting.
inline constexpr double kNegligibleCoefficient = 1e-12;

/// Splits the eigenvectors by descending eigenvalue: first d -> signal.
/// Throws Infeasible when d >= M.
SubspacePair noise_subspace(const SmoothedMatrix& r, int d);
SubspacePair noise_subspace(const CMatrix& r, int d);

/// g points -1 + 2i/g, i = 0..g-1 (uniform over [-1, 1)).
std::vector<double> uniform_grid(int g);

/// 1 / (a^H Un Un^H a) with a(theta) = exp(j pi m theta), m = 0..M-1.
/// Denominators below kSpectrumFloor are clamped to it.
Spectrum music_spectrum(const CMatrix& noise, const std::vector<double>& grid);

/// Top-d local maxima of the spectrum, topped up from the largest remaining
/// grid values when fewer than d maxima exist.
EstimationResult pick_peaks(const Spectrum& s, int d);

/// Roots the noise-projector polynomial and keeps the d roots closest to the
/// unit circle, one per reciprocal pair (the inside member when the pair is
/// resolved). Choosing a root with |z| >= 1 that has no reflected partner
/// sets used_outer_roots.
EstimationResult root_music(const CMatrix& noise, int d);

/// Laurent coefficients c_k, k = -(M-1)..M-1, stored at index k + M - 1:
/// the sums of the k-th superdiagonals of Un Un^H.
std::vector<cplx> root_music_polynomial(const CMatrix& noise);

/// Full pipeline from a sensor covariance: coarray signal, VWS smoothing,
/// EVD, then the chosen estimator. Grid size is ignored for root-MUSIC.
EstimationResult estimate(const CMatrix& covariance, const ArrayGeometry& geom, int d, int a,
                          Method method, int grid_size = kDefaultGridSize);

}  // namespace vws
