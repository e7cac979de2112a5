#include "vws/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vws/numerics.hpp"

namespace vws {

std::string method_name(Method m)
{
    return m == Method::Music ? "vws-ca-music" : "vws-ca-rmusic";
}

Method parse_method(const std::string& name)
{
    if (name == "music" || name == "vws-ca-music")
        return Method::Music;
    if (name == "rmusic" || name == "root-music" || name == "vws-ca-rmusic")
        return Method::RootMusic;
    throw InvalidArgument("unknown method '" + name + "'");
}

SubspacePair noise_subspace(const CMatrix& r, int d)
{
    const auto m = r.rows();
    if (d < 0 || d >= m)
        throw Infeasible("need fewer sources (" + std::to_string(d) + ") than the window size (" +
                         std::to_string(m) + ")");
    EigenDecomposition evd = hermitian_evd(r);
    return {evd.eigenvectors.leftCols(d), evd.eigenvectors.rightCols(m - d),
            std::move(evd.eigenvalues)};
}

SubspacePair noise_subspace(const SmoothedMatrix& r, int d)
{
    return noise_subspace(r.values, d);
}

std::vector<double> uniform_grid(int g)
{
    if (g < 1)
        throw InvalidArgument("grid needs at least one point");
    std::vector<double> grid(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i)
        grid[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / g;
    return grid;
}

Spectrum music_spectrum(const CMatrix& noise, const std::vector<double>& grid)
{
    if (grid.empty())
        throw InvalidArgument("spectrum grid is empty");
    const auto m = noise.rows();
    Spectrum s{grid, std::vector<double>(grid.size())};
    CVector a(m);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (Eigen::Index k = 0; k < m; ++k)
            a(k) = std::polar(1.0, kPi * static_cast<double>(k) * grid[i]);
        const double denom = (noise.adjoint() * a).squaredNorm();
        s.values[i] = 1.0 / std::max(denom, kSpectrumFloor);
    }
    return s;
}

EstimationResult pick_peaks(const Spectrum& s, int d)
{
    if (d < 1)
        throw InvalidArgument("need at least one source");
    const auto& v = s.values;
    const std::size_t g = v.size();

    std::vector<std::size_t> maxima;
    for (std::size_t i = 0; i < g; ++i) {
        const bool above_left = i == 0 || v[i] > v[i - 1];
        const bool above_right = i + 1 == g || v[i] > v[i + 1];
        if (above_left && above_right)
            maxima.push_back(i);
    }
    // Descending value; equal values keep the smaller angle first.
    auto by_value = [&](std::size_t x, std::size_t y) {
        return v[x] > v[y] || (v[x] == v[y] && x < y);
    };
    std::sort(maxima.begin(), maxima.end(), by_value);

    EstimationResult out;
    out.method = Method::Music;
    out.peaks_found = static_cast<int>(maxima.size());

    std::vector<std::size_t> chosen(maxima.begin(),
                                    maxima.begin() + std::min<std::size_t>(maxima.size(),
                                                                           static_cast<std::size_t>(d)));
    if (chosen.size() < static_cast<std::size_t>(d)) {
        std::vector<char> taken(g, 0);
        for (std::size_t i : chosen)
            taken[i] = 1;
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < g; ++i)
            if (!taken[i])
                rest.push_back(i);
        std::sort(rest.begin(), rest.end(), by_value);
        for (std::size_t k = 0; k < rest.size() && chosen.size() < static_cast<std::size_t>(d); ++k) {
            chosen.push_back(rest[k]);
            ++out.fill_count;
        }
    }

    for (std::size_t i : chosen)
        out.thetas.push_back(s.grid[i]);
    std::sort(out.thetas.begin(), out.thetas.end());
    return out;
}

std::vector<cplx> root_music_polynomial(const CMatrix& noise)
{
    const auto m = noise.rows();
    const CMatrix c = noise * noise.adjoint();
    std::vector<cplx> coeffs(static_cast<std::size_t>(2 * m - 1), cplx(0.0));
    for (Eigen::Index row = 0; row < m; ++row)
        for (Eigen::Index col = 0; col < m; ++col)
            coeffs[static_cast<std::size_t>(col - row + m - 1)] += c(row, col);
    return coeffs;
}

EstimationResult root_music(const CMatrix& noise, int d)
{
    if (d < 1)
        throw InvalidArgument("need at least one source");
    if (noise.rows() < 2)
        throw InvalidArgument("root-MUSIC needs a window of at least 2");

    // |c_-k| = |c_k|, so negligible outer coefficients come in pairs; dropping
    // a pair divides out a root at 0 and one at infinity.
    const std::vector<cplx> coeffs = root_music_polynomial(noise);
    double scale = 0.0;
    for (const cplx& c : coeffs)
        scale = std::max(scale, std::abs(c));
    std::size_t lo = 0, hi = coeffs.size();
    while (hi - lo > 3 && std::abs(coeffs[lo]) <= kNegligibleCoefficient * scale &&
           std::abs(coeffs[hi - 1]) <= kNegligibleCoefficient * scale) {
        ++lo;
        --hi;
    }
    const std::vector<cplx> roots =
        polynomial_roots(std::span<const cplx>(coeffs).subspan(lo, hi - lo));

    auto closeness = [](cplx z) { return std::abs(1.0 - std::abs(z)); };
    auto by_closeness = [&](const cplx& x, const cplx& y) {
        const double cx = closeness(x), cy = closeness(y);
        return cx < cy || (cx == cy && std::arg(x) < std::arg(y));
    };
    // Roots come in pairs (z, 1/conj(z)); the inside member of a pair is always
    // closer to the circle than its partner. A source on the circle is a double
    // root whose halves rounding may put on either side, so a candidate whose
    // inward reflection coincides with an already chosen root is skipped as
    // that root's partner.
    std::vector<cplx> ranked = roots;
    std::sort(ranked.begin(), ranked.end(), by_closeness);
    auto reflect = [](cplx z) { return std::abs(z) > 1.0 ? 1.0 / std::conj(z) : z; };

    EstimationResult out;
    out.method = Method::RootMusic;
    std::vector<std::size_t> chosen;
    auto is_partner = [&](std::size_t i, std::size_t j) {
        return std::abs(reflect(ranked[i]) - reflect(ranked[j])) < kRootPairTolerance;
    };
    for (std::size_t i = 0; i < ranked.size() && chosen.size() < static_cast<std::size_t>(d); ++i) {
        if (std::any_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return is_partner(c, i); }))
            continue;
        chosen.push_back(i);
    }

    // Average each chosen root with its reflected partner. For a resolved pair
    // this returns the inside root; for a split double root it cancels the
    // leading O(sqrt(eps)) split.
    std::vector<cplx> picked;
    for (std::size_t c : chosen) {
        cplx z = ranked[c];
        bool paired = false;
        for (std::size_t j = 0; j < ranked.size(); ++j) {
            if (j != c && is_partner(c, j)) {
                z = (reflect(ranked[c]) + reflect(ranked[j])) / 2.0;
                paired = true;
                break;
            }
        }
        if (!paired && std::abs(z) >= 1.0)
            out.used_outer_roots = true;
        picked.push_back(z);
    }

    for (const cplx& z : picked) {
        // + 0.0 turns a signed zero into +0 so arg(0) is 0, not -pi.
        double theta = std::arg(cplx(z.real() + 0.0, z.imag() + 0.0)) / kPi;
        if (theta >= 1.0)
            theta -= 2.0;
        out.thetas.push_back(theta);
        out.root_moduli.push_back(std::abs(z));
    }
    std::sort(out.thetas.begin(), out.thetas.end());
    return out;
}

EstimationResult estimate(const CMatrix& covariance, const ArrayGeometry& geom, int d, int a,
                          Method method, int grid_size)
{
    const CoarraySignal x = coarray_signal(covariance, geom);
    max_shrinkage(x.udof(), d);  // throws Infeasible when d is too large
    const SmoothedMatrix r = vws_smooth(x, a);
    const SubspacePair sub = noise_subspace(r, d);
    if (method == Method::RootMusic)
        return root_music(sub.noise, d);
    return pick_peaks(music_spectrum(sub.noise, uniform_grid(grid_size)), d);
}

}  // namespace vws
