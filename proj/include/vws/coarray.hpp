#pragma once

#include <vector>

#include "vws/geometry.hpp"
#include "vws/signal_model.hpp"
#include "vws/types.hpp"

namespace vws {

/// Redundancy-averaged covariance sequence over the hole-free lags
/// -(g-1)..(g-1). values(i) holds lag i - (g-1).
struct CoarraySignal {
    CVector values;
    int g = 0;

    int udof() const { return 2 * g - 1; }
    cplx at_lag(int lag) const { return values(lag + g - 1); }
};

/// Window layout for variable-window-size smoothing: window size m = g - a,
/// window count p = g + a.
struct SmoothingPlan {
    int a = 0;
    int g = 0;
    int m = 0;
    int p = 0;

    /// Throws InvalidArgument when a < 0 or the window would be shorter than 2.
    static SmoothingPlan make(int g, int a);
    int udof() const { return 2 * g - 1; }
    /// First lag covered by window `index` (1-based): a - index + 1.
    int first_lag(int index) const { return a - index + 1; }
};

struct SmoothedMatrix {
    CMatrix values;
    SmoothingPlan plan;
};

/// Population-level split of the smoothed matrix into
/// (1/P) (R1^2 + R2sq), R1 = A_r diag(p) A_r^H + s2 I, R2sq = A_r B B^H A_r^H.
struct OracleDecomposition {
    CMatrix r1;
    CMatrix r2sq;
    CMatrix b;            // D x 2a
    CVector omegas;       // exp(-j pi theta_d)
    CMatrix reference;    // A_r, steering over lags 0..m-1
    SmoothingPlan plan;

    CMatrix smoothed() const;
};

/// Averages R(i, j) over all sensor pairs with n_j - n_i = lag, for every lag of
/// the contiguous segment. Lags outside it are dropped.
CoarraySignal coarray_signal(const CMatrix& r, const ArrayGeometry& geom);

/// (1/P) sum_p w_p w_p^H with window p (1-based) covering lags a-p+1 .. a-p+M.
/// a = 0 is the fixed-window coarray smoothing.
SmoothedMatrix vws_smooth(const CoarraySignal& x, int a);

OracleDecomposition decompose_oracle(const SourceScene& scene, const Coarray& coarray, int a,
                                     double noise_var);

/// Largest a satisfying a < (udof + 1 - 2d) / 2. Throws Infeasible when no
/// non-negative a does.
int max_shrinkage(int udof, int d);

/// Numerical rank: singular values above rel_tol * largest singular value.
int numerical_rank(const CMatrix& m, double rel_tol);

}  // namespace vws
