#pragma once

#include <span>
#include <vector>

#include "vws/types.hpp"

namespace vws {

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
struct EigenDecomposition {
    RVector eigenvalues;
    CMatrix eigenvectors;  // column i pairs with eigenvalues(i)
};

/// Symmetrizes the input as (A + A^H) / 2 before solving. Throws InvalidArgument
/// for non-square or non-finite input.
EigenDecomposition hermitian_evd(const CMatrix& m);

/// Roots of sum_k coeffs[k] z^k (ascending powers), with multiplicity.
///
/// Trailing zero coefficients are trimmed first. Roots are the eigenvalues of
/// the balanced companion matrix, each polished by a few Newton steps on the
/// original polynomial. Throws InvalidArgument for the zero polynomial or a
/// constant.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs);

/// Horner evaluation, ascending powers.
cplx polyval(std::span<const cplx> coeffs, cplx z);

}  // namespace vws
