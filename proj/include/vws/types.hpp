#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace vws {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// Bad input values or shapes.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Request is well formed but the geometry cannot support it
// (too many sources, shrinkage beyond the identifiability bound).
class Infeasible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Table-backed constructions outside the tabulated range.
class UnsupportedSize : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace vws
