#pragma once

#include "types.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace ltieq {

/// Matrix exponential e^{A t} via scaling-and-squaring Pade approximation.
inline Matrix expm(const Matrix& A, double t = 1.0) {
    if (A.rows() != A.cols()) throw ShapeError("expm requires a square matrix");
    if (!all_finite(A)) throw ValueError("expm requires finite input");
    if (A.rows() == 0) return Matrix(0, 0);
    return (A * t).exp();
}

}  // namespace ltieq
