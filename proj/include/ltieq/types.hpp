#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ltieq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical policy shared by every operation in the library.
struct ToleranceConfig {
    double tolSpec = 1e-9;      ///< threshold on |Re(lambda)| for "zero real part" (relative to max(1, ||A||))
    double tolRank = 1e-10;     ///< relative SVD rank cutoff
    double tolResidual = 1e-9;  ///< matrix-equation residual acceptance
    int samples = 64;           ///< randomized nonsingularity trials
    std::uint64_t seed = 42;    ///< generator seed for all randomized searches
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergence : NumericalError {
    using NumericalError::NumericalError;
};
struct SwapIllConditioned : NumericalError {
    using NumericalError::NumericalError;
};
struct SpectraOverlap : NumericalError {
    using NumericalError::NumericalError;
};
struct BorderlineSpectrum : NumericalError {
    using NumericalError::NumericalError;
};
struct AdditivityViolation : NumericalError {
    using NumericalError::NumericalError;
};
struct NotObservable : NumericalError {
    using NumericalError::NumericalError;
};
struct NotSISO : NumericalError {
    using NumericalError::NumericalError;
};
struct CenterNotObservable : NumericalError {
    using NumericalError::NumericalError;
};
struct MixedSpectrum : NumericalError {
    using NumericalError::NumericalError;
};
struct NotInCatalog : NumericalError {
    using NumericalError::NumericalError;
};
struct SingularWitness : NumericalError {
    using NumericalError::NumericalError;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValueError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

/// An uncontrolled LTI system with observation: xdot = A x, w = C x.
struct ObservedSystem {
    Matrix A;  ///< n x n
    Matrix C;  ///< p x n

    ObservedSystem() = default;
    ObservedSystem(Matrix a, Matrix c) : A(std::move(a)), C(std::move(c)) { validate(); }

    Index n() const { return A.rows(); }
    Index p() const { return C.rows(); }

    void validate() const {
        if (A.rows() != A.cols())
            throw ShapeError("state matrix A must be square, got " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()));
        if (C.cols() != A.rows())
            throw ShapeError("observation matrix C must have " + std::to_string(A.rows()) + " columns, got " +
                             std::to_string(C.cols()));
        if (C.rows() < 1) throw ShapeError("observation matrix C must have at least one row");
        if (!all_finite(A) || !all_finite(C)) throw ValueError("system matrices must be finite");
    }
};

}  // namespace ltieq
