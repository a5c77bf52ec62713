// numerics.hpp — dense complex linear-algebra kernel shared by all modules.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace anisotrap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Physics-precondition violations (isotropic cycle, state outside the
// labeled families, ...). The CLI maps these to exit code 3.
class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical-convergence failures (step-doubling cap, bisection bracket).
// The CLI maps these to exit code 4.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EigenSystem {
    RealVector values;      // ascending
    ComplexMatrix vectors;  // column k pairs with values[k]
};

// Largest |H(i,j) - conj(H(j,i))| over all entries.
double max_asymmetry(const ComplexMatrix& H);

// Hermitian eigendecomposition. Rejects inputs whose asymmetry exceeds
// `tol` with a diagnostic of the max asymmetry found.
EigenSystem hermitian_eig(const ComplexMatrix& H, double tol = 1e-12);

// U = exp(-i H s) for Hermitian H, via eigendecomposition.
ComplexMatrix unitary_exp(const ComplexMatrix& H, double s);

// <u|v> with conjugation on the first argument.
Complex overlap(const ComplexVector& u, const ComplexVector& v);

// Map a phase to the principal branch (-pi, pi].
double principal_phase(double phase);

}  // namespace anisotrap
