#include "anisotrap/numerics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace anisotrap {

double max_asymmetry(const ComplexMatrix& H)
{
    return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

EigenSystem hermitian_eig(const ComplexMatrix& H, double tol)
{
    if (H.rows() != H.cols() || H.rows() < 1)
        throw std::invalid_argument("hermitian_eig: matrix must be square, dim >= 1");
    const double asym = max_asymmetry(H);
    if (asym > tol) {
        std::ostringstream msg;
        msg << "hermitian_eig: input not Hermitian, max asymmetry " << asym
            << " exceeds tolerance " << tol;
        throw std::invalid_argument(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(H);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("hermitian_eig: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix unitary_exp(const ComplexMatrix& H, double s)
{
    const EigenSystem es = hermitian_eig(H);
    const auto n = H.rows();
    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k)
        phases[k] = std::exp(Complex(0.0, -es.values[k] * s));
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

Complex overlap(const ComplexVector& u, const ComplexVector& v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("overlap: dimension mismatch");
    return u.dot(v);  // Eigen's dot conjugates the first argument
}

double principal_phase(double phase)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double p = std::remainder(phase, two_pi);
    if (p <= -std::numbers::pi)
        p += two_pi;
    return p;
}

}  // namespace anisotrap
