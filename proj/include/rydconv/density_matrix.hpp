#pragma once

#include <Eigen/Dense>

#include <complex>

namespace rydconv {

using Complex = std::complex<double>;
using Matrix5c = Eigen::Matrix<Complex, 5, 5>;
using Matrix25c = Eigen::Matrix<Complex, 25, 25>;
using Vector25c = Eigen::Matrix<Complex, 25, 1>;

// 5x5 Hermitian unit-trace state with its validity checks.
struct DensityMatrix {
    Matrix5c rho;

    double trace_error() const { return std::abs(rho.trace() - Complex(1.0, 0.0)); }
    double hermiticity_error() const {
        return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    }
    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Matrix5c> es(0.5 * (rho + rho.adjoint()));
        return es.eigenvalues().minCoeff();
    }
    bool physical(double herm_tol = 1e-12, double trace_tol = 1e-12,
                  double eig_tol = -1e-10) const {
        return hermiticity_error() <= herm_tol && trace_error() <= trace_tol
            && min_eigenvalue() >= eig_tol;
    }
    double population(int level) const { return std::real(rho(level, level)); }
};

} // namespace rydconv
