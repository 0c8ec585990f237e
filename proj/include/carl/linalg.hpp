// linalg.hpp  Small dense kernels: matrix exponential, Jacobi eigenvalues, helpers

#pragma once

#include "carl/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace carl::linalg {

// exp(A) by scaling and squaring with a truncated Taylor series. Intended for
// the small generators used here (3x3); accuracy is close to machine precision
// relative to ||exp(A)|| for non-pathological inputs.
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived>& a)
{
    using Plain = typename Derived::PlainObject;
    const Eigen::Index n = a.rows();
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();

    int squarings = 0;
    if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    const Plain scaled = a.derived() / std::ldexp(1.0, squarings);

    Plain result = Plain::Identity(n, n);
    Plain term = Plain::Identity(n, n);
    for (int k = 1; k <= 20; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

// (exp(z) - 1) without cancellation for small |z|.
cd expm1(cd z) noexcept;

// (exp(mu tau) - 1) / mu, i.e. the integral of exp(mu t) over [0, tau]. Below
// |mu| < series_threshold the second-order series tau (1 + mu tau / 2) is used.
cd exp_integral(cd mu, double tau, double series_threshold = 1e-8) noexcept;

// All eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd a);

// Eigenvalues of a Hermitian matrix through the real symmetric embedding
// [[Re H, -Im H], [Im H, Re H]], whose spectrum is that of H with every value doubled.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h);

// Max-abs of H - H^dagger.
double hermitian_defect(const Eigen::MatrixXcd& h);

template <typename Derived>
typename Derived::PlainObject hermitian_part(const Eigen::MatrixBase<Derived>& m)
{
    return (0.5 * (m + m.adjoint())).eval();
}

} // namespace carl::linalg
