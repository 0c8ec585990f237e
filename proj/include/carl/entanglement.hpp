// entanglement.hpp  Quadrature covariance, partial-transpose tests and separability classes
//
// Quadratures are ordered (x1, x2, x3, y1, y2, y3) with a_j = (x_j + i y_j) / 2 in units
// where the vacuum covariance is the identity.

#pragma once

#include "carl/covariance.hpp"
#include "carl/model.hpp"
#include "carl/types.hpp"

#include <string>

namespace carl {

struct QuadratureCovariance {
    RMat6 v;
};

// V = 2 L0 [[Re C, -Im C], [Im C, Re C]] L0 with L0 = diag(-1, 1, 1, 1, 1, 1).
QuadratureCovariance build_v(const Mat3& c);

// Symplectic form [[0, -I], [I, 0]].
RMat6 symplectic_form();

// Gamma_j = L_j V L_j - i J, where L_j flips the sign of y_j.
CMat6 gamma_matrix(const QuadratureCovariance& v, int j);

// Gamma_i with the rows and columns of the remaining mode k (x_k and y_k) removed,
// where {i, j, k} = {1, 2, 3}.
CMat4 two_mode_matrix(const QuadratureCovariance& v, int i, int j);

// Smallest eigenvalue of a Hermitian matrix. Throws NotHermitian when
// max|H - H^dagger| exceeds 1e-8 max(1, max|H|).
double min_eigenvalue_hermitian(const Eigen::MatrixXcd& h);

// min eig(V - i J); non-negative for every physical state.
double physicality(const QuadratureCovariance& v);

enum class SeparabilityClass {
    fully_inseparable,
    one_mode_biseparable,
    two_mode_biseparable,
    biseparable_or_separable,
};

struct SeparabilityReport {
    std::array<double, 3> min_eig_gamma;
    std::array<double, 3> min_eig_s;  // S12, S13, S23
    SeparabilityClass label;
    int biseparable_mode;  // 1..3 for one_mode_biseparable, 0 otherwise
    double epsilon;

    // "fully_inseparable", "one_mode_biseparable(2)", ...
    std::string label_string() const;
};

// Sign rule: an eigenvalue is negative when below -epsilon.
// Three negative -> fully inseparable; exactly one non-negative (mode j) -> one-mode
// biseparable in j; exactly two non-negative -> two-mode biseparable; none negative
// -> biseparable or separable.
SeparabilityReport classify(const std::array<double, 3>& min_eig_gamma,
                            const std::array<double, 3>& min_eig_s, double epsilon = 1e-9);

SeparabilityReport separability(const Mat3& c, double epsilon = 1e-9);

enum class IdealRegime { semiclassical, quantum };

struct EtaPair {
    double eta12;
    double eta13;
};

// Large-time limits of min eig S_12 and S_13 for lossless evolution:
// semiclassical (rho >= 10): -rho/(1+rho), -4/(4+rho);
// quantum (rho < 1): -rho^3/(4+rho^3), -16/(16+rho^3).
// Throws RegimeMismatch when rho or the losses do not fit the regime.
EtaPair asymptotic_eta(const ModelParams& params, IdealRegime regime);

// eta_1k from occupations: n1 + nk - sqrt(4 nk + (n1 + nk)^2).
double ideal_eta(double n1, double nk);

} // namespace carl
