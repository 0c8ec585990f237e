#include "carl/entanglement.hpp"

#include "carl/errors.hpp"
#include "carl/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace carl {

namespace {

void check_mode(int j)
{
    if (j < 1 || j > 3) throw InvalidParams("mode index must be 1, 2 or 3, got " + std::to_string(j));
}

} // namespace

QuadratureCovariance build_v(const Mat3& c)
{
    RMat6 block;
    block.topLeftCorner<3, 3>() = c.real();
    block.topRightCorner<3, 3>() = -c.imag();
    block.bottomLeftCorner<3, 3>() = c.imag();
    block.bottomRightCorner<3, 3>() = c.real();

    Eigen::Matrix<double, 6, 1> l0 = Eigen::Matrix<double, 6, 1>::Ones();
    l0(0) = -1.0;
    RMat6 v = 2.0 * l0.asDiagonal() * block * l0.asDiagonal();
    return {0.5 * (v + v.transpose())};
}

RMat6 symplectic_form()
{
    RMat6 j = RMat6::Zero();
    j.topRightCorner<3, 3>() = -Eigen::Matrix3d::Identity();
    j.bottomLeftCorner<3, 3>() = Eigen::Matrix3d::Identity();
    return j;
}

CMat6 gamma_matrix(const QuadratureCovariance& v, int j)
{
    check_mode(j);
    Eigen::Matrix<double, 6, 1> flip = Eigen::Matrix<double, 6, 1>::Ones();
    flip(2 + j) = -1.0;
    const RMat6 transposed = flip.asDiagonal() * v.v * flip.asDiagonal();
    return transposed.cast<cd>() - kI * symplectic_form().cast<cd>();
}

CMat4 two_mode_matrix(const QuadratureCovariance& v, int i, int j)
{
    check_mode(i);
    check_mode(j);
    if (i == j) throw InvalidParams("two_mode_matrix needs two distinct modes");
    const int k = 6 - i - j;

    const CMat6 g = gamma_matrix(v, i);
    std::array<Eigen::Index, 4> keep{};
    std::size_t n = 0;
    for (Eigen::Index r = 0; r < 6; ++r)
        if (r != k - 1 && r != k + 2) keep[n++] = r;

    CMat4 s;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            s(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g(keep[a], keep[b]);
    return s;
}

double min_eigenvalue_hermitian(const Eigen::MatrixXcd& h)
{
    if (h.rows() != h.cols() || h.rows() == 0) throw InvalidParams("expected a non-empty square matrix");
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (linalg::hermitian_defect(h) > 1e-8 * scale) throw NotHermitian("matrix is not Hermitian within 1e-8");
    return linalg::hermitian_eigenvalues(h).front();
}

double physicality(const QuadratureCovariance& v)
{
    const CMat6 m = v.v.cast<cd>() - kI * symplectic_form().cast<cd>();
    return min_eigenvalue_hermitian(m);
}

std::string SeparabilityReport::label_string() const
{
    switch (label) {
    case SeparabilityClass::fully_inseparable: return "fully_inseparable";
    case SeparabilityClass::one_mode_biseparable:
        return "one_mode_biseparable(" + std::to_string(biseparable_mode) + ")";
    case SeparabilityClass::two_mode_biseparable: return "two_mode_biseparable";
    case SeparabilityClass::biseparable_or_separable: return "biseparable_or_separable";
    }
    return "unknown";
}

SeparabilityReport classify(const std::array<double, 3>& min_eig_gamma,
                            const std::array<double, 3>& min_eig_s, double epsilon)
{
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidParams("epsilon must be finite and >= 0");
    SeparabilityReport r{min_eig_gamma, min_eig_s, SeparabilityClass::biseparable_or_separable, 0, epsilon};

    int positive = 0;
    int positive_mode = 0;
    for (int j = 0; j < 3; ++j) {
        if (min_eig_gamma[static_cast<std::size_t>(j)] >= -epsilon) {
            ++positive;
            positive_mode = j + 1;
        }
    }
    switch (positive) {
    case 0: r.label = SeparabilityClass::fully_inseparable; break;
    case 1:
        r.label = SeparabilityClass::one_mode_biseparable;
        r.biseparable_mode = positive_mode;
        break;
    case 2: r.label = SeparabilityClass::two_mode_biseparable; break;
    default: r.label = SeparabilityClass::biseparable_or_separable; break;
    }
    return r;
}

SeparabilityReport separability(const Mat3& c, double epsilon)
{
    const QuadratureCovariance v = build_v(c);
    std::array<double, 3> gammas{};
    for (int j = 1; j <= 3; ++j) gammas[static_cast<std::size_t>(j - 1)] = min_eigenvalue_hermitian(gamma_matrix(v, j));
    const std::array<double, 3> s{
        min_eigenvalue_hermitian(two_mode_matrix(v, 1, 2)),
        min_eigenvalue_hermitian(two_mode_matrix(v, 1, 3)),
        min_eigenvalue_hermitian(two_mode_matrix(v, 2, 3)),
    };
    return classify(gammas, s, epsilon);
}

EtaPair asymptotic_eta(const ModelParams& params, IdealRegime regime)
{
    if (params.gamma1() != 0.0 || params.gamma2() != 0.0 || params.kappa() != 0.0)
        throw RegimeMismatch("asymptotic eta values assume lossless evolution");
    const double rho = params.rho();
    if (regime == IdealRegime::semiclassical) {
        if (rho < 10.0) throw RegimeMismatch("semiclassical asymptotics need rho >> 1");
        return {-rho / (1.0 + rho), -4.0 / (4.0 + rho)};
    }
    if (rho >= 1.0) throw RegimeMismatch("quantum asymptotics need rho < 1");
    const double r3 = rho * rho * rho;
    return {-r3 / (4.0 + r3), -16.0 / (16.0 + r3)};
}

double ideal_eta(double n1, double nk)
{
    const double s = n1 + nk;
    return s - std::sqrt(4.0 * nk + s * s);
}

} // namespace carl
