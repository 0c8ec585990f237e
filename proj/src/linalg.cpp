#include "carl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace carl::linalg {

cd expm1(cd z) noexcept
{
    const double x = z.real();
    const double y = z.imag();
    const double half_sin = std::sin(0.5 * y);
    // exp(x) cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
    const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
    const double im = std::exp(x) * std::sin(y);
    return {re, im};
}

cd exp_integral(cd mu, double tau, double series_threshold) noexcept
{
    if (std::abs(mu) < series_threshold) return tau * (1.0 + 0.5 * mu * tau);
    return expm1(mu * tau) / mu;
}

std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd a)
{
    const Eigen::Index n = a.rows();
    const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
    const double eps = std::numeric_limits<double>::epsilon();

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off == 0.0 || std::sqrt(off) <= eps * eps * scale) break;

        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Off-diagonal element below the rounding level of both diagonals.
                const double g = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
                    std::abs(a(q, q)) + g == std::abs(a(q, q))) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (Eigen::Index r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                    a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                }
            }
        }
    }

    std::vector<double> values(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(values.begin(), values.end());
    return values;
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h)
{
    const Eigen::Index n = h.rows();
    Eigen::MatrixXd embed(2 * n, 2 * n);
    const Eigen::MatrixXcd herm = hermitian_part(h);
    embed.topLeftCorner(n, n) = herm.real();
    embed.topRightCorner(n, n) = -herm.imag();
    embed.bottomLeftCorner(n, n) = herm.imag();
    embed.bottomRightCorner(n, n) = herm.real();

    const std::vector<double> doubled = symmetric_eigenvalues(std::move(embed));
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    // Ascending pairs; take the mean of each pair.
    for (std::size_t i = 0; i + 1 < doubled.size(); i += 2)
        values.push_back(0.5 * (doubled[i] + doubled[i + 1]));
    return values;
}

double hermitian_defect(const Eigen::MatrixXcd& h)
{
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace carl::linalg
