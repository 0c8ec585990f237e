// Shared helpers for the test suites: seeded generators and independent oracles.
#pragma once

#include "carl/model.hpp"
#include "carl/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace testing {

using carl::cd;
using carl::Mat3;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(engine_); }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(engine_); }
    bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }

    // rho in [0.1, 200] (log-uniform), delta in [-10, 10], rates in [0, 5];
    // a quarter of the draws zero one of the rates.
    carl::ModelParams params(double max_rate = 5.0)
    {
        double g1 = uniform(0.0, max_rate), g2 = uniform(0.0, max_rate), k = uniform(0.0, max_rate);
        switch (integer(0, 7)) {
        case 0: g1 = 0.0; break;
        case 1: k = 0.0; break;
        default: break;
        }
        return {log_uniform(0.1, 200.0), uniform(-10.0, 10.0), g1, g2, k};
    }

    Eigen::MatrixXcd hermitian(int n, double scale = 1.0)
    {
        Eigen::MatrixXcd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = cd(uniform(-scale, scale), uniform(-scale, scale));
        return 0.5 * (m + m.adjoint());
    }

private:
    std::mt19937_64 engine_;
};

// Generator written out from the equations of motion for (a1*, a2, a3), independent
// of the library's spectral machinery.
inline Mat3 reference_generator(const carl::ModelParams& p)
{
    const double s = std::sqrt(p.rho() / 2.0);
    const double dm = p.delta() - 1.0 / p.rho();
    const double dp = p.delta() + 1.0 / p.rho();
    const cd i{0.0, 1.0};
    Mat3 a;
    a << -p.gamma1() - i * dm, 0.0, s,
         0.0, -p.gamma2() - i * dp, -s,
         s, s, -p.kappa();
    return a;
}

// exp(A t) as a product of short Taylor steps (no squaring).
inline Mat3 stepped_expm(const Mat3& a, double t)
{
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff() * std::abs(t);
    const int pieces = std::max(1, static_cast<int>(std::ceil(norm / 0.1)));
    const Mat3 h = a * (t / pieces);
    Mat3 step = Mat3::Identity();
    Mat3 term = Mat3::Identity();
    for (int k = 1; k <= 18; ++k) {
        term = term * h / static_cast<double>(k);
        step += term;
    }
    Mat3 out = Mat3::Identity();
    for (int k = 0; k < pieces; ++k) out = out * step;
    return out;
}

// Smallest eigenvalue of a Hermitian matrix from its characteristic polynomial
// (Faddeev-LeVerrier), by Newton iteration started below the Gershgorin bound.
// Newton from the left converges monotonically to the smallest real root.
inline double charpoly_min_eigenvalue(const Eigen::MatrixXcd& h)
{
    const Eigen::Index n = h.rows();
    std::vector<double> c(static_cast<std::size_t>(n + 1));  // x^n + c[n-1] x^(n-1) + ... + c[0]
    c[static_cast<std::size_t>(n)] = 1.0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = h * m + c[static_cast<std::size_t>(n - k + 1)] * Eigen::MatrixXcd::Identity(n, n);
        c[static_cast<std::size_t>(n - k)] = -(h * m).trace().real() / static_cast<double>(k);
    }

    double lower = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double radius = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) radius += std::abs(h(i, j));
        lower = std::min(lower, h(i, i).real() - radius);
    }
    double x = lower - 1.0;
    for (int it = 0; it < 500; ++it) {
        double p = 0.0, dp = 0.0;
        for (Eigen::Index k = n; k >= 0; --k) {
            dp = dp * x + p;
            p = p * x + c[static_cast<std::size_t>(k)];
        }
        if (dp == 0.0) break;
        const double next = x - p / dp;
        if (!(next > x)) break;
        x = next;
    }
    return x;
}

inline double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

inline double rel_diff(const Mat3& a, const Mat3& b) { return max_abs(a - b) / std::max(1.0, max_abs(b)); }

} // namespace testing
