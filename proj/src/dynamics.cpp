#include "carl/dynamics.hpp"

#include "carl/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace carl {

namespace {

double residual_bound(cd w) noexcept
{
    const double r = std::max(1.0, std::abs(w));
    return 1e-10 * r * r * r;
}

cd newton_polish(const CubicCoefficients& cubic, cd w) noexcept
{
    cd best = w;
    double best_residual = std::abs(cubic(w));
    // One step is normally enough; a few more only if the bound is still missed.
    for (int step = 0; step < 5; ++step) {
        const cd slope = cubic.derivative(best);
        if (slope == cd{}) break;
        const cd next = best - cubic(best) / slope;
        const double r = std::abs(cubic(next));
        if (!(r < best_residual)) break;
        best = next;
        best_residual = r;
        if (best_residual < residual_bound(best)) break;
    }
    return best;
}

bool root_before(cd a, cd b) noexcept
{
    const double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a.imag() - b.imag()) > tol) return a.imag() < b.imag();
    return a.real() < b.real();
}

} // namespace

CubicCoefficients characteristic_cubic(const DerivedParams& dp, double rho) noexcept
{
    const cd beta2 = dp.beta * dp.beta;
    return {-dp.alpha, -beta2, dp.alpha * beta2 + 1.0 + kI * rho * dp.gamma_minus};
}

Roots solve_cubic(const CubicCoefficients& cubic)
{
    Mat3 companion = Mat3::Zero();
    companion(0, 0) = -cubic.c2;
    companion(0, 1) = -cubic.c1;
    companion(0, 2) = -cubic.c0;
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;

    Eigen::ComplexEigenSolver<Mat3> solver(companion, /*computeEigenvectors=*/false);
    Roots roots{};
    for (int j = 0; j < 3; ++j) roots[static_cast<std::size_t>(j)] = newton_polish(cubic, solver.eigenvalues()(j));

    // Insertion sort: the tolerant comparison is not a strict weak order.
    for (std::size_t i = 1; i < roots.size(); ++i)
        for (std::size_t j = i; j > 0 && root_before(roots[j], roots[j - 1]); --j)
            std::swap(roots[j], roots[j - 1]);
    return roots;
}

Roots cubic_roots(const DerivedParams& dp, double rho)
{
    return solve_cubic(characteristic_cubic(dp, rho));
}

cd unstable_root(const Roots& roots) noexcept
{
    return *std::min_element(roots.begin(), roots.end(),
                             [](cd a, cd b) { return a.imag() < b.imag(); });
}

double gain(const Roots& roots, double gamma_plus) noexcept
{
    return -unstable_root(roots).imag() - gamma_plus;
}

double min_root_separation(const Roots& r) noexcept
{
    return std::min({std::abs(r[0] - r[1]), std::abs(r[0] - r[2]), std::abs(r[1] - r[2])});
}

double degeneracy_threshold(const Roots& r) noexcept
{
    const double scale = std::max({1.0, std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
    return 1e-8 * scale;
}

Eigensystem eigensystem(const Roots& w, const DerivedParams& dp, double rho)
{
    if (min_root_separation(w) <= degeneracy_threshold(w)) {
        std::ostringstream msg;
        msg << "cubic roots are degenerate (min separation " << min_root_separation(w) << ")";
        throw DegenerateSpectrum(msg.str());
    }

    const double s = std::sqrt(0.5 * rho);
    const cd beta = dp.beta;
    const std::array<cd, 3> norm{1.0 / (w[1] - w[2]), 1.0 / (w[0] - w[2]), 1.0 / (w[0] - w[1])};

    Eigensystem es;
    for (int j = 0; j < 3; ++j) {
        const cd wj = w[static_cast<std::size_t>(j)];
        const cd nj = norm[static_cast<std::size_t>(j)];
        es.s_inverse(0, j) = nj * kI * s * (wj + beta);
        es.s_inverse(1, j) = -nj * kI * s * (wj - beta);
        es.s_inverse(2, j) = nj * (beta * beta - wj * wj);
    }
    // With the normalisation above det = 1 + i rho gamma_minus; rescale to det = 1.
    const cd det = es.s_inverse.determinant();
    es.s_inverse *= std::pow(det, -1.0 / 3.0);
    es.s = es.s_inverse.inverse();
    return es;
}

Spectrum make_spectrum(const ModelParams& params)
{
    const DerivedParams dp = derive(params);
    const Roots w = cubic_roots(dp, params.rho());
    Eigensystem es = eigensystem(w, dp, params.rho());

    Spectrum spec{params, dp, w, {}, {}, std::move(es.s_inverse), std::move(es.s)};
    for (std::size_t j = 0; j < 3; ++j) {
        const std::size_t k = (j + 1) % 3;
        const std::size_t m = (j + 2) % 3;
        spec.lambdas[j] = kI * (w[j] - params.delta()) - dp.gamma_plus;
        spec.deltas[j] = (w[j] - w[k]) * (w[j] - w[m]);
    }
    return spec;
}

PropagatorWeights propagator_weights(const Spectrum& spec) noexcept
{
    const double rho = spec.params.rho();
    const double s = std::sqrt(0.5 * rho);
    const cd alpha = spec.derived.alpha;
    const cd beta = spec.derived.beta;

    PropagatorWeights pw;
    for (std::size_t k = 0; k < 3; ++k) {
        const cd w = spec.omegas[k];
        const cd inv = 1.0 / spec.deltas[k];
        pw.f11[k] = ((w - alpha) * (w + beta) - 0.5 * rho) * inv;
        pw.f22[k] = ((w - alpha) * (w - beta) + 0.5 * rho) * inv;
        pw.f33[k] = (w * w - beta * beta) * inv;
        pw.f12[k] = -0.5 * rho * inv;
        pw.f13[k] = -kI * s * (w + beta) * inv;
        pw.f23[k] = kI * s * (w - beta) * inv;
    }
    return pw;
}

cd evaluate_residues(const std::array<cd, 3>& weights, const std::array<cd, 3>& lambdas, double tau) noexcept
{
    cd sum{};
    for (std::size_t k = 0; k < 3; ++k) sum += weights[k] * std::exp(lambdas[k] * tau);
    return sum;
}

Propagator propagator(const Spectrum& spec, double tau)
{
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidParams("tau must be finite and non-negative");
    if (tau == 0.0) return {0.0, Mat3::Identity()};

    const PropagatorWeights pw = propagator_weights(spec);
    const auto f = [&](const std::array<cd, 3>& weights) {
        return evaluate_residues(weights, spec.lambdas, tau);
    };
    const cd f11 = f(pw.f11), f12 = f(pw.f12), f13 = f(pw.f13);
    const cd f22 = f(pw.f22), f23 = f(pw.f23), f33 = f(pw.f33);

    Propagator p{tau, Mat3{}};
    p.m << f11, f12, f13,
          -f12, f22, f23,
           f13, -f23, f33;
    return p;
}

Mat3 effective_generator(const Spectrum& spec)
{
    const Eigen::Vector3cd lambda(spec.lambdas[0], spec.lambdas[1], spec.lambdas[2]);
    return spec.s_inverse * lambda.asDiagonal() * spec.s;
}

Mat3 drift_matrix(const ModelParams& p)
{
    const DerivedParams dp = derive(p);
    const double s = std::sqrt(0.5 * p.rho());
    Mat3 a;
    a << cd(-p.gamma1(), -dp.delta_minus), 0.0, s,
         0.0, cd(-p.gamma2(), -dp.delta_plus), -s,
         s, s, -p.kappa();
    return a;
}

Mat3 diffusion_matrix(const ModelParams& p)
{
    return Eigen::Vector3cd(p.gamma1(), p.gamma2(), p.kappa()).asDiagonal();
}

} // namespace carl
