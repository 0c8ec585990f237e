#include "carl/covariance.hpp"

#include "carl/errors.hpp"
#include "carl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace carl {

namespace {

void check_tau(double tau)
{
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidParams("tau must be finite and non-negative");
}

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

// --- adaptive Simpson on a matrix-valued integrand -------------------------

class NoiseIntegrand {
public:
    NoiseIntegrand(const Mat3& generator, const Mat3& diffusion)
        : generator_(generator), diffusion_(diffusion) {}

    Mat3 operator()(double t)
    {
        ++evaluations;
        const Mat3 m = linalg::expm((generator_ * t).eval());
        return m * diffusion_ * m.adjoint();
    }

    long evaluations = 0;

private:
    Mat3 generator_;
    Mat3 diffusion_;
};

constexpr long kMaxEvaluations = 4'000'000;
constexpr int kMaxDepth = 40;

Mat3 simpson_step(NoiseIntegrand& f, double a, double b, const Mat3& fa, const Mat3& fm,
                  const Mat3& fb, const Mat3& whole, double eps, int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Mat3 flm = f(lm);
    const Mat3 frm = f(rm);
    const Mat3 left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Mat3 right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Mat3 delta = left + right - whole;

    if (max_abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    if (depth >= kMaxDepth || f.evaluations > kMaxEvaluations)
        throw ToleranceNotMet("adaptive Simpson quadrature exceeded its refinement budget");

    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

// --- entrywise route helpers ----------------------------------------------

using Weights = std::array<cd, 3>;

// int_0^tau f_a(t) conj(f_b(t)) dt from residue weights.
cd integrated_product(const Weights& a, const Weights& b, const std::array<cd, 3>& lambdas, double tau)
{
    cd sum{};
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l)
            sum += a[k] * std::conj(b[l]) * linalg::exp_integral(lambdas[k] + std::conj(lambdas[l]), tau);
    return sum;
}

} // namespace

NoiseMatrix q_closed_form(const Spectrum& spec, double tau)
{
    check_tau(tau);
    const Mat3 d = diffusion_matrix(spec.params);
    const Mat3 d_tilde = spec.s * d * spec.s.adjoint();

    Mat3 q_tilde;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const cd mu = spec.lambdas[static_cast<std::size_t>(i)] + std::conj(spec.lambdas[static_cast<std::size_t>(j)]);
            q_tilde(i, j) = d_tilde(i, j) * linalg::exp_integral(mu, tau);
        }
    return {tau, linalg::hermitian_part(spec.s_inverse * q_tilde * spec.s_inverse.adjoint())};
}

NoiseMatrix q_quadrature(const Mat3& generator, const Mat3& diffusion, double tau, double tol)
{
    check_tau(tau);
    if (tau == 0.0 || max_abs(diffusion) == 0.0) return {tau, Mat3::Zero()};
    if (!(tol > 0.0)) throw InvalidParams("quadrature tolerance must be positive");

    NoiseIntegrand f(generator, diffusion);

    // Coarse panels resolve the oscillation and growth scales before adapting.
    const double rate = generator.cwiseAbs().rowwise().sum().maxCoeff();
    const int panels = std::clamp(static_cast<int>(std::ceil(4.0 * tau * std::max(1.0, rate))), 8, 100000);
    const double h = tau / panels;

    std::vector<Mat3> nodes(static_cast<std::size_t>(2 * panels + 1));
    for (int i = 0; i <= 2 * panels; ++i) nodes[static_cast<std::size_t>(i)] = f(0.5 * h * i);

    Mat3 coarse = Mat3::Zero();
    for (int p = 0; p < panels; ++p) {
        const auto i = static_cast<std::size_t>(2 * p);
        coarse += h / 6.0 * (nodes[i] + 4.0 * nodes[i + 1] + nodes[i + 2]);
    }
    const double scale = std::max(max_abs(coarse), 1e-300);
    const double eps_panel = tol * scale / panels;

    Mat3 total = Mat3::Zero();
    for (int p = 0; p < panels; ++p) {
        const auto i = static_cast<std::size_t>(2 * p);
        const double a = p * h;
        const Mat3 whole = h / 6.0 * (nodes[i] + 4.0 * nodes[i + 1] + nodes[i + 2]);
        total += simpson_step(f, a, a + h, nodes[i], nodes[i + 1], nodes[i + 2], whole, eps_panel, 0);
    }
    return {tau, linalg::hermitian_part(total)};
}

NoiseMatrix q_quadrature(const ModelParams& params, double tau, double tol)
{
    return q_quadrature(drift_matrix(params), diffusion_matrix(params), tau, tol);
}

CovarianceState covariance(const Spectrum& spec, double tau)
{
    const NoiseMatrix q = q_closed_form(spec, tau);
    const Mat3 m = propagator(spec, tau).m;
    return {tau, linalg::hermitian_part((q.q + 0.5 * m * m.adjoint()).eval())};
}

CovarianceState covariance_entrywise(const Spectrum& spec, double tau)
{
    check_tau(tau);
    const PropagatorWeights w = propagator_weights(spec);
    const auto& lam = spec.lambdas;
    const double g1 = spec.params.gamma1();
    const double g2 = spec.params.gamma2();
    const double k = spec.params.kappa();

    const auto f = [&](const Weights& a) { return evaluate_residues(a, lam, tau); };
    const cd f11 = f(w.f11), f12 = f(w.f12), f13 = f(w.f13);
    const cd f22 = f(w.f22), f23 = f(w.f23), f33 = f(w.f33);
    const auto P = [&](const Weights& a, const Weights& b) { return integrated_product(a, b, lam, tau); };

    const double q11 = (g1 * P(w.f11, w.f11) + g2 * P(w.f12, w.f12) + k * P(w.f13, w.f13)).real();
    const double q22 = (g1 * P(w.f12, w.f12) + g2 * P(w.f22, w.f22) + k * P(w.f23, w.f23)).real();
    const double q33 = (g1 * P(w.f13, w.f13) + g2 * P(w.f23, w.f23) + k * P(w.f33, w.f33)).real();
    const cd q12 = -g1 * P(w.f11, w.f12) + g2 * P(w.f12, w.f22) + k * P(w.f13, w.f23);
    const cd q13 = g1 * P(w.f11, w.f13) - g2 * P(w.f12, w.f23) + k * P(w.f13, w.f33);
    const cd q23 = -g1 * P(w.f12, w.f13) - g2 * P(w.f22, w.f23) + k * P(w.f23, w.f33);

    const double c11 = q11 + 0.5 * (std::norm(f11) + std::norm(f12) + std::norm(f13));
    const double c22 = q22 + 0.5 * (std::norm(f12) + std::norm(f22) + std::norm(f23));
    const double c33 = q33 + 0.5 * (std::norm(f13) + std::norm(f23) + std::norm(f33));
    const cd c12 = q12 + 0.5 * (-f11 * std::conj(f12) + f12 * std::conj(f22) + f13 * std::conj(f23));
    const cd c13 = q13 + 0.5 * (f11 * std::conj(f13) - f12 * std::conj(f23) + f13 * std::conj(f33));
    const cd c23 = q23 + 0.5 * (-f12 * std::conj(f13) - f22 * std::conj(f23) + f23 * std::conj(f33));

    CovarianceState out{tau, Mat3{}};
    out.c << c11, c12, c13,
             std::conj(c12), c22, c23,
             std::conj(c13), std::conj(c23), c33;
    return out;
}

CovarianceState covariance_quadrature(const ModelParams& params, double tau, double tol)
{
    const NoiseMatrix q = q_quadrature(params, tau, tol);
    const Mat3 m = linalg::expm((drift_matrix(params) * tau).eval());
    return {tau, linalg::hermitian_part((q.q + 0.5 * m * m.adjoint()).eval())};
}

CovarianceState steady_state(const Spectrum& spec)
{
    for (const cd& l : spec.lambdas) {
        if (!(l.real() < 0.0))
            throw NotStable("no stationary state: an eigenvalue has Re(lambda) = " + std::to_string(l.real()));
    }
    const Mat3 d_tilde = spec.s * diffusion_matrix(spec.params) * spec.s.adjoint();
    Mat3 q_tilde;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            q_tilde(i, j) = -d_tilde(i, j) / (spec.lambdas[static_cast<std::size_t>(i)] +
                                              std::conj(spec.lambdas[static_cast<std::size_t>(j)]));
    return {std::numeric_limits<double>::infinity(),
            linalg::hermitian_part((spec.s_inverse * q_tilde * spec.s_inverse.adjoint()).eval())};
}

Mat3 stationarity_residual(const Mat3& generator, const Mat3& diffusion, const Mat3& c)
{
    return generator * c + c * generator.adjoint() + diffusion;
}

CovarianceState ode_oracle(const Mat3& a, const Mat3& d, double tau, int steps)
{
    check_tau(tau);
    if (steps < 1) throw InvalidParams("ode_oracle needs at least one step");

    const auto rhs = [&](const Mat3& c) -> Mat3 { return a * c + c * a.adjoint() + d; };
    const double h = tau / steps;
    Mat3 c = 0.5 * Mat3::Identity();
    for (int n = 0; n < steps; ++n) {
        const Mat3 k1 = rhs(c);
        const Mat3 k2 = rhs(c + 0.5 * h * k1);
        const Mat3 k3 = rhs(c + 0.5 * h * k2);
        const Mat3 k4 = rhs(c + h * k3);
        c += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return {tau, linalg::hermitian_part(c)};
}

CovarianceState ode_oracle(const ModelParams& params, double tau, int steps)
{
    return ode_oracle(drift_matrix(params), diffusion_matrix(params), tau, steps);
}

int oracle_steps(const ModelParams& params, double tau)
{
    const Mat3 a = drift_matrix(params);
    const double rate = std::max(1.0, a.cwiseAbs().rowwise().sum().maxCoeff());
    return std::max(2000, static_cast<int>(std::ceil(400.0 * tau * rate)));
}

namespace {

Evolution checked(Evolution e)
{
    if (!e.state.c.allFinite()) throw ToleranceNotMet("covariance is not finite (overflow at this tau)");
    return e;
}

} // namespace

Evolution evolve(const ModelParams& params, double tau, const EvolveOptions& options)
{
    check_tau(tau);
    const Roots roots = cubic_roots(derive(params), params.rho());
    const double separation = min_root_separation(roots);
    const double scale = degeneracy_threshold(roots) / 1e-8;

    if (tau == 0.0) return {CovarianceState::vacuum(), EvolutionPath::closed_form, separation};

    if (separation >= options.route_separation * scale) {
        try {
            return checked({covariance(make_spectrum(params), tau), EvolutionPath::closed_form, separation});
        } catch (const DegenerateSpectrum&) {
            // fall through to quadrature
        }
    }
    return checked({covariance_quadrature(params, tau, options.quadrature_tol), EvolutionPath::quadrature, separation});
}

} // namespace carl
