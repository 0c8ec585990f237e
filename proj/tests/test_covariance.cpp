#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "carl/covariance.hpp"
#include "carl/errors.hpp"
#include "carl/linalg.hpp"
#include "carl/observables.hpp"
#include "support.hpp"

using namespace carl;

namespace {

const ModelParams kSqueezing(100.0, 3.5, 0.5, 0.5, 0.5);

double min_eig(const Mat3& h) { return linalg::hermitian_eigenvalues(h).front(); }

Mat3 eta() { return Eigen::Vector3cd(-1.0, 1.0, 1.0).asDiagonal(); }

} // namespace

TEST_CASE("noise matrix vanishes at tau = 0 and without losses")
{
    CHECK(testing::max_abs(q_closed_form(make_spectrum(kSqueezing), 0.0).q) == 0.0);
    const Spectrum ideal = make_spectrum(ModelParams(3.0, 0.5, 0.0, 0.0, 0.0));
    for (double tau : {0.5, 2.0, 5.0}) CHECK(testing::max_abs(q_closed_form(ideal, tau).q) == 0.0);
    CHECK(testing::max_abs(q_quadrature(kSqueezing, 0.0).q) == 0.0);
}

TEST_CASE("closed-form noise matrix matches quadrature")
{
    const Mat3 closed = q_closed_form(make_spectrum(kSqueezing), 2.0).q;
    const Mat3 quad = q_quadrature(kSqueezing, 2.0, 1e-12).q;
    CHECK(testing::max_abs(closed - quad) < 1e-8 * std::max(1.0, testing::max_abs(quad)));
}

TEST_CASE("quadrature reproduces the scalar photon-loss integral")
{
    const double k = 0.8;
    Mat3 a = Mat3::Zero();
    a(0, 0) = cd(-0.3, 1.0);
    a(1, 1) = cd(-0.2, -2.0);
    a(2, 2) = -k;
    Mat3 d = Mat3::Zero();
    d(2, 2) = k;
    for (double tau : {0.1, 1.0, 4.0}) {
        const Mat3 q = q_quadrature(a, d, tau, 1e-12).q;
        CHECK(std::abs(q(2, 2) - 0.5 * (1.0 - std::exp(-2.0 * k * tau))) < 1e-11);
        CHECK(std::abs(q(0, 0)) < 1e-300);
    }
}

TEST_CASE("quadrature reports an exhausted refinement budget")
{
    Mat3 a = Mat3::Zero();
    a(0, 0) = cd(-1.0, 3.0);
    a(0, 1) = 2.0;
    CHECK_THROWS_AS(q_quadrature(a, Mat3::Identity(), 1.0, 1e-30), ToleranceNotMet);
}

TEST_CASE("covariance starts from the vacuum")
{
    const CovarianceState c = covariance(make_spectrum(kSqueezing), 0.0);
    CHECK(testing::max_abs(c.c - 0.5 * Mat3::Identity()) < 1e-12);
    CHECK(testing::max_abs(covariance_entrywise(make_spectrum(kSqueezing), 0.0).c - 0.5 * Mat3::Identity()) < 1e-12);
}

TEST_CASE("closed-form covariance matches the moment-equation oracle")
{
    const CovarianceState c = covariance(make_spectrum(kSqueezing), 10.0);
    const CovarianceState o = ode_oracle(kSqueezing, 10.0, oracle_steps(kSqueezing, 10.0));
    CHECK(testing::max_abs(c.c - o.c) < 1e-6 * testing::max_abs(o.c));

    const CovarianceState c2 = covariance(make_spectrum(kSqueezing), 2.0);
    const CovarianceState o2 = ode_oracle(kSqueezing, 2.0, 10000);
    CHECK(testing::max_abs(c2.c - o2.c) < 1e-6 * testing::max_abs(o2.c));
}

TEST_CASE("oracle: homogeneous case and initial value")
{
    const ModelParams p(2.0, 0.4, 0.3, 0.1, 0.6);
    const Mat3 a = drift_matrix(p);
    const CovarianceState o = ode_oracle(a, Mat3::Zero(), 1.5, 4000);
    const Mat3 m = testing::stepped_expm(a, 1.5);
    CHECK(testing::max_abs(o.c - 0.5 * m * m.adjoint()) < 1e-10);
    CHECK(testing::max_abs(ode_oracle(p, 0.0, 10).c - 0.5 * Mat3::Identity()) == 0.0);
    CHECK_THROWS_AS(ode_oracle(p, 1.0, 0), InvalidParams);
}

TEST_CASE("damped populations: derivative equals exp(-2 gamma tau) times the lossless one")
{
    const double g = 0.3;
    const Spectrum lossy = make_spectrum(ModelParams(100.0, 0.2, g, g, g));
    const Spectrum ideal = make_spectrum(ModelParams(100.0, 0.2, 0.0, 0.0, 0.0));
    const double h = 1e-4;
    const auto n = [](const Spectrum& s, double tau) { return occupations(covariance(s, tau).c); };
    for (double tau : {0.5, 1.5, 3.0}) {
        const auto lp = n(lossy, tau + h), lm = n(lossy, tau - h);
        const auto ip = n(ideal, tau + h), im = n(ideal, tau - h);
        for (std::size_t i = 0; i < 3; ++i) {
            const double lhs = (lp[i] - lm[i]) / (2.0 * h);
            const double rhs = std::exp(-2.0 * g * tau) * (ip[i] - im[i]) / (2.0 * h);
            CHECK(std::abs(lhs - rhs) < 1e-4 * std::abs(rhs));
        }
    }
}

TEST_CASE("steady state: stationarity, convergence and squeezing")
{
    const Spectrum s = make_spectrum(kSqueezing);
    const CovarianceState inf = steady_state(s);
    const Mat3 residual = stationarity_residual(drift_matrix(kSqueezing), diffusion_matrix(kSqueezing), inf.c);
    CHECK(testing::max_abs(residual) < 1e-9 * std::max(1.0, testing::max_abs(inf.c)));

    double slowest = -std::numeric_limits<double>::infinity();
    for (const cd& l : s.lambdas) slowest = std::max(slowest, l.real());
    const CovarianceState late = covariance(s, 40.0 / std::abs(slowest));
    CHECK(testing::max_abs(late.c - inf.c) < 1e-4);

    const auto xi = number_squeezing(inf.c, 1, 2);
    REQUIRE(xi.has_value());
    CHECK(std::abs(*xi - 0.7) < 0.05);
}

TEST_CASE("steady state requires decay of every mode")
{
    CHECK_THROWS_AS(steady_state(make_spectrum(ModelParams(100.0, 0.0, 0.0, 0.0, 0.0))), NotStable);
    CHECK_THROWS_AS(steady_state(make_spectrum(ModelParams(1.0, 3.0, 0.0, 0.0, 0.0))), NotStable);
}

TEST_CASE("property: closed form, entrywise form and oracle agree")
{
    testing::Rng rng(404);
    for (int n = 0; n < 60; ++n) {
        const ModelParams p = rng.params();
        const Spectrum s = make_spectrum(p);
        const double tau = rng.uniform(0.0, 5.0);
        const Mat3 c = covariance(s, tau).c;
        const Mat3 e = covariance_entrywise(s, tau).c;
        const Mat3 o = ode_oracle(p, tau, oracle_steps(p, tau)).c;
        const double scale = testing::max_abs(c);
        CHECK(testing::max_abs(c - e) < 1e-9 * scale);
        CHECK(testing::max_abs(c - o) < 1e-6 * scale);
    }
}

TEST_CASE("property: covariance and noise matrix structure")
{
    testing::Rng rng(505);
    for (int n = 0; n < 300; ++n) {
        const ModelParams p = rng.params();
        const Spectrum s = make_spectrum(p);
        const double tau = rng.uniform(0.0, 5.0);
        const Mat3 q = q_closed_form(s, tau).q;
        const Mat3 c = covariance(s, tau).c;
        const double scale = testing::max_abs(c);

        CHECK(linalg::hermitian_defect(c) < 1e-10 * scale);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(c(i, i).imag()) < 1e-10 * scale);
            CHECK(c(i, i).real() >= 0.5 - 1e-9);
        }
        CHECK(min_eig(q) >= -1e-9 * std::max(q.trace().real(), 1e-300));
        // Positivity of normally and anti-normally ordered moments.
        CHECK(min_eig(c - 0.5 * eta()) >= -1e-9 * scale);
        CHECK(min_eig(c + 0.5 * eta()) >= -1e-9 * scale);
    }
}

TEST_CASE("property: equal losses conserve n1 - n2 - n3")
{
    testing::Rng rng(606);
    for (int n = 0; n < 200; ++n) {
        const double g = rng.coin(0.2) ? 0.0 : rng.uniform(0.0, 3.0);
        const ModelParams p(rng.log_uniform(0.1, 200.0), rng.uniform(-10.0, 10.0), g, g, g);
        const Spectrum s = make_spectrum(p);
        for (double tau : {0.3, 1.0, 2.5, 5.0}) {
            const auto occ = occupations(covariance(s, tau).c);
            CHECK(std::abs(occ[0] - occ[1] - occ[2]) <= 1e-8 * std::max(occ[0], 1e-300) + 1e-14);
        }
    }
}

TEST_CASE("evolve routes near-degenerate spectra through quadrature")
{
    const ModelParams p(100.0, 1.8899212591353, 0.3, 0.3, 0.3);
    const Evolution e = evolve(p, 3.0);
    CHECK(e.path == EvolutionPath::quadrature);
    CHECK(e.root_separation < 1e-3);
    const Mat3 o = ode_oracle(p, 3.0, oracle_steps(p, 3.0)).c;
    CHECK(testing::max_abs(e.state.c - o) < 1e-6 * testing::max_abs(o));

    const Evolution regular = evolve(kSqueezing, 3.0);
    CHECK(regular.path == EvolutionPath::closed_form);
    CHECK(testing::max_abs(regular.state.c - covariance(make_spectrum(kSqueezing), 3.0).c) == 0.0);
    CHECK(evolve(kSqueezing, 0.0).state.c == CovarianceState::vacuum().c);
}
