#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carl/covariance.hpp"
#include "carl/dynamics.hpp"
#include "carl/errors.hpp"
#include "carl/observables.hpp"
#include "carl/regimes.hpp"
#include "support.hpp"

using namespace carl;

namespace {

const ModelParams kSemiSr(100.0, 0.0, 0.0, 0.0, 50.0);
const ModelParams kQuantumSr(1.0, 1.0, 0.0, 0.0, 50.0);

std::array<double, 3> exact_n(const ModelParams& p, double tau) { return occupations(evolve(p, tau).state.c); }

} // namespace

TEST_CASE("regime labels")
{
    CHECK(classify_regime(ModelParams(100.0, 0.0, 0.0, 0.0, 0.01)) == RegimeLabel::semiclassical_good_cavity);
    CHECK(classify_regime(ModelParams(100.0, 0.0, 0.0, 0.0, 40.0)) == RegimeLabel::semiclassical_superradiant);
    CHECK(classify_regime(ModelParams(0.2, 0.0, 0.0, 0.0, 40.0)) == RegimeLabel::quantum_superradiant);
    CHECK(classify_regime(ModelParams(0.5, 0.0, 0.0, 0.0, 0.01)) == RegimeLabel::quantum_good_cavity);
    CHECK(classify_regime(ModelParams(2.0, 0.0, 0.0, 0.0, 1.0)) == RegimeLabel::unclassified);
    CHECK(classify_regime(kSemiSr) == RegimeLabel::semiclassical_superradiant);
    CHECK(classify_regime(kQuantumSr) == RegimeLabel::quantum_superradiant);
    CHECK(to_string(RegimeLabel::quantum_superradiant) == "quantum_superradiant");
    CHECK_THROWS_AS(classify_regime(kSemiSr, 0.5), InvalidParams);
}

TEST_CASE("property: regime chains are exclusive and stable under a larger margin")
{
    testing::Rng rng(61);
    const auto holds = [](const ModelParams& p, int which, double m) {
        const double rho = p.rho(), k = p.kappa(), r = std::sqrt(2.0 * k);
        switch (which) {
        case 0: return rho >= m && k * m <= 1.0;
        case 1: return k * k * m <= rho && rho < 1.0;
        case 2: return rho >= m * r && r > 1.0;
        default: return k * k >= m * r && r > rho;
        }
    };
    for (int n = 0; n < 5000; ++n) {
        const ModelParams p(rng.log_uniform(1e-3, 1e4), 0.0, 0.0, 0.0, rng.coin(0.1) ? 0.0 : rng.log_uniform(1e-4, 1e4));
        // Below a margin of 2 the good-cavity and superradiant chains can overlap.
        const double margin = rng.uniform(2.0, 20.0);
        int count = 0;
        for (int w = 0; w < 4; ++w) count += holds(p, w, margin) ? 1 : 0;
        CHECK(count <= 1);
        const RegimeLabel a = classify_regime(p, margin);
        const RegimeLabel b = classify_regime(p, 2.0 * margin);
        CHECK((b == a || b == RegimeLabel::unclassified));
    }
}

TEST_CASE("superradiant roots solve the reduced quadratic")
{
    for (const ModelParams& p : {kSemiSr, kQuantumSr, ModelParams(3.0, -0.4, 0.0, 0.0, 7.0)}) {
        for (const cd& w : superradiant_roots(p)) CHECK(std::abs(superradiant_residual(p, w)) < 1e-10);
    }
}

TEST_CASE("superradiant growth rates")
{
    CHECK(std::abs(superradiant_growth(kSemiSr) - 0.1) < 0.015);
    CHECK(std::abs(superradiant_growth(kQuantumSr) - 0.01) < 0.0015);

    // Magnitude against the unstable root of the full cubic.
    for (const ModelParams& p : {kSemiSr, kQuantumSr}) {
        const double full = -unstable_root(cubic_roots(derive(p), p.rho())).imag();
        CHECK(std::abs(superradiant_growth(p) - full) < 0.15 * full);
    }
}

TEST_CASE("semiclassical superradiant populations")
{
    const Populations a = sr_semiclassical_populations(kSemiSr, 30.0);
    const double small = std::sqrt(2.0 * kSemiSr.kappa()) / kSemiSr.rho();
    CHECK(a.n3 / a.n1 == doctest::Approx(2.0 / (100.0 * 50.0) / (1.0 + small)).epsilon(1e-12));
    CHECK(std::abs(a.n3 / a.n1 - 2.0 / (100.0 * 50.0)) < 0.1 * 2.0 / (100.0 * 50.0));

    const auto exact = exact_n(kSemiSr, 30.0);
    CHECK(a.n1 / exact[0] > 0.5);
    CHECK(a.n1 / exact[0] < 2.0);

    const double shift = std::sqrt(50.0 / 2.0) * std::log(4.0);
    const Populations b = sr_semiclassical_populations(kSemiSr, 30.0 + shift);
    CHECK(b.n1 == doctest::Approx(4.0 * a.n1).epsilon(1e-12));
    CHECK(b.n2 == doctest::Approx(4.0 * a.n2).epsilon(1e-12));
    CHECK(b.n3 == doctest::Approx(4.0 * a.n3).epsilon(1e-12));

    CHECK_THROWS_AS(sr_semiclassical_populations(kSemiSr.with_delta(0.1), 1.0), RegimeMismatch);
    CHECK_THROWS_AS(sr_semiclassical_populations(kSemiSr.with_gamma(0.1), 1.0), RegimeMismatch);
    CHECK_THROWS_AS(sr_semiclassical_populations(kQuantumSr.with_delta(0.0), 1.0), RegimeMismatch);
}

TEST_CASE("quantum superradiant populations")
{
    const QuantumSrPopulations a = sr_quantum_populations(kQuantumSr, 100.0);
    CHECK(a.n2_over_n3 == 0.125);
    CHECK(a.n.n2 / a.n.n3 == doctest::Approx(0.125).epsilon(1e-12));

    const auto exact = exact_n(kQuantumSr, 100.0);
    CHECK(a.n.n1 / exact[0] > 0.5);
    CHECK(a.n.n1 / exact[0] < 2.0);

    const double h = 1e-3;
    const double slope =
        (std::log(sr_quantum_populations(kQuantumSr, 50.0 + h).n.n1) - std::log(sr_quantum_populations(kQuantumSr, 50.0 - h).n.n1)) /
        (2.0 * h);
    CHECK(slope == doctest::Approx(1.0 / 50.0).epsilon(1e-8));

    CHECK_THROWS_AS(sr_quantum_populations(kQuantumSr.with_delta(0.0), 1.0), RegimeMismatch);
    CHECK_THROWS_AS(sr_quantum_populations(kSemiSr, 1.0), RegimeMismatch);
}

TEST_CASE("superradiant bunching asymptotes")
{
    const double semi = sr_semiclassical_bunching(kSemiSr, 20.0, 1.0);
    const double exact_semi = bunching(evolve(kSemiSr, 20.0).state.c, 1.0);
    CHECK(std::abs(semi - exact_semi) < 0.2 * exact_semi);

    const double quantum = sr_quantum_bunching(kQuantumSr, 100.0, 1.0);
    const double exact_quantum = bunching(evolve(kQuantumSr, 100.0).state.c, 1.0);
    CHECK(std::abs(quantum - exact_quantum) < 0.2 * exact_quantum);
}

TEST_CASE("lossless high-gain populations")
{
    const ModelParams semi(100.0, 0.0, 0.0, 0.0, 0.0);
    const ModelParams quantum(0.2, 5.0, 0.0, 0.0, 0.0);
    for (double tau : {0.0, 3.0, 6.0}) {
        const Populations s = lossless_highgain_populations(semi, tau, HighGainRegime::semiclassical);
        CHECK(s.n1 == doctest::Approx(s.n2 + s.n3).epsilon(1e-14));
        const Populations q = lossless_highgain_populations(quantum, tau, HighGainRegime::quantum);
        CHECK(q.n1 == doctest::Approx(q.n2 + q.n3).epsilon(1e-14));
    }

    const Populations s6 = lossless_highgain_populations(semi, 6.0, HighGainRegime::semiclassical);
    CHECK(std::abs(s6.n1 / exact_n(semi, 6.0)[0] - 1.0) < 0.3);

    const double slope = std::log(exact_n(quantum, 20.0)[0] / exact_n(quantum, 19.0)[0]);
    CHECK(std::abs(slope - std::sqrt(0.4)) < 0.05 * std::sqrt(0.4));

    CHECK_THROWS_AS(lossless_highgain_populations(semi.with_kappa(0.1), 1.0, HighGainRegime::semiclassical),
                    RegimeMismatch);
    CHECK_THROWS_AS(lossless_highgain_populations(semi, 1.0, HighGainRegime::quantum), RegimeMismatch);
    CHECK_THROWS_AS(lossless_highgain_populations(quantum, 1.0, HighGainRegime::semiclassical), RegimeMismatch);
}

TEST_CASE("saturation estimates")
{
    const SaturationEstimate semi = saturation_estimates(kSemiSr, 1e6);
    CHECK(semi.max_photons == doctest::Approx(2e4));
    REQUIRE(semi.max_atom_fraction.has_value());
    CHECK(*semi.max_atom_fraction == 1.0);
    CHECK_FALSE(semi.valid);

    const SaturationEstimate quantum = saturation_estimates(kQuantumSr, 1e6);
    CHECK(quantum.max_photons == doctest::Approx(100.0));
    CHECK_FALSE(quantum.max_atom_fraction.has_value());
    CHECK(quantum.valid);

    CHECK(saturation_estimates(kSemiSr, 2e6).max_photons == doctest::Approx(2.0 * semi.max_photons));
    CHECK_THROWS_AS(saturation_estimates(ModelParams(100.0, 0.0, 0.0, 0.0, 0.01), 1e6), RegimeMismatch);
}
