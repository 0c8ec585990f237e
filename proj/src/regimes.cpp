#include "carl/regimes.hpp"

#include "carl/errors.hpp"

#include <algorithm>
#include <cmath>

namespace carl {

namespace {

// Slack for comparisons that are exact algebraically but rounded in floating point.
constexpr double kSlack = 1e-12;

bool much_greater(double x, double y, double margin) { return x >= margin * y * (1.0 - kSlack); }
bool much_less(double x, double y, double margin) { return x * margin <= y * (1.0 + kSlack); }

bool near(double a, double b) { return std::abs(a - b) <= kSlack * std::max(1.0, std::abs(b)); }

void check_tau(double tau)
{
    if (!std::isfinite(tau)) throw InvalidParams("tau must be finite");
}

void require_lossless_atoms(const ModelParams& p, const char* what)
{
    if (p.gamma1() != 0.0 || p.gamma2() != 0.0) throw RegimeMismatch(std::string(what) + " assumes gamma1 = gamma2 = 0");
}

} // namespace

std::string to_string(RegimeLabel label)
{
    switch (label) {
    case RegimeLabel::semiclassical_good_cavity: return "semiclassical_good_cavity";
    case RegimeLabel::quantum_good_cavity: return "quantum_good_cavity";
    case RegimeLabel::semiclassical_superradiant: return "semiclassical_superradiant";
    case RegimeLabel::quantum_superradiant: return "quantum_superradiant";
    case RegimeLabel::unclassified: return "unclassified";
    }
    return "unclassified";
}

RegimeLabel classify_regime(const ModelParams& params, double margin)
{
    if (!(margin >= 1.0) || !std::isfinite(margin)) throw InvalidParams("regime margin must be >= 1");
    const double rho = params.rho();
    const double k = params.kappa();
    const double root = std::sqrt(2.0 * k);

    if (much_greater(rho, 1.0, margin) && much_less(k, 1.0, margin)) return RegimeLabel::semiclassical_good_cavity;
    if (much_less(k * k, rho, margin) && rho < 1.0) return RegimeLabel::quantum_good_cavity;
    if (much_greater(rho, root, margin) && root > 1.0) return RegimeLabel::semiclassical_superradiant;
    if (much_greater(k * k, root, margin) && root > rho) return RegimeLabel::quantum_superradiant;
    return RegimeLabel::unclassified;
}

std::array<cd, 2> superradiant_roots(const ModelParams& params)
{
    const cd z{params.delta(), params.kappa()};
    const double inv2 = 1.0 / (params.rho() * params.rho());
    const cd denom = z * z - inv2;
    if (std::abs(denom) == 0.0) throw DegenerateSpectrum("reduced quadratic is singular at z^2 = 1/rho^2");
    const cd b = 1.0 / denom;
    const cd c = z / denom - inv2;

    // Cancellation-free quadratic formula.
    cd sq = std::sqrt(b * b - 4.0 * c);
    if (std::real(std::conj(b) * sq) < 0.0) sq = -sq;
    const cd q = -0.5 * (b + sq);
    std::array<cd, 2> roots{q, q == cd{} ? cd{} : c / q};
    if (roots[1].imag() < roots[0].imag() ||
        (roots[1].imag() == roots[0].imag() && roots[1].real() < roots[0].real()))
        std::swap(roots[0], roots[1]);
    return roots;
}

cd superradiant_residual(const ModelParams& params, cd w)
{
    const cd z{params.delta(), params.kappa()};
    const double inv2 = 1.0 / (params.rho() * params.rho());
    return w * w + (w + z) / (z * z - inv2) - inv2;
}

double superradiant_growth(const ModelParams& params) { return -superradiant_roots(params)[0].imag(); }

Populations sr_semiclassical_populations(const ModelParams& params, double tau, double margin)
{
    check_tau(tau);
    require_lossless_atoms(params, "the semiclassical superradiant limit");
    if (params.delta() != 0.0) throw RegimeMismatch("the semiclassical superradiant limit assumes delta = 0");
    if (classify_regime(params, margin) != RegimeLabel::semiclassical_superradiant)
        throw RegimeMismatch("parameters are not in the semiclassical superradiant regime");

    const double rho = params.rho();
    const double k = params.kappa();
    const double e = std::exp(std::sqrt(2.0 / k) * tau);
    const double base = rho * rho / (16.0 * k);
    return {base * (1.0 + std::sqrt(2.0 * k) / rho) * e, base * e, rho / (8.0 * k * k) * e};
}

QuantumSrPopulations sr_quantum_populations(const ModelParams& params, double tau, double margin)
{
    check_tau(tau);
    require_lossless_atoms(params, "the quantum superradiant limit");
    const double rho = params.rho();
    if (!near(params.delta(), 1.0 / rho)) throw RegimeMismatch("the quantum superradiant limit assumes delta = 1/rho");
    if (classify_regime(params, margin) != RegimeLabel::quantum_superradiant)
        throw RegimeMismatch("parameters are not in the quantum superradiant regime");

    const double k = params.kappa();
    const double e = std::exp(rho / k * tau);
    const double r = rho / std::sqrt(2.0 * k);
    const double s = rho / (2.0 * std::sqrt(k));
    const double half = 0.5 * rho;
    return {{(1.0 + std::pow(r, 4)) * e, std::pow(s, 4) * e, rho / (2.0 * k * k) * e}, half * half * half};
}

double sr_semiclassical_bunching(const ModelParams& params, double tau, double atom_number)
{
    if (!(atom_number > 0.0)) throw InvalidParams("atom number must be positive");
    sr_semiclassical_populations(params, tau);
    const double k = params.kappa();
    return (1.0 + std::sqrt(2.0 * k) / params.rho()) * std::exp(std::sqrt(2.0 / k) * tau) / (4.0 * atom_number);
}

double sr_quantum_bunching(const ModelParams& params, double tau, double atom_number)
{
    if (!(atom_number > 0.0)) throw InvalidParams("atom number must be positive");
    sr_quantum_populations(params, tau);
    const double k = params.kappa();
    const double r = params.rho() / std::sqrt(2.0 * k);
    return (1.0 + 0.5 * std::pow(r, 4)) * std::exp(params.rho() / k * tau) / atom_number;
}

Populations lossless_highgain_populations(const ModelParams& params, double tau, HighGainRegime regime)
{
    check_tau(tau);
    if (params.gamma1() != 0.0 || params.gamma2() != 0.0 || params.kappa() != 0.0)
        throw RegimeMismatch("high-gain populations assume lossless evolution");
    const double rho = params.rho();

    if (regime == HighGainRegime::semiclassical) {
        if (params.delta() != 0.0) throw RegimeMismatch("semiclassical high-gain populations assume delta = 0");
        if (rho < 10.0) throw RegimeMismatch("semiclassical high-gain populations need rho >> 1");
        const double e = std::exp(std::sqrt(3.0) * tau);
        return {(0.5 * rho * rho + rho) / 18.0 * e, rho * rho / 36.0 * e, rho / 18.0 * e};
    }
    if (!near(params.delta(), 1.0 / rho)) throw RegimeMismatch("quantum high-gain populations assume delta = 1/rho");
    if (rho >= 1.0) throw RegimeMismatch("quantum high-gain populations need rho < 1");
    const double e = std::exp(std::sqrt(2.0 * rho) * tau);
    const double c = std::pow(0.5 * rho, 3);
    return {0.25 * (1.0 + c) * e, 0.25 * c * e, 0.25 * e};
}

SaturationEstimate saturation_estimates(const ModelParams& params, double atom_number, double margin)
{
    if (!(atom_number > 0.0) || !std::isfinite(atom_number)) throw InvalidParams("atom number must be positive");
    const double rho = params.rho();
    const double k = params.kappa();

    switch (classify_regime(params, margin)) {
    case RegimeLabel::semiclassical_superradiant: {
        const double fraction = rho * rho / (4.0 * k);
        return {rho * atom_number / (2.0 * k * k), std::min(fraction, 1.0), fraction <= 1.0};
    }
    case RegimeLabel::quantum_superradiant:
        return {rho * atom_number / (4.0 * k * k), std::nullopt, true};
    default:
        throw RegimeMismatch("saturation estimates apply to the superradiant regimes only");
    }
}

} // namespace carl
