#include "carl/model.hpp"

#include "carl/errors.hpp"

#include <cmath>
#include <string>

namespace carl {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) throw InvalidParams(what);
}

} // namespace

ModelParams::ModelParams(double rho, double delta, double gamma1, double gamma2, double kappa)
    : rho_(rho), delta_(delta), gamma1_(gamma1), gamma2_(gamma2), kappa_(kappa)
{
    require(std::isfinite(rho) && std::isfinite(delta) && std::isfinite(gamma1) &&
                std::isfinite(gamma2) && std::isfinite(kappa),
            "model parameters must be finite");
    require(rho > 0.0, "rho must be positive, got " + std::to_string(rho));
    require(gamma1 >= 0.0 && gamma2 >= 0.0 && kappa >= 0.0,
            "decay rates gamma1, gamma2, kappa must be non-negative");
}

DerivedParams derive(const ModelParams& p) noexcept
{
    DerivedParams d{};
    d.gamma_plus = 0.5 * (p.gamma1() + p.gamma2());
    d.gamma_minus = 0.5 * (p.gamma1() - p.gamma2());
    d.delta_plus = p.delta() + 1.0 / p.rho();
    d.delta_minus = p.delta() - 1.0 / p.rho();
    d.alpha = cd(p.delta(), p.kappa() - d.gamma_plus);
    d.beta = cd(1.0 / p.rho(), d.gamma_minus);
    return d;
}

double carl_parameter(const LabParams& lab)
{
    const double coupling = lab.pump_frequency * lab.dipole * lab.dipole * lab.atom_number /
                            (lab.mode_volume * si::hbar * si::vacuum_permittivity *
                             lab.recoil_frequency * lab.recoil_frequency);
    const double pump = lab.rabi_frequency / (2.0 * lab.atomic_detuning);
    return std::cbrt(pump * pump) * std::cbrt(coupling);
}

ModelParams from_lab(const LabParams& lab)
{
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    require(positive(lab.rabi_frequency) && positive(lab.atomic_detuning) &&
                positive(lab.pump_frequency) && positive(lab.recoil_frequency) &&
                positive(lab.atom_number) && positive(lab.mode_volume) && positive(lab.dipole) &&
                positive(lab.cavity_length) && positive(lab.probe_frequency),
            "laboratory parameters must be positive and finite");
    require(lab.mirror_transmission >= 0.0 && lab.mirror_transmission <= 1.0,
            "mirror transmission must lie in [0, 1]");
    require(lab.gamma1_rate >= 0.0 && lab.gamma2_rate >= 0.0, "decoherence rates must be non-negative");

    const double rho = carl_parameter(lab);
    require(std::isfinite(rho) && rho > 0.0, "laboratory input gives a non-positive CARL parameter");

    const double unit = rho * lab.recoil_frequency;
    const double kappa_si = si::speed_of_light * lab.mirror_transmission / (2.0 * lab.cavity_length);
    return ModelParams(rho,
                       (lab.pump_frequency - lab.probe_frequency) / unit,
                       lab.gamma1_rate / unit,
                       lab.gamma2_rate / unit,
                       kappa_si / unit);
}

} // namespace carl
