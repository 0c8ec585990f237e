// model.hpp  Dimensionless control parameters of the linearized three-mode CARL model
//
// Time is the scaled interaction time tau = rho * omega_r * t. Every rate stored
// here (gamma1, gamma2, kappa) and the detuning delta are already expressed in
// units of rho * omega_r.

#pragma once

#include "carl/types.hpp"

namespace carl {

class ModelParams {
public:
    // Throws InvalidParams unless rho > 0, all rates >= 0 and everything finite.
    ModelParams(double rho, double delta, double gamma1, double gamma2, double kappa);

    double rho() const noexcept { return rho_; }
    double delta() const noexcept { return delta_; }
    double gamma1() const noexcept { return gamma1_; }
    double gamma2() const noexcept { return gamma2_; }
    double kappa() const noexcept { return kappa_; }

    ModelParams with_rho(double v) const { return {v, delta_, gamma1_, gamma2_, kappa_}; }
    ModelParams with_delta(double v) const { return {rho_, v, gamma1_, gamma2_, kappa_}; }
    ModelParams with_kappa(double v) const { return {rho_, delta_, gamma1_, gamma2_, v}; }
    // Sets gamma1 = gamma2 = v.
    ModelParams with_gamma(double v) const { return {rho_, delta_, v, v, kappa_}; }

    bool lossless() const noexcept { return gamma1_ == 0.0 && gamma2_ == 0.0 && kappa_ == 0.0; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    double rho_;
    double delta_;
    double gamma1_;
    double gamma2_;
    double kappa_;
};

// Auxiliary combinations that appear in the cubic and in the propagator entries.
struct DerivedParams {
    double gamma_plus;   // (gamma1 + gamma2) / 2
    double gamma_minus;  // (gamma1 - gamma2) / 2
    double delta_plus;   // delta + 1/rho
    double delta_minus;  // delta - 1/rho
    cd alpha;            // delta + i (kappa - gamma_plus)
    cd beta;             // 1/rho + i gamma_minus
};

DerivedParams derive(const ModelParams& params) noexcept;

// Laboratory description in SI units. Rates are angular frequencies (rad/s).
struct LabParams {
    double rabi_frequency;       // Omega_0
    double atomic_detuning;      // Delta_0 = omega_p - omega_0
    double pump_frequency;       // omega_p
    double recoil_frequency;     // omega_r = 2 hbar k_p^2 / m
    double atom_number;          // N
    double mode_volume;          // V [m^3]
    double dipole;               // d [C m]
    double cavity_length;        // ring cavity length [m]
    double mirror_transmission;  // T in (0, 1]; 0 is accepted as the perfect-cavity limit
    double probe_frequency;      // omega_s
    double gamma1_rate = 0.0;    // atomic decoherence of mode 1 [1/s]
    double gamma2_rate = 0.0;    // atomic decoherence of mode 2 [1/s]
};

namespace si {
inline constexpr double speed_of_light = 299792458.0;
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double vacuum_permittivity = 8.8541878128e-12;
} // namespace si

// CARL parameter rho = (Omega_0 / 2 Delta_0)^(2/3) (omega_p d^2 N / V hbar eps0 omega_r^2)^(1/3).
double carl_parameter(const LabParams& lab);

// Converts to scaled units: kappa = c T / 2L, then every rate and the detuning
// omega_p - omega_s are divided by rho * omega_r.
ModelParams from_lab(const LabParams& lab);

} // namespace carl
