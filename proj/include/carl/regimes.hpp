// regimes.hpp  Regime classification and leading-order asymptotic formulas
//
// Everything here is an explicitly labelled approximation. The exact pipeline
// (dynamics, covariance, observables) never falls back to these values.

#pragma once

#include "carl/model.hpp"
#include "carl/types.hpp"

#include <optional>
#include <string>

namespace carl {

enum class RegimeLabel {
    semiclassical_good_cavity,   // rho >> 1, kappa << 1
    quantum_good_cavity,         // kappa^2 << rho < 1
    semiclassical_superradiant,  // rho >> sqrt(2 kappa) > 1
    quantum_superradiant,        // kappa^2 >> sqrt(2 kappa) > rho
    unclassified,
};

std::string to_string(RegimeLabel label);

// "x >> y" is read as x >= margin * y and "x << y" as x <= y / margin.
// Throws InvalidParams when margin < 1.
RegimeLabel classify_regime(const ModelParams& params, double margin = 10.0);

// Roots of w^2 + (w + z) / (z^2 - 1/rho^2) - 1/rho^2 = 0 with z = delta + i kappa,
// the reduced characteristic equation once the fast cavity root is eliminated.
// Sorted by ascending imaginary part.
std::array<cd, 2> superradiant_roots(const ModelParams& params);

// Residual of the reduced quadratic, scaled by its leading coefficient.
cd superradiant_residual(const ModelParams& params, cd w);

// -Im of the first superradiant root.
double superradiant_growth(const ModelParams& params);

struct Populations {
    double n1;
    double n2;
    double n3;
};

// Semiclassical superradiant limit (delta = 0, gamma = 0, regime iii):
// n1 = rho^2 / (16 kappa) (1 + sqrt(2 kappa) / rho) e^{sqrt(2/kappa) tau},
// n2 = rho^2 / (16 kappa) e^{...}, n3 = rho / (8 kappa^2) e^{...}.
Populations sr_semiclassical_populations(const ModelParams& params, double tau, double margin = 10.0);

struct QuantumSrPopulations {
    Populations n;
    double n2_over_n3;  // (rho / 2)^3
};

// Quantum superradiant limit (delta = 1/rho, gamma = 0, regime iv):
// n1 = (1 + (rho / sqrt(2 kappa))^4) e^{rho tau / kappa},
// n2 = (rho / (2 sqrt(kappa)))^4 e^{...}, n3 = rho / (2 kappa^2) e^{...}.
QuantumSrPopulations sr_quantum_populations(const ModelParams& params, double tau, double margin = 10.0);

// Asymptotic bunching <B^dag B> in the two superradiant limits.
double sr_semiclassical_bunching(const ModelParams& params, double tau, double atom_number);
double sr_quantum_bunching(const ModelParams& params, double tau, double atom_number);

enum class HighGainRegime { semiclassical, quantum };

// Lossless high-gain populations.
// Semiclassical (delta = 0, rho >= 10): (rho^2/2 + rho)/18, rho^2/36, rho/18 times e^{sqrt(3) tau}.
// Quantum (delta = 1/rho, rho < 1): (1 + (rho/2)^3)/4, (rho/2)^3/4, 1/4 times e^{sqrt(2 rho) tau}.
Populations lossless_highgain_populations(const ModelParams& params, double tau, HighGainRegime regime);

struct SaturationEstimate {
    double max_photons;
    std::optional<double> max_atom_fraction;  // clamped to 1
    bool valid;                               // false when the raw fraction exceeds 1
};

// Semiclassical superradiant: (rho N / 2 kappa^2, rho^2 / 4 kappa).
// Quantum superradiant: (rho N / 4 kappa^2, none); the bunching cap is 1/2 there.
SaturationEstimate saturation_estimates(const ModelParams& params, double atom_number, double margin = 10.0);

} // namespace carl
