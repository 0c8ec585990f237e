// dynamics.hpp  Characteristic cubic, spectral decomposition and the closed-form propagator
//
// The three roots omega_j of
//     [omega - alpha] [omega^2 - beta^2] + 1 + i rho gamma_minus = 0
// give the eigenvalues lambda_j = i (omega_j - delta) - gamma_plus of the drift
// generator, and the propagator entries f_ij(tau) are residue sums over the roots.

#pragma once

#include "carl/model.hpp"
#include "carl/types.hpp"

namespace carl {

// Monic cubic omega^3 + c2 omega^2 + c1 omega + c0.
struct CubicCoefficients {
    cd c2;
    cd c1;
    cd c0;

    cd operator()(cd w) const noexcept { return ((w + c2) * w + c1) * w + c0; }
    cd derivative(cd w) const noexcept { return (3.0 * w + 2.0 * c2) * w + c1; }
};

CubicCoefficients characteristic_cubic(const DerivedParams& dp, double rho) noexcept;

// Companion-matrix eigenvalues followed by Newton polishing. Roots are sorted
// by ascending imaginary part, ties (within 1e-12 relative) by ascending real part.
Roots solve_cubic(const CubicCoefficients& cubic);

Roots cubic_roots(const DerivedParams& dp, double rho);

// Root with the smallest imaginary part. It only drives an instability when gain() > 0.
cd unstable_root(const Roots& roots) noexcept;

// Exponential gain g = -Im(omega_unstable) - gamma_plus.
double gain(const Roots& roots, double gamma_plus) noexcept;

double min_root_separation(const Roots& roots) noexcept;

// Roots closer than this are rejected by eigensystem(): 1e-8 max(1, max|omega|).
double degeneracy_threshold(const Roots& roots) noexcept;

struct Eigensystem {
    Mat3 s_inverse;  // columns are right eigenvectors a_j, normalised so det = 1
    Mat3 s;          // inverse of s_inverse
};

// Throws DegenerateSpectrum when two roots coincide within degeneracy_threshold().
Eigensystem eigensystem(const Roots& roots, const DerivedParams& dp, double rho);

struct Spectrum {
    ModelParams params;
    DerivedParams derived;
    Roots omegas;
    std::array<cd, 3> lambdas;  // i (omega_j - delta) - gamma_plus
    std::array<cd, 3> deltas;   // (omega_j - omega_k)(omega_j - omega_m)
    Mat3 s_inverse;
    Mat3 s;
};

// Full spectral data for a parameter point. Throws DegenerateSpectrum.
Spectrum make_spectrum(const ModelParams& params);

// Residue weights: f_ij(tau) = sum_k weight[k] * exp(lambda_k tau).
struct PropagatorWeights {
    std::array<cd, 3> f11, f12, f13, f22, f23, f33;
};

PropagatorWeights propagator_weights(const Spectrum& spec) noexcept;

// M(tau) with the layout
//     [[ f11,  f12, f13],
//      [-f12,  f22, f23],
//      [ f13, -f23, f33]]
struct Propagator {
    double tau;
    Mat3 m;

    cd f11() const { return m(0, 0); }
    cd f12() const { return m(0, 1); }
    cd f13() const { return m(0, 2); }
    cd f22() const { return m(1, 1); }
    cd f23() const { return m(1, 2); }
    cd f33() const { return m(2, 2); }
};

Propagator propagator(const Spectrum& spec, double tau);

// Evaluates a residue sum at tau.
cd evaluate_residues(const std::array<cd, 3>& weights, const std::array<cd, 3>& lambdas, double tau) noexcept;

// S^-1 diag(lambda) S, the generator whose exponential is M(tau).
Mat3 effective_generator(const Spectrum& spec);

// The drift generator written directly from the model parameters, for u = (a1*, a2, a3):
//     [[-gamma1 - i delta_minus, 0,                       sqrt(rho/2)],
//      [0,                       -gamma2 - i delta_plus, -sqrt(rho/2)],
//      [sqrt(rho/2),             sqrt(rho/2),            -kappa      ]]
// It needs no eigen-decomposition, so it also serves degenerate spectra.
Mat3 drift_matrix(const ModelParams& params);

// diag(gamma1, gamma2, kappa)
Mat3 diffusion_matrix(const ModelParams& params);

} // namespace carl
