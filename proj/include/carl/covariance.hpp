// covariance.hpp  Noise matrix Q(tau), covariance C(tau) = Q + M M^dagger / 2 and its oracles
//
// C_ij = <(u_i - <u_i>)(u_j - <u_j>)*> (symmetric ordering) in the basis
// u = (a1*, a2, a3), evolved from the three-mode vacuum C(0) = I/2.

#pragma once

#include "carl/dynamics.hpp"
#include "carl/types.hpp"

namespace carl {

struct NoiseMatrix {
    double tau;
    Mat3 q;
};

struct CovarianceState {
    double tau;
    Mat3 c;

    static CovarianceState vacuum() { return {0.0, 0.5 * Mat3::Identity()}; }
};

// Q = S^-1 Qt (S^-1)^dagger with Qt_ij = Dt_ij (exp((l_i + l_j*) tau) - 1) / (l_i + l_j*)
// and Dt = S D S^dagger. Vanishing denominators (below 1e-8) use the series limit.
NoiseMatrix q_closed_form(const Spectrum& spec, double tau);

// Adaptive composite Simpson quadrature of int_0^tau exp(A t) D exp(A t)^dagger dt,
// with exp(A t) from linalg::expm. `tol` is relative to the size of the result.
// Throws ToleranceNotMet when the refinement budget is exhausted.
NoiseMatrix q_quadrature(const Mat3& generator, const Mat3& diffusion, double tau, double tol = 1e-11);
NoiseMatrix q_quadrature(const ModelParams& params, double tau, double tol = 1e-11);

// Matrix route: Q from q_closed_form plus M M^dagger / 2 from the residue propagator.
CovarianceState covariance(const Spectrum& spec, double tau);

// Entry-by-entry route: each C_ij written in terms of products f_ab f_cd* of the
// propagator entries, with the time integrals of those products done analytically
// from the residue weights. Independent of S, S^-1 and of q_closed_form.
CovarianceState covariance_entrywise(const Spectrum& spec, double tau);

// Quadrature route: works for any generator, including degenerate spectra.
CovarianceState covariance_quadrature(const ModelParams& params, double tau, double tol = 1e-11);

// C(inf) = Q(inf) = S^-1 [-Dt_ij / (l_i + l_j*)] (S^-1)^dagger.
// Throws NotStable unless Re(lambda_j) < 0 for every j.
CovarianceState steady_state(const Spectrum& spec);

// A C + C A^dagger + D; vanishes at a stationary covariance.
Mat3 stationarity_residual(const Mat3& generator, const Mat3& diffusion, const Mat3& c);

// Classical RK4 on dC/dtau = A C + C A^dagger + D from C(0) = I/2 with `steps` fixed steps.
CovarianceState ode_oracle(const Mat3& generator, const Mat3& diffusion, double tau, int steps);
CovarianceState ode_oracle(const ModelParams& params, double tau, int steps);

// A step count satisfying steps >= 100 tau max(1, max|lambda|), with some headroom.
int oracle_steps(const ModelParams& params, double tau);

enum class EvolutionPath { closed_form, quadrature };

struct EvolveOptions {
    // Roots closer than route_separation * max(1, max|omega|) go to quadrature:
    // the residue denominators amplify rounding by roughly 1/separation^2.
    double route_separation = 1e-3;
    double quadrature_tol = 1e-11;
};

struct Evolution {
    CovarianceState state;
    EvolutionPath path;
    double root_separation;
};

// C(tau) by the closed form when the spectrum is well separated, otherwise by quadrature.
// Throws ToleranceNotMet when the result overflows.
Evolution evolve(const ModelParams& params, double tau, const EvolveOptions& options = {});

} // namespace carl
