// observables.hpp  Populations, number statistics, correlations, squeezing and bunching
//
// Mode indices in the public API are 1-based (1, 2: atomic side modes, 3: cavity).

#pragma once

#include "carl/covariance.hpp"
#include "carl/model.hpp"
#include "carl/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace carl {

// n_i = Re(C_ii) - 1/2. Values in [-1e-9, 0) are clamped to 0.
// Throws NegativeOccupation when C_ii < 1/2 - 1e-6.
std::array<double, 3> occupations(const Mat3& c);

// Gaussian factorisation G_ijkl = C_ki C_lj + C_li C_kj.
cd fourth_order(const Mat3& c, int i, int j, int k, int l);

// sigma^2(n_i) = <n_i^2> - <n_i>^2.
double number_variance(const Mat3& c, int i);

// g2_i = <a_i^dag a_i^dag a_i a_i> / n_i^2; empty when n_i <= 1e-12.
std::optional<double> g2_auto(const Mat3& c, int i);

// 1 + |C_ij|^2 / (n_i n_j). Throws UndefinedCorrelation when n_i or n_j <= 1e-12.
double g2_cross(const Mat3& c, int i, int j);

// xi_ij = sigma^2(n_i - n_j) / (n_i + n_j); empty when n_i + n_j <= 1e-12.
std::optional<double> number_squeezing(const Mat3& c, int i, int j);

// The same ratio from explicit moments: (var_i + var_j - 2 |c_ij|^2) / (n_i + n_j).
std::optional<double> number_squeezing(double n_i, double n_j, double var_i, double var_j, cd c_ij);

// <B^dag B> = (C_11 + C_22 + C_12 + C_21) / N. Throws InvalidParams for N <= 0 and
// ImaginaryResidue if the sum is not real to 1e-9.
double bunching(const Mat3& c, double atom_number);

struct ModeObservables {
    std::array<double, 3> n;
    std::array<double, 3> var_n;
    std::array<std::optional<double>, 3> g2_auto;
    std::array<std::optional<double>, 3> g2_cross;  // (1,2), (1,3), (2,3)
    std::array<std::optional<double>, 3> xi;        // (1,2), (1,3), (2,3)
    double bunching;
};

ModeObservables mode_observables(const Mat3& c, double atom_number);

struct GainPoint {
    double delta;
    double gain;
};

// g = -Im(omega_unstable) - gamma_plus at each detuning, other parameters fixed.
std::vector<GainPoint> gain_curve(const ModelParams& params, const std::vector<double>& deltas);

// Gain of a single parameter point.
double gain_at(const ModelParams& params);

} // namespace carl
