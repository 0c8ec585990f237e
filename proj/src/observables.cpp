#include "carl/observables.hpp"

#include "carl/dynamics.hpp"
#include "carl/errors.hpp"

#include <cmath>
#include <string>

namespace carl {

namespace {

constexpr double kOccupationFloor = 1e-12;
constexpr double kResidue = 1e-9;

Eigen::Index index_of(int mode)
{
    if (mode < 1 || mode > 3) throw InvalidParams("mode index must be 1, 2 or 3, got " + std::to_string(mode));
    return mode - 1;
}

// Same factorisation as fourth_order() on the normally ordered covariance N = C - I/2.
// Using N avoids the cancellation in G_iiii - 2 C_ii + 1/2 when n_i is small.
double normal_pair(const Mat3& c, Eigen::Index i, Eigen::Index j)
{
    const double ni = c(i, i).real() - 0.5;
    const double nj = c(j, j).real() - 0.5;
    return i == j ? 2.0 * ni * ni : ni * nj + std::norm(c(i, j));
}

} // namespace

std::array<double, 3> occupations(const Mat3& c)
{
    std::array<double, 3> n{};
    for (int i = 0; i < 3; ++i) {
        const double v = c(i, i).real() - 0.5;
        if (v < -1e-6)
            throw NegativeOccupation("C_" + std::to_string(i + 1) + std::to_string(i + 1) +
                                     " is below the vacuum floor 1/2");
        n[static_cast<std::size_t>(i)] = v < 0.0 ? 0.0 : v;
    }
    return n;
}

cd fourth_order(const Mat3& c, int i, int j, int k, int l)
{
    const auto I = index_of(i), J = index_of(j), K = index_of(k), L = index_of(l);
    return c(K, I) * c(L, J) + c(L, I) * c(K, J);
}

double number_variance(const Mat3& c, int i)
{
    const auto I = index_of(i);
    const double n = occupations(c)[static_cast<std::size_t>(I)];
    // <n^2> = <a^dag a^dag a a> + <n>
    return normal_pair(c, I, I) + n - n * n;
}

std::optional<double> g2_auto(const Mat3& c, int i)
{
    const auto I = index_of(i);
    const double n = occupations(c)[static_cast<std::size_t>(I)];
    if (n <= kOccupationFloor) return std::nullopt;
    return normal_pair(c, I, I) / (n * n);
}

double g2_cross(const Mat3& c, int i, int j)
{
    const auto I = index_of(i), J = index_of(j);
    const auto n = occupations(c);
    const double ni = n[static_cast<std::size_t>(I)];
    const double nj = n[static_cast<std::size_t>(J)];
    if (ni <= kOccupationFloor || nj <= kOccupationFloor)
        throw UndefinedCorrelation("g2 cross correlation needs both occupations above 1e-12");
    return 1.0 + std::norm(c(I, J)) / (ni * nj);
}

std::optional<double> number_squeezing(double n_i, double n_j, double var_i, double var_j, cd c_ij)
{
    const double total = n_i + n_j;
    if (total <= kOccupationFloor) return std::nullopt;
    return (var_i + var_j - 2.0 * std::norm(c_ij)) / total;
}

std::optional<double> number_squeezing(const Mat3& c, int i, int j)
{
    const auto I = index_of(i), J = index_of(j);
    const auto n = occupations(c);
    return number_squeezing(n[static_cast<std::size_t>(I)], n[static_cast<std::size_t>(J)],
                            number_variance(c, i), number_variance(c, j), c(I, J));
}

double bunching(const Mat3& c, double atom_number)
{
    if (!(atom_number > 0.0) || !std::isfinite(atom_number))
        throw InvalidParams("atom number must be positive and finite");
    const cd sum = c(0, 0) + c(1, 1) + c(0, 1) + c(1, 0);
    if (std::abs(sum.imag()) > kResidue * std::max(1.0, std::abs(sum)))
        throw ImaginaryResidue("bunching has an imaginary part " + std::to_string(sum.imag()));
    return sum.real() / atom_number;
}

ModeObservables mode_observables(const Mat3& c, double atom_number)
{
    ModeObservables out{};
    out.n = occupations(c);
    for (int i = 1; i <= 3; ++i) {
        out.var_n[static_cast<std::size_t>(i - 1)] = number_variance(c, i);
        out.g2_auto[static_cast<std::size_t>(i - 1)] = g2_auto(c, i);
    }
    constexpr std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {1, 3}, {2, 3}}};
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        if (out.n[static_cast<std::size_t>(i - 1)] > kOccupationFloor &&
            out.n[static_cast<std::size_t>(j - 1)] > kOccupationFloor)
            out.g2_cross[p] = g2_cross(c, i, j);
        out.xi[p] = number_squeezing(c, i, j);
    }
    out.bunching = bunching(c, atom_number);
    return out;
}

double gain_at(const ModelParams& params)
{
    const DerivedParams dp = derive(params);
    return gain(cubic_roots(dp, params.rho()), dp.gamma_plus);
}

std::vector<GainPoint> gain_curve(const ModelParams& params, const std::vector<double>& deltas)
{
    std::vector<GainPoint> out;
    out.reserve(deltas.size());
    for (double d : deltas) out.push_back({d, gain_at(params.with_delta(d))});
    return out;
}

} // namespace carl
