#include "ringio/lossy_cavity.hpp"

#include <cmath>
#include <stdexcept>

namespace ringio {

namespace {

// e^{(i omega - Gamma) T}
cplx round_trip_factor(double omega, double T, double Gamma)
{
    if (!(T > 0.0)) throw std::invalid_argument("round-trip time T must be positive");
    if (!(Gamma >= 0.0)) throw std::invalid_argument("attenuation rate Gamma must be non-negative");
    return std::polar(std::exp(-Gamma * T), reduced_phase(omega, T));
}

} // namespace

AbsorberParams::AbsorberParams(double gamma, double alpha_c, double beta_c)
    : gamma_(gamma), alpha_c_(alpha_c), beta_c_(beta_c)
{
    if (!(gamma > 0.0)) throw std::invalid_argument("AbsorberParams: gamma must be positive");
    if (!(alpha_c * beta_c >= 0.0)) throw std::invalid_argument("AbsorberParams: alpha_c*beta_c must be non-negative");
}

AbsorberParams AbsorberParams::from_rate(double attenuation_rate, double gamma)
{
    if (!(attenuation_rate >= 0.0)) throw std::invalid_argument("AbsorberParams: rate must be non-negative");
    return {gamma, 1.0, attenuation_rate * gamma};
}

double fp_correlation(double dt_sep, double gamma) { return std::exp(-gamma * std::abs(dt_sep)); }

DeltaLimitWeights fp_delta_limit(double gamma)
{
    if (!(gamma > 0.0)) throw std::invalid_argument("fp_delta_limit: gamma must be positive");
    return {2.0 / gamma, 2.0 * gamma};
}

cplx g_ca_lossy(double omega, const JunctionCoupling& j, double T, double Gamma)
{
    return j.tau() / (1.0 - j.rho() * round_trip_factor(omega, T, Gamma));
}

cplx g_ba_lossy(double omega, const JunctionCoupling& j, double T, double Gamma)
{
    const cplx x = round_trip_factor(omega, T, Gamma);
    return (x - j.rho()) / (1.0 - j.rho() * x);
}

double noise_power(double omega, const JunctionCoupling& j, double T, double Gamma)
{
    const cplx x = round_trip_factor(omega, T, Gamma);
    const double tau = j.tau();
    return tau * tau * -std::expm1(-2.0 * Gamma * T) / std::norm(1.0 - j.rho() * x);
}

double langevin_source_strength(double Gamma, double group_velocity)
{
    if (!(group_velocity > 0.0)) throw std::invalid_argument("group velocity must be positive");
    return 2.0 * Gamma / group_velocity;
}

LossyOutput lossy_output_spectrum(const std::vector<cplx>& input, const FrequencyGrid& grid,
                                  const JunctionCoupling& j, double T, double Gamma)
{
    if (input.size() != grid.count) throw std::invalid_argument("lossy_output_spectrum: input does not match the grid");
    LossyOutput out{std::vector<cplx>(input.size()), 0.0};
    double in_power = 0.0;
    double out_power = 0.0;
    for (std::size_t i = 0; i < input.size(); ++i) {
        out.output[i] = g_ba_lossy(grid.at(i), j, T, Gamma) * input[i];
        in_power += std::norm(input[i]);
        out_power += std::norm(out.output[i]);
    }
    out.absorbed_fraction = in_power > 0.0 ? 1.0 - out_power / in_power : 0.0;
    return out;
}

std::vector<LossySpectrumRow> lossy_spectrum_table(const JunctionCoupling& j, double T, double Gamma,
                                                   const FrequencyGrid& grid)
{
    std::vector<LossySpectrumRow> rows;
    rows.reserve(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double w = grid.at(i);
        const double refl = std::norm(g_ba_lossy(w, j, T, Gamma));
        const double noise = noise_power(w, j, T, Gamma);
        rows.push_back({w, std::norm(g_ca_lossy(w, j, T, Gamma)), refl, noise, refl + noise - 1.0});
    }
    return rows;
}

} // namespace ringio
