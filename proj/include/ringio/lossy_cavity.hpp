// lossy_cavity.hpp - a broadband absorber filling the ring
//
// The absorber is adiabatically eliminated, leaving a field attenuation rate
// Gamma = alpha beta / gamma and a delta-correlated Langevin source. Noise is
// tracked as a spectral power N(omega) normalized by the sum rule
// |g_ba|^2 + N = 1.

#pragma once

#include <vector>

#include "ringio/core_response.hpp"

namespace ringio {

class AbsorberParams {
public:
    // Gamma = alpha_c * beta_c / gamma
    AbsorberParams(double gamma, double alpha_c, double beta_c);
    // An absorber with the given field attenuation rate and unit couplings.
    static AbsorberParams from_rate(double attenuation_rate, double gamma);

    [[nodiscard]] double gamma() const { return gamma_; }
    [[nodiscard]] double alpha_c() const { return alpha_c_; }
    [[nodiscard]] double beta_c() const { return beta_c_; }
    [[nodiscard]] double attenuation_rate() const { return alpha_c_ * beta_c_ / gamma_; }
    // gamma T above the guard (default 20): polarization follows the field.
    [[nodiscard]] bool is_adiabatic(double T, double guard = 20.0) const { return gamma_ * T > guard; }

private:
    double gamma_;
    double alpha_c_;
    double beta_c_;
};

// exp(-gamma |dt|)
double fp_correlation(double dt_sep, double gamma);

// Two readings of the fast-damping delta limit of fp_correlation. The integral of
// exp(-gamma|t|) is 2/gamma; the delta weight quoted alongside it is 2 gamma.
// Neither enters N(omega), which is fixed by the sum rule.
struct DeltaLimitWeights {
    double integral;
    double stated;
};
DeltaLimitWeights fp_delta_limit(double gamma);

// tau / (1 - rho e^{(i omega - Gamma) T})
cplx g_ca_lossy(double omega, const JunctionCoupling& j, double T, double Gamma);
// (e^{(i omega - Gamma) T} - rho) / (1 - rho e^{(i omega - Gamma) T})
cplx g_ba_lossy(double omega, const JunctionCoupling& j, double T, double Gamma);
// tau^2 (1 - e^{-2 Gamma T}) / |1 - rho e^{(i omega - Gamma) T}|^2
double noise_power(double omega, const JunctionCoupling& j, double T, double Gamma);

// Spectral density per unit length of the source that yields noise_power: 2 Gamma / v.
double langevin_source_strength(double Gamma, double group_velocity);

struct LossyOutput {
    std::vector<cplx> output;
    double absorbed_fraction; // 1 - sum|b|^2 / sum|a|^2
};

// Mean-field output spectrum b(omega) = g_ba_lossy(omega) a(omega) on the grid.
LossyOutput lossy_output_spectrum(const std::vector<cplx>& input, const FrequencyGrid& grid,
                                  const JunctionCoupling& j, double T, double Gamma);

struct LossySpectrumRow {
    double omega;
    double cavity_gain;  // |g_ca_lossy|^2
    double reflectance;  // |g_ba_lossy|^2
    double noise;        // N
    double sum_rule_residual;
};

std::vector<LossySpectrumRow> lossy_spectrum_table(const JunctionCoupling& j, double T, double Gamma,
                                                   const FrequencyGrid& grid);

} // namespace ringio
