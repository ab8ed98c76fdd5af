// core_response.hpp - frequency-domain transfer functions of a single-port ring cavity
//
// Conventions: f(omega) = integral dt exp(+i omega t) F(t); the junction is
// lossless with real amplitudes (rho, tau), rho^2 + tau^2 = 1, and external
// reflection carries the minus sign (it appears in g_ba, never in g_ca).

#pragma once

#include <complex>
#include <vector>

#include "ringio/axis.hpp"

namespace ringio {

using cplx = std::complex<double>;

class JunctionCoupling {
public:
    // tau is derived as sqrt(1 - rho^2). rho must lie in [0, 1).
    static JunctionCoupling from_rho(double rho);
    // rho is derived as sqrt(1 - tau^2). tau must lie in (0, 1].
    static JunctionCoupling from_tau(double tau);

    [[nodiscard]] double rho() const { return rho_; }
    [[nodiscard]] double tau() const { return tau_; }

private:
    JunctionCoupling(double rho, double tau) : rho_(rho), tau_(tau) {}
    double rho_;
    double tau_;
};

class RingGeometry {
public:
    RingGeometry(double length, double group_velocity);

    [[nodiscard]] double length() const { return length_; }
    [[nodiscard]] double group_velocity() const { return velocity_; }
    [[nodiscard]] double round_trip() const { return length_ / velocity_; }
    [[nodiscard]] double fsr() const;

private:
    double length_;
    double velocity_;
};

// omega*T reduced into [-pi, pi].
double reduced_phase(double omega, double T);

// Input -> cavity field at z = 0+: tau / (1 - rho e^{i omega T}).
cplx g_ca(double omega, const JunctionCoupling& j, double T);

// Input -> output: e^{i omega T}(1 - rho e^{-i omega T}) / (1 - rho e^{i omega T}). Unimodular.
cplx g_ba(double omega, const JunctionCoupling& j, double T);

// Output -> input, the inverse of g_ba; equal to conj(g_ba).
cplx g_ab(double omega, const JunctionCoupling& j, double T);

// Mean of |g_ca|^2 over n_periods free spectral ranges by the composite
// midpoint rule. Equals 1 for every rho: resonances redistribute, never add, states.
double fsr_integral(const JunctionCoupling& j, double T, int n_periods = 1,
                    int points_per_period = 4096);

struct DosSample {
    double omega;
    double value;
};

// |g_ca(omega)|^2 tabulated on the grid.
std::vector<DosSample> density_of_states_profile(const JunctionCoupling& j, double T,
                                                 const FrequencyGrid& grid);

} // namespace ringio
