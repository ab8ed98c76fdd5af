// highq.hpp - the high-Q quasimode limit and diagnostics of where it breaks

#pragma once

#include <string_view>
#include <vector>

#include "ringio/core_response.hpp"
#include "ringio/echo_kernels.hpp"

namespace ringio {

enum class KappaFlavor {
    exact,        // ln(1/rho) / T, so that rho = e^{-kappa T}
    linear,       // (1 - rho) / T
    transmissive, // tau^2 / (2 T)
};

std::string_view to_string(KappaFlavor flavor);
KappaFlavor parse_kappa_flavor(std::string_view name);

struct QuasimodeParams {
    double kappa;
    KappaFlavor flavor;
};

// Throws std::invalid_argument for the exact flavor at rho = 0.
QuasimodeParams damping_rate(const JunctionCoupling& j, double T, KappaFlavor flavor);

// (tau/T) / (kappa - i omega) with the exact kappa.
cplx g_ca_effective(double omega, const JunctionCoupling& j, double T);

// Ratio of the Lorentzian peak to the exact resonance peak, (1 - rho)/ln(1/rho).
double peak_ratio(const JunctionCoupling& j, double T);

inline constexpr double kHighQStepGuard = 0.05;

// Integrates dC/dt = -kappa C + sqrt(2 kappa) A from C(t0) = 0 on the input grid.
// The input is treated as piecewise linear between samples and each step is the
// exact solution of the linear ODE over that segment. Throws StepTooCoarse when
// kappa * dt >= step_guard.
SampledSignal quasimode_evolve(const SampledSignal& a, const QuasimodeParams& q,
                               double step_guard = kHighQStepGuard);

// B = sqrt(2 kappa) C - A. Throws GridMismatch unless a and c share sampling.
SampledSignal quasimode_output(const SampledSignal& a, const SampledSignal& c,
                               const QuasimodeParams& q);

// (kappa + i omega) / (kappa - i omega)
cplx quasimode_transfer(double omega, const QuasimodeParams& q);

// [C(t), C^dagger(t')] = exp(-kappa |t - t'|)
double quasimode_commutator(double dt_sep, const QuasimodeParams& q);

// max_{0<=k<=kmax} |exp(-kappa k T) - rho^k|
double envelope_deviation(const JunctionCoupling& j, double T, const QuasimodeParams& q,
                          std::int64_t kmax = 20);

struct Fig4Row {
    double dt_sep;
    double exact_rendered; // sum_k rho^|k| exp(-(dt - kT)^2 / 2 w^2): unit-height bumps
    double approx_envelope;
};

struct Fig4Options {
    double dt_start{-6.0}; // units of T
    double dt_stop{6.0};
    std::size_t points{1201};
};

std::vector<Fig4Row> fig4_dataset(const JunctionCoupling& j, double T, KappaFlavor flavor,
                                  double broadening, const Fig4Options& options = {});

} // namespace ringio
