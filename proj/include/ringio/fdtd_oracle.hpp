// fdtd_oracle.hpp - brute-force propagation around the ring
//
// The ring is a shift register of M cells with v dt = dz, so free propagation is
// an exact one-cell shift per step. The junction acts as the 2x2 unitary
// [[tau, -rho], [rho, tau]] on (C(L-), A). Loss is an exact per-step factor
// e^{-Gamma dt}. Nothing here shares code with the analytic kernels.

#pragma once

#include <complex>
#include <cstddef>
#include <deque>

#include "ringio/core_response.hpp"
#include "ringio/echo_kernels.hpp"

namespace ringio {

class RingState {
public:
    RingState(std::size_t cells, const JunctionCoupling& coupling, double dt, double Gamma = 0.0);

    // One time step with input sample a_in; returns B at this step.
    cplx step(cplx a_in);

    [[nodiscard]] std::size_t cells() const { return cells_.size(); }
    [[nodiscard]] double dt() const { return dt_; }
    [[nodiscard]] double loss_per_step() const { return loss_per_step_; }
    // Field just after the junction as held by the first cell.
    [[nodiscard]] cplx first_cell() const { return cells_.front(); }
    [[nodiscard]] cplx last_cell() const { return cells_.back(); }

    // Energy ledgers in flux units (|field|^2 dt).
    [[nodiscard]] double stored_energy() const;
    [[nodiscard]] double input_energy() const { return input_energy_; }
    [[nodiscard]] double output_energy() const { return output_energy_; }
    [[nodiscard]] double absorbed_energy() const { return absorbed_energy_; }

private:
    std::deque<cplx> cells_;
    JunctionCoupling coupling_;
    double dt_;
    double loss_per_step_;
    double input_energy_{0.0};
    double output_energy_{0.0};
    double absorbed_energy_{0.0};
};

struct OracleRun {
    SampledSignal output;       // B(t) on the input grid extended by tail_steps
    SampledSignal cavity_probe; // first cell after every step
};

// Drives the ring with `input` (dt must equal T/M, else IncommensurateGrid), then
// keeps stepping with zero input for tail_steps.
OracleRun run_oracle(const SampledSignal& input, const JunctionCoupling& j, const RingGeometry& ring,
                     std::size_t cells, double Gamma = 0.0, std::size_t tail_steps = 0);

} // namespace ringio
