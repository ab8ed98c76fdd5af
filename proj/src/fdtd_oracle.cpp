#include "ringio/fdtd_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "ringio/errors.hpp"

namespace ringio {

RingState::RingState(std::size_t cells, const JunctionCoupling& coupling, double dt, double Gamma)
    : cells_(cells, cplx{}), coupling_(coupling), dt_(dt), loss_per_step_(std::exp(-Gamma * dt))
{
    if (cells < 2) throw std::invalid_argument("RingState: need at least two cells");
    if (!(dt > 0.0)) throw std::invalid_argument("RingState: dt must be positive");
    if (!(Gamma >= 0.0)) throw std::invalid_argument("RingState: Gamma must be non-negative");
}

cplx RingState::step(cplx a_in)
{
    const double rho = coupling_.rho();
    const double tau = coupling_.tau();
    const cplx c_last = cells_.back();
    const cplx b = tau * c_last - rho * a_in;
    const cplx injected = rho * c_last + tau * a_in;

    cells_.pop_back();
    cells_.push_front(injected);
    double before = 0.0;
    for (auto& c : cells_) {
        before += std::norm(c);
        c *= loss_per_step_;
    }

    input_energy_ += std::norm(a_in) * dt_;
    output_energy_ += std::norm(b) * dt_;
    absorbed_energy_ += (1.0 - loss_per_step_ * loss_per_step_) * before * dt_;
    return b;
}

double RingState::stored_energy() const
{
    double s = 0.0;
    for (const auto& c : cells_) s += std::norm(c);
    return s * dt_;
}

OracleRun run_oracle(const SampledSignal& input, const JunctionCoupling& j, const RingGeometry& ring,
                     std::size_t cells, double Gamma, std::size_t tail_steps)
{
    if (cells < 2) throw std::invalid_argument("run_oracle: need at least two cells");
    const double T = ring.round_trip();
    const double dt = T / static_cast<double>(cells);
    if (std::abs(input.dt() - dt) > 1e-9 * dt)
        throw IncommensurateGrid("run_oracle: input dt must equal T/M; resample the input");

    RingState state(cells, j, dt, Gamma);
    const std::size_t total = input.size() + tail_steps;
    std::vector<cplx> out(total);
    std::vector<cplx> probe(total);
    for (std::size_t n = 0; n < total; ++n) {
        out[n] = state.step(n < input.size() ? input[n] : cplx{});
        probe[n] = state.first_cell();
    }
    return {SampledSignal(input.t0(), input.dt(), std::move(out)), SampledSignal(input.t0(), input.dt(), std::move(probe))};
}

} // namespace ringio
