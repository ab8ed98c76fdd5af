#include "ringio/core_response.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ringio {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive_period(double T)
{
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("round-trip time T must be positive");
}

} // namespace

JunctionCoupling JunctionCoupling::from_rho(double rho)
{
    if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
    return {rho, std::sqrt((1.0 - rho) * (1.0 + rho))};
}

JunctionCoupling JunctionCoupling::from_tau(double tau)
{
    if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in (0, 1]");
    return {std::sqrt((1.0 - tau) * (1.0 + tau)), tau};
}

RingGeometry::RingGeometry(double length, double group_velocity)
    : length_(length), velocity_(group_velocity)
{
    if (!(length > 0.0)) throw std::invalid_argument("ring length must be positive");
    if (!(group_velocity > 0.0)) throw std::invalid_argument("group velocity must be positive");
}

double RingGeometry::fsr() const { return kTwoPi / round_trip(); }

double reduced_phase(double omega, double T) { return std::remainder(omega * T, kTwoPi); }

cplx g_ca(double omega, const JunctionCoupling& j, double T)
{
    require_positive_period(T);
    const cplx e = std::polar(1.0, reduced_phase(omega, T));
    return j.tau() / (1.0 - j.rho() * e);
}

cplx g_ba(double omega, const JunctionCoupling& j, double T)
{
    require_positive_period(T);
    const cplx e = std::polar(1.0, reduced_phase(omega, T));
    // e (1 - rho/e) / (1 - rho e) with |1 - rho/e| = |1 - rho e|
    const cplx w = 1.0 - j.rho() * std::conj(e);
    return e * (w / std::conj(w));
}

cplx g_ab(double omega, const JunctionCoupling& j, double T) { return std::conj(g_ba(omega, j, T)); }

double fsr_integral(const JunctionCoupling& j, double T, int n_periods, int points_per_period)
{
    if (n_periods < 1) throw std::invalid_argument("fsr_integral: n_periods must be >= 1");
    if (points_per_period < 1000) throw std::invalid_argument("fsr_integral: need >= 1000 points per period");
    require_positive_period(T);

    const double fsr = kTwoPi / T;
    const auto n = static_cast<long>(n_periods) * points_per_period;
    const double h = fsr * n_periods / static_cast<double>(n);
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
        const double omega = (static_cast<double>(i) + 0.5) * h;
        sum += std::norm(g_ca(omega, j, T));
    }
    return sum * h / (fsr * n_periods);
}

std::vector<DosSample> density_of_states_profile(const JunctionCoupling& j, double T,
                                                 const FrequencyGrid& grid)
{
    std::vector<DosSample> out;
    out.reserve(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double omega = grid.at(i);
        out.push_back({omega, std::norm(g_ca(omega, j, T))});
    }
    return out;
}

} // namespace ringio
