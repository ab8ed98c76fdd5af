#include "ringio/commutator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ringio {

namespace {

double rho_power(double rho, std::int64_t k)
{
    return std::pow(rho, static_cast<double>(std::llabs(k)));
}

void require_inside(const SpaceTimePoint& p, const RingGeometry& ring)
{
    if (!(p.z >= 0.0 && p.z < ring.length())) throw std::invalid_argument("space-time point must satisfy 0 <= z < L");
}

} // namespace

DeltaTrain cavity_commutator_train(const JunctionCoupling& j, double T, std::int64_t kmax, double eps)
{
    if (kmax < 0) throw std::invalid_argument("cavity_commutator_train: kmax must be >= 0");
    std::map<DeltaTrain::Offset, double> w;
    w[0] = 1.0;
    for (std::int64_t k = 1; k <= kmax; ++k) {
        const double c = rho_power(j.rho(), k);
        if (c == 0.0) break;
        w[k] = c;
        w[-k] = c;
    }
    // omitted |k| > kmax
    const double rho = j.rho();
    const double tail = 2.0 * rho_power(rho, kmax + 1) / (1.0 - rho);
    return {T, eps, w, tail};
}

std::vector<TemporalSupport> spacetime_commutator_support(const SpaceTimePoint& p, const SpaceTimePoint& pprime,
                                                          const JunctionCoupling& j, const RingGeometry& ring,
                                                          std::int64_t kmax)
{
    require_inside(p, ring);
    require_inside(pprime, ring);
    const double v = ring.group_velocity();
    const double T = ring.round_trip();
    std::vector<TemporalSupport> out;
    for (std::int64_t k = -kmax; k <= kmax; ++k) {
        const double w = rho_power(j.rho(), k);
        if (w == 0.0) continue;
        // t - z/v - (t' - z'/v) + kT = 0
        const double t_hit = pprime.t + (p.z - pprime.z) / v - static_cast<double>(k) * T;
        out.push_back({k, w, t_hit});
    }
    return out;
}

std::vector<SpatialSupport> spatial_commutator_support(const SpaceTimePoint& p, const SpaceTimePoint& pprime,
                                                       const JunctionCoupling& j, const RingGeometry& ring,
                                                       std::int64_t kmax)
{
    require_inside(pprime, ring);
    const double v = ring.group_velocity();
    const double L = ring.length();
    std::vector<SpatialSupport> out;
    for (std::int64_t k = -kmax; k <= kmax; ++k) {
        const double w = rho_power(j.rho(), k);
        if (w == 0.0) continue;
        // z = z' + v (t - t') + k L
        const double z = pprime.z + v * (p.t - pprime.t) + static_cast<double>(k) * L;
        if (z >= 0.0 && z < L) out.push_back({k, w, z});
    }
    return out;
}

DeltaTrain cross_commutator_ca(const JunctionCoupling& j, double T, std::int64_t nmax, double eps)
{
    if (nmax < 0) throw std::invalid_argument("cross_commutator_ca: nmax must be >= 0");
    std::map<DeltaTrain::Offset, double> w;
    double c = j.tau();
    std::int64_t n = 0;
    for (; n <= nmax && c != 0.0; ++n, c *= j.rho()) w[n] = c;
    const double tail = j.tau() * rho_power(j.rho(), nmax + 1) / (1.0 - j.rho());
    return {T, eps, w, tail};
}

OutputCommutatorReport output_commutator_check(const JunctionCoupling& j, double T, double eps)
{
    return output_commutator_check(j, T, eps, kernel_ba(j, T, eps));
}

OutputCommutatorReport output_commutator_check(const JunctionCoupling& j, double T, double eps,
                                               const DeltaTrain& output_kernel)
{
    DeltaTrain via_corr = correlate(output_kernel, output_kernel);

    auto deviation = [](const DeltaTrain& t) {
        return std::pair{std::abs(t.weight(0) - 1.0), t.max_off_center(0)};
    };
    auto [zero_err, spurious] = deviation(via_corr);

    std::optional<DeltaTrain> via_dec;
    std::optional<double> disagreement;
    const double rho = j.rho();
    if (rho > 0.0) {
        // [B,B+] = (1/rho^2)[A,A+] - (tau/rho^2)([C,A+] + [A,C+]) + (tau^2/rho^2)[C,C+],
        // with every train kept to the order where its weight reaches eps.
        const double tau = j.tau();
        const auto kmax = static_cast<std::int64_t>(std::ceil(std::log(eps * rho * rho) / std::log(rho))) + 1;
        const DeltaTrain cross = cross_commutator_ca(j, T, kmax, 0.0);
        const DeltaTrain cavity = cavity_commutator_train(j, T, kmax, 0.0);
        const DeltaTrain cross_sum = combine(1.0, cross, 1.0, mirror(cross));
        DeltaTrain partial = combine(1.0 / (rho * rho), DeltaTrain::unit(T, 0.0), -tau / (rho * rho), cross_sum);
        DeltaTrain total = combine(1.0, partial, tau * tau / (rho * rho), cavity);
        via_dec = DeltaTrain(T, eps, total.weights(), total.tail_bound());

        const auto [z2, s2] = deviation(*via_dec);
        zero_err = std::max(zero_err, z2);
        spurious = std::max(spurious, s2);

        double d = 0.0;
        for (const auto& [k, c] : via_corr.weights()) d = std::max(d, std::abs(c - via_dec->weight(k)));
        for (const auto& [k, c] : via_dec->weights()) d = std::max(d, std::abs(c - via_corr.weight(k)));
        disagreement = d;
    }
    return {std::move(via_corr), std::move(via_dec), zero_err, spurious, disagreement};
}

CommutatorMap commutator_figure(const JunctionCoupling& j, double zprime, const RingGeometry& ring,
                                double broadening, const CommutatorFigureOptions& options)
{
    if (!(broadening > 0.0)) throw std::invalid_argument("commutator_figure: broadening must be positive");
    if (!(zprime >= 0.0 && zprime < ring.length())) throw std::invalid_argument("commutator_figure: need 0 <= z' < L");
    if (options.z_points < 2 || options.t_points < 2) throw std::invalid_argument("commutator_figure: grid too small");

    const double T = ring.round_trip();
    const double v = ring.group_velocity();
    const double rho = j.rho();
    const UniformAxis z_axis{0.0, ring.length() / static_cast<double>(options.z_points), options.z_points};
    const UniformAxis t_axis = UniformAxis::spanning(options.t_start * T, options.t_stop * T, options.t_points);

    const double norm = 1.0 / (broadening * std::sqrt(2.0 * std::numbers::pi));
    const double reach = 10.0 * broadening;
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t_axis.count),
                                                   static_cast<Eigen::Index>(z_axis.count));
    for (std::size_t it = 0; it < t_axis.count; ++it) {
        const double t = t_axis.at(it);
        for (std::size_t iz = 0; iz < z_axis.count; ++iz) {
            // argument x_k = t - z/v - (t' - z'/v) + kT; only k within reach of zero matter
            const double x0 = t - z_axis.at(iz) / v - (options.tprime - zprime / v);
            const auto klo = static_cast<std::int64_t>(std::floor((-x0 - reach) / T));
            const auto khi = static_cast<std::int64_t>(std::ceil((-x0 + reach) / T));
            double s = 0.0;
            for (std::int64_t k = klo; k <= khi; ++k) {
                const double x = x0 + static_cast<double>(k) * T;
                s += rho_power(rho, k) * norm * std::exp(-0.5 * x * x / (broadening * broadening));
            }
            values(static_cast<Eigen::Index>(it), static_cast<Eigen::Index>(iz)) = std::abs(s);
        }
    }
    return {z_axis, t_axis, std::move(values), broadening, zprime, options.tprime, rho};
}

} // namespace ringio
