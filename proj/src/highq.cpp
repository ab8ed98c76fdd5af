#include "ringio/highq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ringio/errors.hpp"

namespace ringio {

std::string_view to_string(KappaFlavor flavor)
{
    switch (flavor) {
    case KappaFlavor::exact: return "exact";
    case KappaFlavor::linear: return "linear";
    case KappaFlavor::transmissive: return "transmissive";
    }
    return "unknown";
}

KappaFlavor parse_kappa_flavor(std::string_view name)
{
    if (name == "exact") return KappaFlavor::exact;
    if (name == "linear") return KappaFlavor::linear;
    if (name == "transmissive") return KappaFlavor::transmissive;
    throw std::invalid_argument("unknown kappa flavor '" + std::string(name) + "'");
}

QuasimodeParams damping_rate(const JunctionCoupling& j, double T, KappaFlavor flavor)
{
    if (!(T > 0.0)) throw std::invalid_argument("damping_rate: T must be positive");
    const double rho = j.rho();
    const double tau = j.tau();
    switch (flavor) {
    case KappaFlavor::exact:
        if (rho == 0.0) throw std::invalid_argument("exact damping rate ln(1/rho)/T is undefined at rho = 0");
        return {-std::log(rho) / T, flavor};
    case KappaFlavor::linear: return {(1.0 - rho) / T, flavor};
    case KappaFlavor::transmissive: return {tau * tau / (2.0 * T), flavor};
    }
    throw std::invalid_argument("damping_rate: bad flavor");
}

cplx g_ca_effective(double omega, const JunctionCoupling& j, double T)
{
    const double kappa = damping_rate(j, T, KappaFlavor::exact).kappa;
    return (j.tau() / T) / cplx{kappa, -omega};
}

double peak_ratio(const JunctionCoupling& j, double T)
{
    return std::abs(g_ca_effective(0.0, j, T)) / std::abs(g_ca(0.0, j, T));
}

SampledSignal quasimode_evolve(const SampledSignal& a, const QuasimodeParams& q, double step_guard)
{
    const double h = a.dt();
    const double k = q.kappa;
    if (!(k > 0.0)) throw std::invalid_argument("quasimode_evolve: kappa must be positive");
    if (k * h >= step_guard)
        throw StepTooCoarse("kappa*dt = " + std::to_string(k * h) + " exceeds the high-Q step guard " +
                            std::to_string(step_guard));

    // Over one step with A linear between samples:
    //   C1 = e^{-kh} C0 + sqrt(2k) (w0 A0 + w1 A1)
    //   phi1 = int_0^h e^{-ku} du, moment = int_0^h u e^{-ku} du
    const double x = k * h;
    const double decay = std::exp(-x);
    const double phi1 = -std::expm1(-x) / k;
    const double moment = (-std::expm1(-x) - x * decay) / (k * k);
    const double w1 = (h * phi1 - moment) / h;
    const double w0 = phi1 - w1;
    const double gain = std::sqrt(2.0 * k);

    const auto& in = a.values();
    std::vector<cplx> out(in.size());
    cplx c{0.0, 0.0};
    for (std::size_t i = 1; i < in.size(); ++i) {
        c = decay * c + gain * (w0 * in[i - 1] + w1 * in[i]);
        out[i] = c;
    }
    return {a.t0(), a.dt(), std::move(out)};
}

SampledSignal quasimode_output(const SampledSignal& a, const SampledSignal& c, const QuasimodeParams& q)
{
    if (a.size() != c.size() || std::abs(a.dt() - c.dt()) > 1e-12 * a.dt() ||
        std::abs(a.t0() - c.t0()) > 1e-9 * a.dt())
        throw GridMismatch("quasimode_output: input and cavity signals are not aligned");
    const double gain = std::sqrt(2.0 * q.kappa);
    std::vector<cplx> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = gain * c[i] - a[i];
    return {a.t0(), a.dt(), std::move(out)};
}

cplx quasimode_transfer(double omega, const QuasimodeParams& q)
{
    return cplx{q.kappa, omega} / cplx{q.kappa, -omega};
}

double quasimode_commutator(double dt_sep, const QuasimodeParams& q) { return std::exp(-q.kappa * std::abs(dt_sep)); }

double envelope_deviation(const JunctionCoupling& j, double T, const QuasimodeParams& q, std::int64_t kmax)
{
    double worst = 0.0;
    double rk = 1.0;
    for (std::int64_t k = 0; k <= kmax; ++k, rk *= j.rho())
        worst = std::max(worst, std::abs(quasimode_commutator(static_cast<double>(k) * T, q) - rk));
    return worst;
}

std::vector<Fig4Row> fig4_dataset(const JunctionCoupling& j, double T, KappaFlavor flavor, double broadening,
                                  const Fig4Options& options)
{
    if (!(broadening > 0.0)) throw std::invalid_argument("fig4_dataset: broadening must be positive");
    const QuasimodeParams q = damping_rate(j, T, flavor);
    const UniformAxis axis = UniformAxis::spanning(options.dt_start * T, options.dt_stop * T, options.points);
    const double reach = 10.0 * broadening;
    std::vector<Fig4Row> rows;
    rows.reserve(axis.count);
    for (std::size_t i = 0; i < axis.count; ++i) {
        const double d = axis.at(i);
        const auto klo = static_cast<std::int64_t>(std::floor((d - reach) / T));
        const auto khi = static_cast<std::int64_t>(std::ceil((d + reach) / T));
        double exact = 0.0;
        for (std::int64_t k = klo; k <= khi; ++k) {
            const double x = d - static_cast<double>(k) * T;
            exact += std::pow(j.rho(), static_cast<double>(std::llabs(k))) *
                     std::exp(-0.5 * x * x / (broadening * broadening));
        }
        rows.push_back({d, exact, quasimode_commutator(d, q)});
    }
    return rows;
}

} // namespace ringio
