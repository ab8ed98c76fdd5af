#include "ringio/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ringio/commutator_lab.hpp"
#include "ringio/fdtd_oracle.hpp"
#include "ringio/highq.hpp"
#include "ringio/lossy_cavity.hpp"
#include "ringio/two_photon.hpp"

namespace ringio {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

CheckResult bounded(std::string name, double measured, double tolerance, std::string note = {})
{
    return {std::move(name), measured <= tolerance, false, measured, tolerance, std::move(note)};
}

CheckResult skipped(std::string name, std::string note) { return {std::move(name), true, true, 0.0, 0.0, std::move(note)}; }

} // namespace

bool ValidationReport::all_passed() const { return failures() == 0; }

std::size_t ValidationReport::failures() const
{
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

nlohmann::json ValidationReport::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"status", c.skipped ? "skipped" : (c.passed ? "pass" : "fail")},
                       {"measured", c.measured},
                       {"tolerance", c.tolerance},
                       {"note", c.note}});
    }
    return {{"passed", all_passed()}, {"failures", failures()}, {"checks", std::move(arr)}};
}

ValidationReport run_validation(const ValidationConfig& config)
{
    const JunctionCoupling& j = config.coupling;
    const double T = config.T;
    const double eps = config.eps;
    const double rho = j.rho();
    ValidationReport report;
    auto& out = report.checks;

    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> omega_dist(-50.0 / T, 50.0 / T);

    {
        double unimod = 0.0, inverse = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double w = omega_dist(rng);
            unimod = std::max(unimod, std::abs(std::abs(g_ba(w, j, T)) - 1.0));
            inverse = std::max(inverse, std::abs(g_ab(w, j, T) * g_ba(w, j, T) - 1.0));
        }
        out.push_back(bounded("core.unimodularity", unimod, 1e-12));
        out.push_back(bounded("core.inverse_identity", inverse, 1e-14));
        out.push_back(bounded("core.fsr_integral", std::abs(fsr_integral(j, T, 1) - 1.0), 1e-6));

        const DeltaTrain kca = kernel_ca(j, T, eps);
        double series = 0.0;
        for (double w : {0.0, 0.3 / T, 1.7 / T, std::numbers::pi / T})
            series = std::max(series, std::abs(kca.frequency_response(w) - g_ca(w, j, T)));
        out.push_back(bounded("core.series_consistency", series, kca.tail_bound() + 1e-14));
    }

    const DeltaTrain kba = config.output_kernel(j, T, eps);
    const DeltaTrain kab = mirror(kba);
    const DeltaTrain kca = kernel_ca(j, T, eps);
    {
        const DeltaTrain unit = convolve(kab, kba);
        const double err = std::max(std::abs(unit.weight(0) - 1.0), unit.max_off_center(0));
        out.push_back(bounded("kernels.round_trip_inverse", err, 1e-10));
        out.push_back(bounded("kernels.unitarity", std::max(std::abs(kba.sum_squares() - 1.0), std::abs(kca.sum_squares() - 1.0)),
                              1e-10));
        double freq = 0.0;
        for (int i = 0; i < 64; ++i) {
            const double w = kTwoPi / T * i / 64.0;
            freq = std::max(freq, std::abs(kba.frequency_response(w) - g_ba(w, j, T)));
        }
        out.push_back(bounded("kernels.frequency_consistency", freq, 1e-8));
    }

    {
        const DeltaTrain cc = correlate(kca, kca);
        double err = 0.0;
        for (std::int64_t k = -10; k <= 10; ++k) err = std::max(err, std::abs(cc.weight(k) - std::pow(rho, std::abs(double(k)))));
        out.push_back(bounded("commutator.cavity_train", err, 1e-12));
        const DeltaTrain cross = cross_commutator_ca(j, T, 200, eps);
        out.push_back(bounded("commutator.causality", cross.min_offset() < 0 ? 1.0 : 0.0, 0.0));

        const OutputCommutatorReport oc = output_commutator_check(j, T, eps, kba);
        out.push_back(bounded("commutator.output_sum_rule", std::max(oc.zero_offset_error, oc.max_spurious), 1e-10));
        if (oc.path_disagreement) out.push_back(bounded("commutator.decomposition_agreement", *oc.path_disagreement, 1e-12));
        else out.push_back(skipped("commutator.decomposition_agreement", "rho = 0: the A/C decomposition divides by rho"));
    }

    if (rho > 0.0) {
        const QuasimodeParams q = damping_rate(j, T, KappaFlavor::exact);
        out.push_back(bounded("highq.exact_envelope", envelope_deviation(j, T, q, 20), 1e-14));
    } else {
        out.push_back(skipped("highq.exact_envelope", "rho = 0: exact damping rate undefined"));
    }

    {
        const double dt = T / 16.0;
        const UniformAxis axis{-3.0 * T, dt, 97};
        std::vector<cplx> d(axis.count);
        for (std::size_t i = 0; i < axis.count; ++i) d[i] = std::exp(-0.5 * std::pow(axis.at(i) / (0.4 * T), 2));
        const std::int64_t kmax = rho > 0.0 ? std::min<std::int64_t>(600, std::int64_t(std::ceil(std::log(1e-13) / std::log(rho)))) : 1;
        const double truncation = j.tau() * j.tau() * std::pow(rho, double(kmax)) / (1.0 - rho);
        out.push_back(bounded("two_photon.cw_dispersion_cancellation", cw_output(CwAmplitude(axis, d), j, T, kmax).residual,
                              1e-9 + truncation));

        const TwoPhotonGaussian g(0.3 * T, 0.3 * T);
        const UniformAxis grid = default_two_photon_axis(g, T, 3);
        const JointAmplitudeGrid phi = gaussian_amplitude(g, grid);
        const JointAmplitudeGrid direct = transform_output(phi, j, T, eps);
        const JointAmplitudeGrid closed = gaussian_output_closed_form(g, j, T, grid, eps);
        out.push_back(bounded("two_photon.closed_form_vs_direct", (direct.values() - closed.values()).cwiseAbs().maxCoeff(), 1e-8));

        if (rho > 0.0) {
            std::vector<cplx> f(grid.count);
            for (std::size_t i = 0; i < grid.count; ++i) f[i] = std::exp(-0.5 * std::pow(grid.at(i) / (0.3 * T), 2));
            const SampledSignal s(grid.start, grid.step, f);
            const auto [p1, p2] = separable_output(s, s, j, T, FactorPath::closed_form, eps);
            const JointAmplitudeGrid full = transform_output(outer_product(s, s), j, T, eps);
            out.push_back(bounded("two_photon.factorized_output",
                                  (outer_product(p1, p2).values() - full.values()).cwiseAbs().maxCoeff(), 1e-10));
        } else {
            out.push_back(skipped("two_photon.factorized_output", "rho = 0: tau^2/rho factor form skipped, kernel form used"));
        }
    }

    {
        double sum_rule = 0.0, continuity = 0.0;
        for (double gamma_t : {0.0, 0.2, 2.0}) {
            for (int i = 0; i < 200; ++i) {
                const double w = omega_dist(rng);
                const double G = gamma_t / T;
                sum_rule = std::max(sum_rule, std::abs(std::norm(g_ba_lossy(w, j, T, G)) + noise_power(w, j, T, G) - 1.0));
                if (gamma_t == 0.0)
                    continuity = std::max({continuity, std::abs(g_ca_lossy(w, j, T, 0.0) - g_ca(w, j, T)),
                                           std::abs(g_ba_lossy(w, j, T, 0.0) - g_ba(w, j, T))});
            }
        }
        out.push_back(bounded("lossy.sum_rule", sum_rule, 1e-12));
        out.push_back(bounded("lossy.lossless_limit", continuity, 1e-12));
    }

    {
        const std::size_t cells = 8;
        const RingGeometry ring(T, 1.0);
        std::vector<cplx> impulse(1, cplx{1.0, 0.0});
        const OracleRun run = run_oracle(SampledSignal(0.0, T / cells, impulse), j, ring, cells, 0.0, cells * 60);
        double err = 0.0;
        for (std::int64_t k = 0; k < 60; ++k) err = std::max(err, std::abs(run.output[std::size_t(k) * cells] - kba.weight(k)));
        out.push_back(bounded("oracle.impulse_response", err, 1e-12));
    }
    return report;
}

} // namespace ringio
