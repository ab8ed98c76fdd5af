#include <cmath>
#include <vector>

#include "doctest.h"

#include "ringio/errors.hpp"
#include "ringio/fdtd_oracle.hpp"
#include "ringio/lossy_cavity.hpp"
#include "support/oracles.hpp"

using namespace ringio;
using doctest::Approx;

namespace {

std::vector<cplx> random_values(std::size_t n)
{
    std::vector<cplx> v(n);
    for (auto& x : v) x = {oracle::uniform(-1.0, 1.0), oracle::uniform(-1.0, 1.0)};
    return v;
}

cplx steady_ratio(const SampledSignal& sig, std::size_t i, const std::vector<cplx>& a) { return sig[i] / a[i]; }

} // namespace

TEST_CASE("ring state construction")
{
    const auto j = JunctionCoupling::from_rho(0.5);
    CHECK_THROWS_AS(RingState(0, j, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(RingState(4, j, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(RingState(4, j, 0.1, -1.0), std::invalid_argument);
    const RingState r(4, j, 0.25, 0.4);
    CHECK(r.cells() == 4);
    CHECK(r.loss_per_step() == Approx(std::exp(-0.1)));
    CHECK(r.stored_energy() == 0.0);
}

TEST_CASE("open junction is a pure delay of one round trip")
{
    const auto j = JunctionCoupling::from_rho(0.0);
    const std::size_t M = 7;
    const auto a = random_values(100);
    const OracleRun run = run_oracle(SampledSignal(0.0, 1.0 / M, a), j, RingGeometry(1.0, 1.0), M, 0.0, M);
    REQUIRE(run.output.size() == a.size() + M);
    for (std::size_t i = 0; i < M; ++i) CHECK(run.output[i] == cplx{});
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(run.output[i + M] == a[i]);
}

TEST_CASE("impulse response reproduces kernel_ba on the lattice")
{
    for (double rho : {0.3, 0.75, 0.95}) {
        const auto j = JunctionCoupling::from_rho(rho);
        const std::size_t M = 5;
        std::vector<cplx> a(M * 60, cplx{});
        a[0] = 1.0;
        const OracleRun run = run_oracle(SampledSignal(0.0, 1.0 / M, a), j, RingGeometry(1.0, 1.0), M);
        const DeltaTrain k = kernel_ba(j, 1.0, 1e-300);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double expect = i % M == 0 ? k.weight(static_cast<std::int64_t>(i / M)) : 0.0;
            CHECK(std::abs(run.output[i] - expect) < 1e-15);
        }
    }
    const auto j = JunctionCoupling::from_rho(0.75);
    std::vector<cplx> a(12, cplx{});
    a[0] = 1.0;
    const OracleRun run = run_oracle(SampledSignal(0.0, 0.25, a), j, RingGeometry(1.0, 1.0), 4);
    CHECK(run.output[0].real() == Approx(-0.75));
    CHECK(run.output[4].real() == Approx(0.4375));
    CHECK(run.output[8].real() == Approx(0.328125));
}

TEST_CASE("oracle agrees with the analytic kernel on random input")
{
    const auto j = JunctionCoupling::from_rho(0.8);
    const std::size_t M = 6;
    std::vector<cplx> a = random_values(60);
    a.resize(600, cplx{});
    const SampledSignal in(0.0, 1.0 / M, a);
    const OracleRun run = run_oracle(in, j, RingGeometry(1.0, 1.0), M);
    const SampledSignal ref = apply(kernel_ba(j, 1.0), in);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(run.output[i] - ref[i]) < 1e-12);
}

TEST_CASE("energy bookkeeping")
{
    const auto j = JunctionCoupling::from_rho(0.75);
    for (double Gamma : {0.0, 0.3}) {
        RingState r(8, j, 0.125, Gamma);
        for (int s = 0; s < 400; ++s) {
            r.step(s < 40 ? cplx{oracle::uniform(-1, 1), oracle::uniform(-1, 1)} : cplx{});
            const double balance = r.input_energy() - r.output_energy() - r.absorbed_energy() - r.stored_energy();
            CHECK(std::abs(balance) < 1e-12 * (1 + r.input_energy()));
        }
        if (Gamma == 0.0) CHECK(r.absorbed_energy() == 0.0);
        else CHECK(r.absorbed_energy() > 0.0);
    }
}

TEST_CASE("lossless ring returns all the input energy")
{
    const auto j = JunctionCoupling::from_rho(0.75);
    const std::size_t M = 16;
    std::vector<cplx> a = random_values(3 * M);
    const OracleRun run = run_oracle(SampledSignal(0.0, 1.0 / M, a), j, RingGeometry(1.0, 1.0), M, 0.0, 120 * M);
    double in = 0.0, out = 0.0;
    for (auto x : a) in += std::norm(x);
    for (std::size_t i = 0; i < run.output.size(); ++i) out += std::norm(run.output[i]);
    CHECK(out == Approx(in).epsilon(1e-9));
}

TEST_CASE("steady-state transfer matches the lossy transfer functions")
{
    const double omega = 0.7;
    for (double rho : {0.3, 0.75})
        for (double Gamma : {0.0, 0.2}) {
            const auto j = JunctionCoupling::from_rho(rho);
            const std::size_t M = 32, n = M * 200;
            std::vector<cplx> a(n);
            for (std::size_t i = 0; i < n; ++i) a[i] = std::exp(cplx{0.0, -omega * i / double(M)});
            const OracleRun run = run_oracle(SampledSignal(0.0, 1.0 / M, a), j, RingGeometry(1.0, 1.0), M, Gamma);
            CHECK(std::abs(steady_ratio(run.output, n - 1, a) - g_ba_lossy(omega, j, 1.0, Gamma)) < 1e-12);
            const cplx probe = steady_ratio(run.cavity_probe, n - 1, a);
            CHECK(std::abs(probe - g_ca_lossy(omega, j, 1.0, Gamma)) <= Gamma / M * std::abs(probe) * 1.01 + 1e-12);
        }
}

TEST_CASE("cavity probe error halves when the cell count doubles")
{
    const auto j = JunctionCoupling::from_rho(0.75);
    const double omega = 0.7, Gamma = 0.2;
    double prev = 0.0;
    for (std::size_t M : {16, 32, 64}) {
        const std::size_t n = M * 200;
        std::vector<cplx> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = std::exp(cplx{0.0, -omega * i / double(M)});
        const OracleRun run = run_oracle(SampledSignal(0.0, 1.0 / M, a), j, RingGeometry(1.0, 1.0), M, Gamma);
        const double err = std::abs(steady_ratio(run.cavity_probe, n - 1, a) - g_ca_lossy(omega, j, 1.0, Gamma));
        if (prev > 0.0) CHECK(prev / err == Approx(2.0).epsilon(0.05));
        prev = err;
    }
}

TEST_CASE("oracle needs one cell per sample")
{
    const SampledSignal in(0.0, 0.1, std::vector<cplx>(10, cplx{1.0}));
    CHECK_THROWS_AS(run_oracle(in, JunctionCoupling::from_rho(0.5), RingGeometry(1.0, 1.0), 8), IncommensurateGrid);
}
