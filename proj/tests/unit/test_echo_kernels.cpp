#include <cmath>
#include <vector>

#include "doctest.h"

#include "ringio/echo_kernels.hpp"
#include "ringio/errors.hpp"
#include "support/oracles.hpp"

using namespace ringio;
using doctest::Approx;

namespace {

DeltaTrain random_train(double period, int span)
{
    std::map<DeltaTrain::Offset, double> w;
    const int n = 1 + static_cast<int>(oracle::uniform(0.0, 8.0));
    for (int i = 0; i < n; ++i) w[static_cast<int>(oracle::uniform(-span, span))] = oracle::uniform(-1.0, 1.0);
    return DeltaTrain(period, 1e-14, w);
}

SampledSignal random_signal(double t0, double dt, std::size_t n)
{
    std::vector<cplx> v(n);
    for (auto& x : v) x = {oracle::uniform(-1.0, 1.0), oracle::uniform(-1.0, 1.0)};
    return SampledSignal(t0, dt, v);
}

double max_diff(const DeltaTrain& a, const DeltaTrain& b)
{
    double d = 0.0;
    for (const auto& [k, c] : a.weights()) d = std::max(d, std::abs(c - b.weight(k)));
    for (const auto& [k, c] : b.weights()) d = std::max(d, std::abs(c - a.weight(k)));
    return d;
}

} // namespace

TEST_CASE("delta train drops small weights into the tail bound")
{
    const DeltaTrain t(1.0, 1e-6, {{0, 1.0}, {1, 1e-8}, {2, -2e-7}, {3, 0.0}}, 1e-9);
    CHECK(t.size() == 1);
    CHECK(t.weight(1) == 0.0);
    CHECK(t.tail_bound() == Approx(1e-9 + 1e-8 + 2e-7));
    CHECK(t.min_offset() == 0);
    CHECK(t.max_offset() == 0);
}

TEST_CASE("delta train validates its arguments")
{
    CHECK_THROWS_AS(DeltaTrain(0.0, 1e-12, {}), std::invalid_argument);
    CHECK_THROWS_AS(DeltaTrain(1.0, -1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(DeltaTrain(1.0, 1e-12, {{0, std::nan("")}}), std::invalid_argument);
}

TEST_CASE("kernel_ca weights")
{
    const auto open = kernel_ca(JunctionCoupling::from_rho(0.0), 1.0);
    CHECK(open.size() == 1);
    CHECK(open.weight(0) == 1.0);

    const auto j = JunctionCoupling::from_rho(0.75);
    const auto k = kernel_ca(j, 1.0);
    CHECK(k.min_offset() == 0);
    for (int n = 0; n < 20; ++n) CHECK(k.weight(n) == Approx(j.tau() * std::pow(0.75, n)).epsilon(1e-14));
    CHECK(k.sum_squares() + k.tail_bound() >= 1.0 - 1e-12);
    CHECK(k.sum_squares() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel_ba weights")
{
    const auto open = kernel_ba(JunctionCoupling::from_rho(0.0), 1.0);
    CHECK(open.size() == 1);
    CHECK(open.weight(1) == 1.0);

    const auto k = kernel_ba(JunctionCoupling::from_rho(0.75), 1.0);
    CHECK(k.weight(0) == Approx(-0.75));
    CHECK(k.weight(1) == Approx(0.4375));
    CHECK(k.weight(2) == Approx(0.328125));
    CHECK(k.sum_squares() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel_ab is the mirror of kernel_ba")
{
    const auto j = JunctionCoupling::from_rho(0.6);
    const auto ab = kernel_ab(j, 1.0);
    CHECK(ab.weight(0) == Approx(-0.6));
    CHECK(ab.weight(-1) == Approx(0.64));
    CHECK(ab.max_offset() == 0);
    CHECK(max_diff(ab, mirror(kernel_ba(j, 1.0))) == 0.0);
    CHECK(kernel_ab(JunctionCoupling::from_rho(0.0), 1.0).weight(-1) == 1.0);
}

TEST_CASE("every kept weight clears eps and the tail bound covers the rest")
{
    for (double rho : {0.2, 0.75, 0.97}) {
        const auto j = JunctionCoupling::from_rho(rho);
        for (double eps : {1e-3, 1e-8, 1e-12}) {
            const auto k = kernel_ca(j, 1.0, eps);
            for (const auto& [n, c] : k.weights()) CHECK(std::abs(c) >= eps);
            const double exact_tail = j.tau() * std::pow(rho, double(k.max_offset() + 1)) / (1 - rho);
            CHECK(k.tail_bound() == Approx(exact_tail).epsilon(1e-9));
        }
    }
}

TEST_CASE("kernel_ab undoes kernel_ba")
{
    for (double rho : {0.0, 0.3, 0.75, 0.97}) {
        const auto j = JunctionCoupling::from_rho(rho);
        const DeltaTrain u = convolve(kernel_ab(j, 1.0), kernel_ba(j, 1.0));
        CHECK(u.weight(0) == Approx(1.0).epsilon(1e-12));
        CHECK(u.max_off_center(0) < 1e-10);
    }
}

TEST_CASE("convolution algebra")
{
    const DeltaTrain unit = DeltaTrain::unit(1.0);
    for (int i = 0; i < 50; ++i) {
        const DeltaTrain f = random_train(1.0, 6), g = random_train(1.0, 6), h = random_train(1.0, 6);
        CHECK(max_diff(convolve(f, unit), f) < 1e-15);
        CHECK(max_diff(convolve(f, g), convolve(g, f)) < 1e-14);
        CHECK(max_diff(convolve(convolve(f, g), h), convolve(f, convolve(g, h))) < 1e-13);
        CHECK(max_diff(correlate(f, g), convolve(mirror(f), g)) < 1e-14);
        CHECK(max_diff(mirror(mirror(f)), f) == 0.0);
    }
}

TEST_CASE("correlation of single deltas")
{
    const DeltaTrain a(1.0, 1e-12, {{2, 3.0}}), b(1.0, 1e-12, {{5, 0.5}});
    const DeltaTrain c = correlate(a, b);
    CHECK(c.size() == 1);
    CHECK(c.weight(3) == 1.5);
}

TEST_CASE("kernel autocorrelations")
{
    for (double rho : {0.3, 0.75, 0.97}) {
        const auto j = JunctionCoupling::from_rho(rho);
        const DeltaTrain cc = correlate(kernel_ca(j, 1.0), kernel_ca(j, 1.0));
        for (int k = -10; k <= 10; ++k) CHECK(std::abs(cc.weight(k) - std::pow(rho, std::abs(k))) < 1e-12);
        const DeltaTrain bb = correlate(kernel_ba(j, 1.0), kernel_ba(j, 1.0));
        CHECK(std::abs(bb.weight(0) - 1.0) < 1e-10);
        CHECK(bb.max_off_center(0) < 1e-10);
    }
}

TEST_CASE("train operations require equal periods")
{
    const DeltaTrain a = DeltaTrain::unit(1.0), b = DeltaTrain::unit(2.0);
    CHECK_THROWS_AS(convolve(a, b), PeriodMismatch);
    CHECK_THROWS_AS(correlate(a, b), PeriodMismatch);
    CHECK_THROWS_AS(combine(1.0, a, 1.0, b), PeriodMismatch);
}

TEST_CASE("tail bounds propagate through convolution")
{
    const auto j = JunctionCoupling::from_rho(0.9);
    const DeltaTrain coarse = convolve(kernel_ab(j, 1.0, 1e-4), kernel_ba(j, 1.0, 1e-4));
    const double err = std::max(std::abs(coarse.weight(0) - 1.0), coarse.max_off_center(0));
    CHECK(err <= coarse.tail_bound());
    CHECK(coarse.tail_bound() > 0.0);
}

TEST_CASE("frequency response of the truncated kernels matches the transfer functions")
{
    for (double rho : {0.0, 0.5, 0.9}) {
        const auto j = JunctionCoupling::from_rho(rho);
        const auto ca = kernel_ca(j, 1.0), ba = kernel_ba(j, 1.0), ab = kernel_ab(j, 1.0);
        for (int i = 0; i < 50; ++i) {
            const double w = oracle::uniform(-4.0, 4.0);
            CHECK(std::abs(ca.frequency_response(w) - g_ca(w, j, 1.0)) <= ca.tail_bound() + 1e-13);
            CHECK(std::abs(ba.frequency_response(w) - g_ba(w, j, 1.0)) <= ba.tail_bound() + 1e-13);
            CHECK(std::abs(ab.frequency_response(w) - g_ab(w, j, 1.0)) <= ab.tail_bound() + 1e-13);
        }
    }
}

TEST_CASE("commensurate stride")
{
    CHECK(commensurate_stride(1.0, 0.125) == 8);
    CHECK(commensurate_stride(1.0, 1.0 / 3.0) == 3);
    CHECK_THROWS_AS(commensurate_stride(1.0, 0.3), IncommensurateGrid);
    CHECK_THROWS_AS(commensurate_stride(1.0, 2.0), IncommensurateGrid);
}

TEST_CASE("sampled signal validation and energy")
{
    CHECK_THROWS_AS(SampledSignal(0.0, 0.0, {cplx{1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SampledSignal(0.0, 0.1, {cplx{std::nan(""), 0.0}}), std::invalid_argument);
    const SampledSignal s(1.0, 0.5, {cplx{1.0, 0.0}, cplx{0.0, 2.0}});
    CHECK(s.energy() == Approx(2.5));
    CHECK(s.max_abs() == Approx(2.0));
    CHECK(s.time(1) == 1.5);
}

TEST_CASE("apply with the unit train is the identity")
{
    const SampledSignal s = random_signal(-1.0, 0.25, 40);
    const SampledSignal out = apply(DeltaTrain::unit(1.0), s);
    REQUIRE(out.size() == s.size());
    CHECK(out.t0() == s.t0());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(out[i] == s[i]);
}

TEST_CASE("apply of kernel_ba to an impulse lays out the weights")
{
    const auto j = JunctionCoupling::from_rho(0.75);
    const auto k = kernel_ba(j, 1.0, 1e-6);
    std::vector<cplx> v(4, cplx{});
    v[0] = 1.0;
    const SampledSignal out = apply(k, SampledSignal(0.0, 0.25, v));
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double expect = i % 4 == 0 ? k.weight(static_cast<std::int64_t>(i / 4)) : 0.0;
        CHECK(std::abs(out[i] - expect) < 1e-15);
    }
}

TEST_CASE("apply agrees with the literal junction recursion")
{
    const auto j = JunctionCoupling::from_rho(0.8);
    const std::size_t stride = 5;
    std::vector<cplx> a(400, cplx{});
    for (std::size_t i = 0; i < 60; ++i) a[i] = {oracle::uniform(-1.0, 1.0), oracle::uniform(-1.0, 1.0)};
    const auto ref = oracle::reflect_sequence(a, 0.8, j.tau(), stride);
    const SampledSignal out = apply(kernel_ba(j, 1.0), SampledSignal(0.0, 1.0 / stride, a));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(out[i] - ref[i]) < 1e-12);
}

TEST_CASE("apply preserves energy for the unimodular output kernel")
{
    const auto j = JunctionCoupling::from_rho(0.7);
    const SampledSignal s = random_signal(0.0, 0.1, 200);
    const SampledSignal out = apply(kernel_ba(j, 1.0, 1e-15), s);
    CHECK(out.energy() == Approx(s.energy()).epsilon(1e-10));
}

TEST_CASE("round trip through kernel_ba and kernel_ab restores the signal")
{
    const auto j = JunctionCoupling::from_rho(0.75);
    const SampledSignal s = random_signal(2.0, 0.5, 30);
    const SampledSignal b = apply(kernel_ba(j, 1.0), s);
    const SampledSignal back = apply(kernel_ab(j, 1.0), b);
    const auto offset = static_cast<std::size_t>(std::llround((s.t0() - back.t0()) / s.dt()));
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(back[offset + i] - s[i]) < 1e-10);
}

TEST_CASE("apply rejects incommensurate sampling")
{
    const SampledSignal s(0.0, 0.3, {cplx{1.0}});
    CHECK_THROWS_AS(apply(DeltaTrain::unit(1.0), s), IncommensurateGrid);
}

TEST_CASE("apply in the time domain matches the transfer function in frequency")
{
    const auto j = JunctionCoupling::from_rho(0.6);
    const double dt = 1.0 / 16.0;
    std::vector<cplx> v(400);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-0.5 * std::pow((i * dt - 5.0) / 0.5, 2));
    const SampledSignal s(0.0, dt, v);
    const SampledSignal out = apply(kernel_ba(j, 1.0, 1e-15), s);
    for (double w : {0.0, 0.7, 2.0}) {
        const cplx in_w = oracle::fourier(s.values(), s.t0(), dt, w);
        const cplx out_w = oracle::fourier(out.values(), out.t0(), dt, w);
        CHECK(std::abs(out_w - g_ba(w, j, 1.0) * in_w) < 1e-10);
    }
}
