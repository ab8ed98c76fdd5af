#include "ringio/echo_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ringio/errors.hpp"

namespace ringio {

namespace {

void require_same_period(const DeltaTrain& f, const DeltaTrain& g)
{
    if (std::abs(f.period() - g.period()) > 1e-12 * std::max(f.period(), g.period()))
        throw PeriodMismatch("delta trains have different base periods");
}

// Geometric train first * ratio^n, placed at offset start + direction*n while
// the weight stays at or above eps. Returns the dropped l1 mass.
double geometric_tail(std::map<DeltaTrain::Offset, double>& w, DeltaTrain::Offset start, int direction,
                      double first, double ratio, double eps)
{
    double c = first;
    DeltaTrain::Offset k = start;
    while (std::abs(c) >= eps && c != 0.0) {
        w[k] = c;
        c *= ratio;
        k += direction;
    }
    return ratio < 1.0 ? std::abs(c) / (1.0 - ratio) : 0.0;
}

} // namespace

DeltaTrain::DeltaTrain(double period, double eps, const std::map<Offset, double>& weights, double tail_bound)
    : period_(period), eps_(eps), tail_bound_(tail_bound)
{
    if (!(period > 0.0)) throw std::invalid_argument("DeltaTrain: period must be positive");
    if (!(eps >= 0.0)) throw std::invalid_argument("DeltaTrain: eps must be non-negative");
    if (!(tail_bound >= 0.0)) throw std::invalid_argument("DeltaTrain: tail bound must be non-negative");
    for (const auto& [k, c] : weights) {
        if (!std::isfinite(c)) throw std::invalid_argument("DeltaTrain: non-finite weight");
        if (c == 0.0) continue;
        if (std::abs(c) < eps) {
            tail_bound_ += std::abs(c);
            continue;
        }
        weights_.emplace(k, c);
    }
}

DeltaTrain DeltaTrain::unit(double period, double eps) { return {period, eps, {{0, 1.0}}}; }

double DeltaTrain::weight(Offset k) const
{
    const auto it = weights_.find(k);
    return it == weights_.end() ? 0.0 : it->second;
}

DeltaTrain::Offset DeltaTrain::min_offset() const { return weights_.empty() ? 0 : weights_.begin()->first; }
DeltaTrain::Offset DeltaTrain::max_offset() const { return weights_.empty() ? 0 : weights_.rbegin()->first; }

double DeltaTrain::sum_squares() const
{
    double s = 0.0;
    for (const auto& [k, c] : weights_) s += c * c;
    return s;
}

double DeltaTrain::l1_norm() const
{
    double s = 0.0;
    for (const auto& [k, c] : weights_) s += std::abs(c);
    return s;
}

double DeltaTrain::max_off_center(Offset center) const
{
    double m = 0.0;
    for (const auto& [k, c] : weights_)
        if (k != center) m = std::max(m, std::abs(c));
    return m;
}

cplx DeltaTrain::frequency_response(double omega) const
{
    cplx s{0.0, 0.0};
    for (const auto& [k, c] : weights_)
        s += c * std::polar(1.0, std::remainder(omega * period_ * static_cast<double>(k), 2.0 * std::numbers::pi));
    return s;
}

SampledSignal::SampledSignal(double t0, double dt, std::vector<cplx> values)
    : t0_(t0), dt_(dt), values_(std::move(values))
{
    if (!(dt > 0.0)) throw std::invalid_argument("SampledSignal: dt must be positive");
    if (!std::isfinite(t0)) throw std::invalid_argument("SampledSignal: t0 must be finite");
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("SampledSignal: non-finite sample");
}

double SampledSignal::energy() const
{
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return s * dt_;
}

double SampledSignal::max_abs() const
{
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

std::int64_t commensurate_stride(double period, double dt)
{
    const double ratio = period / dt;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(ratio - n) > 1e-9 * ratio)
        throw IncommensurateGrid("period " + std::to_string(period) + " is not an integer multiple of dt " +
                                 std::to_string(dt) + "; resample the signal");
    return static_cast<std::int64_t>(n);
}

DeltaTrain kernel_ca(const JunctionCoupling& j, double T, double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("kernel_ca: eps must be positive");
    std::map<DeltaTrain::Offset, double> w;
    const double tail = geometric_tail(w, 0, +1, j.tau(), j.rho(), eps);
    return {T, eps, w, tail};
}

DeltaTrain kernel_ba(const JunctionCoupling& j, double T, double eps)
{
    if (!(eps > 0.0)) throw std::invalid_argument("kernel_ba: eps must be positive");
    std::map<DeltaTrain::Offset, double> w;
    double tail = 0.0;
    if (j.rho() >= eps) w[0] = -j.rho();
    else tail += j.rho();
    tail += geometric_tail(w, 1, +1, j.tau() * j.tau(), j.rho(), eps);
    return {T, eps, w, tail};
}

DeltaTrain kernel_ab(const JunctionCoupling& j, double T, double eps) { return mirror(kernel_ba(j, T, eps)); }

DeltaTrain mirror(const DeltaTrain& f)
{
    std::map<DeltaTrain::Offset, double> w;
    for (const auto& [k, c] : f.weights()) w[-k] = c;
    return {f.period(), f.eps(), w, f.tail_bound()};
}

DeltaTrain convolve(const DeltaTrain& f, const DeltaTrain& g)
{
    require_same_period(f, g);
    std::map<DeltaTrain::Offset, double> w;
    for (const auto& [m, fm] : f.weights())
        for (const auto& [n, gn] : g.weights()) w[m + n] += fm * gn;
    // |f_true * g_true - f * g|_1 <= |f|_1 t_g + |g|_1 t_f + t_f t_g
    const double tail = f.l1_norm() * g.tail_bound() + g.l1_norm() * f.tail_bound() +
                        f.tail_bound() * g.tail_bound();
    return {f.period(), std::max(f.eps(), g.eps()), w, tail};
}

DeltaTrain correlate(const DeltaTrain& f, const DeltaTrain& g)
{
    require_same_period(f, g);
    std::map<DeltaTrain::Offset, double> w;
    for (const auto& [n, fn] : f.weights())
        for (const auto& [m, gm] : g.weights()) w[m - n] += fn * gm;
    const double tail = f.l1_norm() * g.tail_bound() + g.l1_norm() * f.tail_bound() +
                        f.tail_bound() * g.tail_bound();
    return {f.period(), std::max(f.eps(), g.eps()), w, tail};
}

DeltaTrain combine(double a, const DeltaTrain& f, double b, const DeltaTrain& g)
{
    require_same_period(f, g);
    std::map<DeltaTrain::Offset, double> w;
    for (const auto& [k, c] : f.weights()) w[k] += a * c;
    for (const auto& [k, c] : g.weights()) w[k] += b * c;
    const double tail = std::abs(a) * f.tail_bound() + std::abs(b) * g.tail_bound();
    return {f.period(), std::max(f.eps(), g.eps()), w, tail};
}

SampledSignal apply(const DeltaTrain& f, const SampledSignal& s)
{
    const std::int64_t stride = commensurate_stride(f.period(), s.dt());
    if (f.empty()) return {s.t0(), s.dt(), std::vector<cplx>(s.size(), cplx{})};

    const auto kmin = f.min_offset();
    const auto kmax = f.max_offset();
    const auto n_in = static_cast<std::int64_t>(s.size());
    const std::int64_t n_out = n_in + (kmax - kmin) * stride;
    std::vector<cplx> out(static_cast<std::size_t>(n_out));
    const auto& in = s.values();
    for (const auto& [k, c] : f.weights()) {
        const std::int64_t shift = (k - kmin) * stride;
        for (std::int64_t i = 0; i < n_in; ++i) out[static_cast<std::size_t>(i + shift)] += c * in[static_cast<std::size_t>(i)];
    }
    return {s.t0() + static_cast<double>(kmin) * f.period(), s.dt(), std::move(out)};
}

} // namespace ringio
