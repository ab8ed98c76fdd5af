// echo_kernels.hpp - time-domain Green functions as weighted delta trains
//
// A DeltaTrain is the distribution sum_k c_k delta(t - k T) stored on the exact
// integer lattice k. Weights below the truncation epsilon are dropped and their
// l1 mass is carried in tail_bound(), so every identity checked against a
// truncated train comes with a certified tolerance.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "ringio/core_response.hpp"

namespace ringio {

inline constexpr double kDefaultEps = 1e-12;

class DeltaTrain {
public:
    using Offset = std::int64_t;

    DeltaTrain(double period, double eps, const std::map<Offset, double>& weights,
               double tail_bound = 0.0);

    // The identity element of convolution: {0: 1}.
    static DeltaTrain unit(double period, double eps = kDefaultEps);

    [[nodiscard]] double period() const { return period_; }
    [[nodiscard]] double eps() const { return eps_; }
    [[nodiscard]] double tail_bound() const { return tail_bound_; }
    [[nodiscard]] const std::map<Offset, double>& weights() const { return weights_; }

    // c_k, or 0 when k is not stored.
    [[nodiscard]] double weight(Offset k) const;
    [[nodiscard]] bool empty() const { return weights_.empty(); }
    [[nodiscard]] std::size_t size() const { return weights_.size(); }
    [[nodiscard]] Offset min_offset() const;
    [[nodiscard]] Offset max_offset() const;

    [[nodiscard]] double sum_squares() const;
    [[nodiscard]] double l1_norm() const;
    // Largest |c_k| over k != center.
    [[nodiscard]] double max_off_center(Offset center = 0) const;

    // sum_k c_k e^{i omega k T}: the frequency response of the truncated train.
    [[nodiscard]] cplx frequency_response(double omega) const;

private:
    double period_;
    double eps_;
    double tail_bound_;
    std::map<Offset, double> weights_;
};

class SampledSignal {
public:
    SampledSignal(double t0, double dt, std::vector<cplx> values);

    [[nodiscard]] double t0() const { return t0_; }
    [[nodiscard]] double dt() const { return dt_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] const std::vector<cplx>& values() const { return values_; }
    [[nodiscard]] const cplx& operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] double time(std::size_t i) const { return t0_ + static_cast<double>(i) * dt_; }
    // sum |s|^2 dt
    [[nodiscard]] double energy() const;
    [[nodiscard]] double max_abs() const;

private:
    double t0_;
    double dt_;
    std::vector<cplx> values_;
};

// Number of samples per period; throws IncommensurateGrid unless period/dt is an
// integer within 1e-9 relative.
std::int64_t commensurate_stride(double period, double dt);

// tau rho^n at n >= 0.
DeltaTrain kernel_ca(const JunctionCoupling& j, double T, double eps = kDefaultEps);
// -rho at 0, tau^2 rho^{n-1} at n >= 1.
DeltaTrain kernel_ba(const JunctionCoupling& j, double T, double eps = kDefaultEps);
// -rho at 0, tau^2 rho^{n-1} at -n, n >= 1: the anticausal inverse of kernel_ba.
DeltaTrain kernel_ab(const JunctionCoupling& j, double T, double eps = kDefaultEps);

// (f * g)_k = sum_m f_m g_{k-m}
DeltaTrain convolve(const DeltaTrain& f, const DeltaTrain& g);
// (f star g)_k = sum_n f_n g_{n+k}
DeltaTrain correlate(const DeltaTrain& f, const DeltaTrain& g);
// a f + b g
DeltaTrain combine(double a, const DeltaTrain& f, double b, const DeltaTrain& g);
// c_{-k}
DeltaTrain mirror(const DeltaTrain& f);

// sum_k c_k s(t - k T). The output window is widened so every retained echo fits.
SampledSignal apply(const DeltaTrain& f, const SampledSignal& s);

} // namespace ringio
