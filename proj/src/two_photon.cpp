#include "ringio/two_photon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ringio/errors.hpp"

namespace ringio {

namespace {

using Index = Eigen::Index;

double gauss(double x, double width) { return std::exp(-0.5 * x * x / (width * width)); }

// out(i, :) = sum_k c_k in(i - k*stride, :), rows outside the window read as zero.
Eigen::MatrixXcd apply_along_rows(const Eigen::MatrixXcd& in, const DeltaTrain& kernel, std::int64_t stride)
{
    const Index rows = in.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, in.cols());
    for (const auto& [k, c] : kernel.weights()) {
        const std::int64_t shift = k * stride;
        const Index lo = std::max<Index>(0, static_cast<Index>(shift));
        const Index hi = std::min<Index>(rows, rows + static_cast<Index>(shift));
        if (hi <= lo) continue;
        out.middleRows(lo, hi - lo) += c * in.middleRows(lo - static_cast<Index>(shift), hi - lo);
    }
    return out;
}

std::vector<cplx> apply_windowed(const std::vector<cplx>& in, const DeltaTrain& kernel, std::int64_t stride)
{
    const auto n = static_cast<std::int64_t>(in.size());
    std::vector<cplx> out(in.size());
    for (const auto& [k, c] : kernel.weights()) {
        const std::int64_t shift = k * stride;
        for (std::int64_t i = std::max<std::int64_t>(0, shift); i < std::min(n, n + shift); ++i)
            out[static_cast<std::size_t>(i)] += c * in[static_cast<std::size_t>(i - shift)];
    }
    return out;
}

cplx sample_or_zero(const std::vector<cplx>& v, std::int64_t i)
{
    return (i >= 0 && i < static_cast<std::int64_t>(v.size())) ? v[static_cast<std::size_t>(i)] : cplx{};
}

} // namespace

JointAmplitudeGrid::JointAmplitudeGrid(UniformAxis t1, UniformAxis t2, Eigen::MatrixXcd values)
    : t1_(t1), t2_(t2), values_(std::move(values))
{
    if (values_.rows() != static_cast<Index>(t1_.count) || values_.cols() != static_cast<Index>(t2_.count))
        throw GridMismatch("JointAmplitudeGrid: value matrix does not match the axes");
}

JointAmplitudeGrid JointAmplitudeGrid::symmetric(const UniformAxis& axis, Eigen::MatrixXcd values)
{
    JointAmplitudeGrid g(axis, axis, std::move(values));
    if (!g.is_exchange_symmetric()) throw std::invalid_argument("two-photon amplitude violates exchange symmetry");
    return g;
}

bool JointAmplitudeGrid::is_exchange_symmetric(double tol) const
{
    if (!(t1_ == t2_)) return false;
    const double scale = std::max(1.0, values_.cwiseAbs().maxCoeff());
    return (values_ - values_.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

double JointAmplitudeGrid::norm_squared() const { return values_.squaredNorm() * t1_.step * t2_.step; }

TwoPhotonGaussian::TwoPhotonGaussian(double sigma_, double beta_) : sigma(sigma_), beta(beta_)
{
    if (!(sigma > 0.0) || !(beta > 0.0)) throw std::invalid_argument("TwoPhotonGaussian: sigma and beta must be positive");
}

double TwoPhotonGaussian::operator()(double t1, double t2) const { return gauss(t1 + t2, beta) * gauss(t1 - t2, sigma); }

CwAmplitude::CwAmplitude(UniformAxis axis_, std::vector<cplx> values_) : axis(axis_), values(std::move(values_))
{
    if (values.size() != axis.count) throw GridMismatch("CwAmplitude: sample count does not match the axis");
}

UniformAxis default_two_photon_axis(const TwoPhotonGaussian& g, double T, int echoes)
{
    const double dt = T / 16.0;
    const double reach = 4.0 * (g.sigma + g.beta);
    const double start = -std::ceil(reach / dt) * dt;
    const double stop = reach + std::max(0, echoes) * T;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / dt + 1e-9)) + 1;
    return {start, dt, count};
}

JointAmplitudeGrid gaussian_amplitude(const TwoPhotonGaussian& g, const UniformAxis& axis)
{
    const auto n = static_cast<Index>(axis.count);
    Eigen::MatrixXcd v(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index l = 0; l < n; ++l)
            v(i, l) = g(axis.at(static_cast<std::size_t>(i)), axis.at(static_cast<std::size_t>(l)));
    return JointAmplitudeGrid::symmetric(axis, std::move(v));
}

JointAmplitudeGrid symmetrize(const JointAmplitudeGrid& psi)
{
    if (!(psi.t1_axis() == psi.t2_axis())) throw GridMismatch("symmetrize: axes differ");
    Eigen::MatrixXcd v = psi.values() + psi.values().transpose();
    return {psi.t1_axis(), psi.t2_axis(), std::move(v)};
}

JointAmplitudeGrid transform_output(const JointAmplitudeGrid& phi, const JunctionCoupling& j, double T, double eps)
{
    const std::int64_t s1 = commensurate_stride(T, phi.t1_axis().step);
    const std::int64_t s2 = commensurate_stride(T, phi.t2_axis().step);
    const DeltaTrain k = kernel_ba(j, T, eps);
    Eigen::MatrixXcd rows = apply_along_rows(phi.values(), k, s1);
    Eigen::MatrixXcd both = apply_along_rows(rows.transpose(), k, s2).transpose();
    return {phi.t1_axis(), phi.t2_axis(), std::move(both)};
}

CwOutput cw_output(const CwAmplitude& d, const JunctionCoupling& j, double T, std::int64_t kmax)
{
    if (kmax < 0) throw std::invalid_argument("cw_output: kmax must be >= 0");
    const std::int64_t stride = commensurate_stride(T, d.axis.step);
    const double rho = j.rho();
    const double tau2 = j.tau() * j.tau();

    std::vector<double> rp(static_cast<std::size_t>(2 * kmax + 1));
    rp[0] = 1.0;
    for (std::size_t i = 1; i < rp.size(); ++i) rp[i] = rp[i - 1] * rho;

    // D_out(Delta) = sum_s r[s] D(Delta - s T), s in [-kmax, kmax]
    std::vector<double> r(static_cast<std::size_t>(2 * kmax + 1));
    auto coeff = [&](std::int64_t s) -> double& { return r[static_cast<std::size_t>(s + kmax)]; };
    coeff(0) += rho * rho;
    for (std::int64_t m = 1; m <= kmax; ++m) coeff(-m) -= tau2 * rp[static_cast<std::size_t>(m)];
    for (std::int64_t n = 1; n <= kmax; ++n) coeff(n) -= tau2 * rp[static_cast<std::size_t>(n)];
    for (std::int64_t n = 1; n <= kmax; ++n)
        for (std::int64_t m = 1; m <= kmax; ++m)
            coeff(n - m) += tau2 * tau2 * rp[static_cast<std::size_t>(n + m - 2)];

    const auto n_in = static_cast<std::int64_t>(d.values.size());
    const std::int64_t pad = kmax * stride;
    const std::int64_t n_out = n_in + 2 * pad;
    std::vector<cplx> out(static_cast<std::size_t>(n_out));
    double residual = 0.0;
    for (std::int64_t i = 0; i < n_out; ++i) {
        const std::int64_t src = i - pad;
        cplx acc{};
        for (std::int64_t s = -kmax; s <= kmax; ++s) acc += coeff(s) * sample_or_zero(d.values, src - s * stride);
        out[static_cast<std::size_t>(i)] = acc;
        residual = std::max(residual, std::abs(acc - sample_or_zero(d.values, src)));
    }
    const UniformAxis axis{d.axis.start - static_cast<double>(pad) * d.axis.step, d.axis.step,
                           static_cast<std::size_t>(n_out)};
    return {residual, CwAmplitude(axis, std::move(out))};
}

ResummationSides resummation_sides(double rho, const CwAmplitude& d, double T, std::int64_t nmax, std::int64_t kmax)
{
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("resummation: rho must lie in (0, 1)");
    if (nmax < 1 || kmax < 0) throw std::invalid_argument("resummation: bad truncation");
    const std::int64_t stride = commensurate_stride(T, d.axis.step);
    const auto n = static_cast<std::int64_t>(d.values.size());
    ResummationSides sides{std::vector<cplx>(d.values.size()), std::vector<cplx>(d.values.size())};
    const double pref = rho * rho / (1.0 - rho * rho);
    for (std::int64_t i = 0; i < n; ++i) {
        cplx lhs{};
        for (std::int64_t a = 1; a <= nmax; ++a)
            for (std::int64_t b = 1; b <= nmax; ++b)
                lhs += std::pow(rho, static_cast<double>(a + b)) * sample_or_zero(d.values, i + (a - b) * stride);
        cplx rhs{};
        for (std::int64_t k = -kmax; k <= kmax; ++k)
            rhs += std::pow(rho, static_cast<double>(std::llabs(k))) * sample_or_zero(d.values, i + k * stride);
        sides.double_sum[static_cast<std::size_t>(i)] = lhs;
        sides.resummed[static_cast<std::size_t>(i)] = pref * rhs;
    }
    return sides;
}

double resummation_check(double rho, const CwAmplitude& d, double T, std::int64_t nmax, std::int64_t kmax)
{
    const ResummationSides sides = resummation_sides(rho, d, T, nmax, kmax);
    double worst = 0.0;
    for (std::size_t i = 0; i < sides.double_sum.size(); ++i)
        worst = std::max(worst, std::abs(sides.double_sum[i] - sides.resummed[i]));
    return worst;
}

double F_m(std::int64_t m, double s_sum, const TwoPhotonGaussian& g, const JunctionCoupling& j, double T, double eps)
{
    const auto am = std::llabs(m);
    const double rho = j.rho();
    const double rho2 = rho * rho;
    double c = std::pow(rho, static_cast<double>(am)); // rho^{|m| + 2 j'}
    double sum = 0.0;
    for (std::int64_t jj = 0; c != 0.0 && c >= eps; ++jj, c *= rho2) {
        const double shift = static_cast<double>(am + 2 + 2 * jj) * T;
        sum += c * gauss(s_sum - shift, g.beta);
    }
    return j.tau() * j.tau() * sum;
}

JointAmplitudeGrid gaussian_output_closed_form(const TwoPhotonGaussian& g, const JunctionCoupling& j, double T,
                                               const UniformAxis& axis, double eps)
{
    commensurate_stride(T, axis.step);
    const double rho = j.rho();
    const double tau2 = j.tau() * j.tau();
    std::int64_t mmax = 0;
    for (double c = rho; c != 0.0 && c >= eps; c *= rho) ++mmax;

    // Both F_m and the beta-Gaussians depend on t1 + t2 only.
    const auto n = static_cast<Index>(axis.count);
    const Index n_sum = 2 * n - 1;
    Eigen::MatrixXd bracket(mmax + 1, n_sum); // m = 0: tau^2 F_0 + rho^2 G(u); m >= 1: F_m - rho^m G(u - mT)
    for (Index q = 0; q < n_sum; ++q) {
        const double u = 2.0 * axis.start + static_cast<double>(q) * axis.step;
        bracket(0, q) = tau2 * F_m(0, u, g, j, T, eps) + rho * rho * gauss(u, g.beta);
        double rm = 1.0;
        for (Index m = 1; m <= mmax; ++m) {
            rm *= rho;
            bracket(m, q) = F_m(m, u, g, j, T, eps) - rm * gauss(u - static_cast<double>(m) * T, g.beta);
        }
    }

    Eigen::MatrixXcd v(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index l = 0; l < n; ++l) {
            const double diff = axis.at(static_cast<std::size_t>(i)) - axis.at(static_cast<std::size_t>(l));
            const Index q = i + l;
            double s = bracket(0, q) * gauss(diff, g.sigma);
            for (Index m = 1; m <= mmax; ++m) {
                const double mt = static_cast<double>(m) * T;
                s += tau2 * bracket(m, q) * (gauss(diff + mt, g.sigma) + gauss(diff - mt, g.sigma));
            }
            v(i, l) = s;
        }
    }
    return {axis, axis, std::move(v)};
}

std::pair<SampledSignal, SampledSignal> separable_output(const SampledSignal& phi1, const SampledSignal& phi2,
                                                         const JunctionCoupling& j, double T, FactorPath path,
                                                         double eps)
{
    const double rho = j.rho();
    if (path == FactorPath::automatic) path = rho > 0.0 ? FactorPath::closed_form : FactorPath::kernel;

    auto transform = [&](const SampledSignal& phi) -> SampledSignal {
        const std::int64_t stride = commensurate_stride(T, phi.dt());
        if (path == FactorPath::kernel)
            return {phi.t0(), phi.dt(), apply_windowed(phi.values(), kernel_ba(j, T, eps), stride)};

        if (rho == 0.0) throw DivisionByZeroRho("the tau^2/rho factor form is singular at rho = 0; use the kernel form");
        const double lead = j.tau() * j.tau() / rho;
        const auto n = static_cast<std::int64_t>(phi.size());
        const auto& in = phi.values();
        std::vector<cplx> out(phi.size());
        for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = -rho * in[static_cast<std::size_t>(i)];
        double rn = rho;
        for (std::int64_t e = 1; lead * rn >= eps && e * stride < n; ++e, rn *= rho) {
            const std::int64_t shift = e * stride;
            for (std::int64_t i = shift; i < n; ++i)
                out[static_cast<std::size_t>(i)] += lead * rn * in[static_cast<std::size_t>(i - shift)];
        }
        return {phi.t0(), phi.dt(), std::move(out)};
    };
    return {transform(phi1), transform(phi2)};
}

JointAmplitudeGrid outer_product(const SampledSignal& psi1, const SampledSignal& psi2)
{
    Eigen::Map<const Eigen::VectorXcd> a(psi1.values().data(), static_cast<Index>(psi1.size()));
    Eigen::Map<const Eigen::VectorXcd> b(psi2.values().data(), static_cast<Index>(psi2.size()));
    Eigen::MatrixXcd v = a * b.transpose();
    return {UniformAxis{psi1.t0(), psi1.dt(), psi1.size()}, UniformAxis{psi2.t0(), psi2.dt(), psi2.size()}, std::move(v)};
}

Eigen::MatrixXd correlation_function(const JointAmplitudeGrid& phi) { return phi.values().cwiseAbs2(); }

std::pair<double, double> peak_locate(const JointAmplitudeGrid& phi)
{
    const auto& v = phi.values();
    if (v.size() == 0) throw std::invalid_argument("peak_locate: empty grid");
    Index bi = 0, bl = 0;
    double best = -1.0;
    for (Index i = 0; i < v.rows(); ++i) {
        for (Index l = 0; l < v.cols(); ++l) {
            const double mag = std::abs(v(i, l));
            const double tol = 1e-12 * std::max(best, 0.0);
            const bool better = mag > best + tol;
            const bool tie = !better && std::abs(mag - best) <= tol;
            const bool earlier = (i + l < bi + bl) || (i + l == bi + bl && i < bi);
            if (better || (tie && earlier)) {
                best = std::max(best, mag);
                bi = i;
                bl = l;
            }
        }
    }
    return {phi.t1_axis().at(static_cast<std::size_t>(bi)), phi.t2_axis().at(static_cast<std::size_t>(bl))};
}

Eigen::VectorXd separability_rank(const JointAmplitudeGrid& phi)
{
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(phi.values());
    Eigen::VectorXd s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return s;
    return s / s(0);
}

} // namespace ringio
