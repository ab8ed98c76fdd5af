// two_photon.hpp - two-photon wave-packet shaping by reflection from the ring
//
// Joint amplitudes live on uniform grids whose spacing divides T. Each photon
// is mapped by the output kernel independently, so every grid transform is a
// per-axis application of the same delta train. Values outside a grid's
// window are treated as zero, and outputs are reported on the input window.

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ringio/axis.hpp"
#include "ringio/core_response.hpp"
#include "ringio/echo_kernels.hpp"

namespace ringio {

class JointAmplitudeGrid {
public:
    // Any amplitude, e.g. an unsymmetrized psi or a product state.
    JointAmplitudeGrid(UniformAxis t1, UniformAxis t2, Eigen::MatrixXcd values);

    // A physical two-photon wave function; throws unless Phi(t1,t2) = Phi(t2,t1) to 1e-12.
    static JointAmplitudeGrid symmetric(const UniformAxis& axis, Eigen::MatrixXcd values);

    [[nodiscard]] const UniformAxis& t1_axis() const { return t1_; }
    [[nodiscard]] const UniformAxis& t2_axis() const { return t2_; }
    [[nodiscard]] const Eigen::MatrixXcd& values() const { return values_; }
    [[nodiscard]] bool is_exchange_symmetric(double tol = 1e-12) const;
    // sum |Phi|^2 dt1 dt2
    [[nodiscard]] double norm_squared() const;

private:
    UniformAxis t1_;
    UniformAxis t2_;
    Eigen::MatrixXcd values_;
};

struct TwoPhotonGaussian {
    double sigma; // correlation time
    double beta;  // pulse duration

    TwoPhotonGaussian(double sigma_, double beta_);
    // exp[-(t1+t2)^2 / 2 beta^2] exp[-(t1-t2)^2 / 2 sigma^2]
    [[nodiscard]] double operator()(double t1, double t2) const;
};

// A cw-pumped pair: Phi(t1, t2) = D(t1 - t2), D sampled on `axis` and zero outside it.
struct CwAmplitude {
    UniformAxis axis;
    std::vector<cplx> values;

    CwAmplitude(UniformAxis axis_, std::vector<cplx> values_);
    [[nodiscard]] double window_start() const { return axis.start; }
    [[nodiscard]] double window_stop() const { return axis.back(); }
};

// Default grid: dt = T/16 on [-4(sigma+beta), 4(sigma+beta) + echoes*T].
UniformAxis default_two_photon_axis(const TwoPhotonGaussian& g, double T, int echoes);

JointAmplitudeGrid gaussian_amplitude(const TwoPhotonGaussian& g, const UniformAxis& axis);

// Phi(t1,t2) + Phi(t2,t1)
JointAmplitudeGrid symmetrize(const JointAmplitudeGrid& psi);

// Phi_out(t1,t2) = sum_{n,m>=0} K_n K_m Phi(t1 - nT, t2 - mT), K = kernel_ba.
JointAmplitudeGrid transform_output(const JointAmplitudeGrid& phi, const JunctionCoupling& j,
                                    double T, double eps = kDefaultEps);

struct CwOutput {
    double residual;       // max |D_out - D| over the widened window
    CwAmplitude reconstructed;
};

// Four-term cw output with every sum truncated at kmax, evaluated on D's window
// widened by kmax*T on both sides.
CwOutput cw_output(const CwAmplitude& d, const JunctionCoupling& j, double T, std::int64_t kmax);

struct ResummationSides {
    std::vector<cplx> double_sum; // sum_{n,m=1}^{nmax} rho^{n+m} D(Delta + (n-m)T)
    std::vector<cplx> resummed;   // rho^2/(1-rho^2) sum_{|k|<=kmax} rho^|k| D(Delta + kT)
};

ResummationSides resummation_sides(double rho, const CwAmplitude& d, double T, std::int64_t nmax,
                                   std::int64_t kmax);
// max |double_sum - resummed| over the samples of d; rho must lie in (0, 1).
double resummation_check(double rho, const CwAmplitude& d, double T, std::int64_t nmax,
                         std::int64_t kmax);

// F_m(t1+t2) = tau^2 sum_{j>=0} rho^{|m|+2j} exp[-(t1+t2 - (|m|+2+2j)T)^2 / 2 beta^2]
double F_m(std::int64_t m, double s_sum, const TwoPhotonGaussian& g, const JunctionCoupling& j,
           double T, double eps = kDefaultEps);

// The three-term closed form of the reflected Gaussian pair, evaluated pointwise.
JointAmplitudeGrid gaussian_output_closed_form(const TwoPhotonGaussian& g, const JunctionCoupling& j,
                                               double T, const UniformAxis& axis,
                                               double eps = kDefaultEps);

enum class FactorPath {
    automatic,   // closed form for rho > 0, kernel form at rho = 0
    closed_form, // -rho phi(t) + (tau^2/rho) sum rho^n phi(t - nT); throws at rho = 0
    kernel,      // kernel_ba applied on the window
};

// Per-photon factors of the reflected product state phi1(t1) phi2(t2).
std::pair<SampledSignal, SampledSignal> separable_output(const SampledSignal& phi1,
                                                         const SampledSignal& phi2,
                                                         const JunctionCoupling& j, double T,
                                                         FactorPath path = FactorPath::automatic,
                                                         double eps = kDefaultEps);

JointAmplitudeGrid outer_product(const SampledSignal& psi1, const SampledSignal& psi2);

// |Phi|^2
Eigen::MatrixXd correlation_function(const JointAmplitudeGrid& phi);

// argmax |Phi|; among values equal within 1e-12 relative, the smallest t1+t2
// wins, then the smallest t1.
std::pair<double, double> peak_locate(const JointAmplitudeGrid& phi);

// Singular values of the grid matrix, descending, divided by the largest.
Eigen::VectorXd separability_rank(const JointAmplitudeGrid& phi);

} // namespace ringio
