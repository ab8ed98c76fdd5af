// commutator_lab.hpp - field commutators of the empty ring as c-number delta trains
//
// All maps in the empty cavity are linear in the input A(t), so every
// commutator reduces to a correlation of generating kernels.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ringio/axis.hpp"
#include "ringio/core_response.hpp"
#include "ringio/echo_kernels.hpp"

namespace ringio {

struct SpaceTimePoint {
    double z;
    double t;
};

// [C(0+,t), C^dagger(0+,t')] = sum_k rho^|k| delta(t - t' - kT), |k| <= kmax.
DeltaTrain cavity_commutator_train(const JunctionCoupling& j, double T, std::int64_t kmax,
                                   double eps = kDefaultEps);

struct TemporalSupport {
    std::int64_t k;
    double weight;
    double t_hit; // time t at which the k-th term fires for z = p.z
};

// Support of [C(z,t), C^dagger(z',t')] in t at fixed z = p.z, for |k| <= kmax.
std::vector<TemporalSupport> spacetime_commutator_support(const SpaceTimePoint& p,
                                                          const SpaceTimePoint& pprime,
                                                          const JunctionCoupling& j,
                                                          const RingGeometry& ring,
                                                          std::int64_t kmax);

struct SpatialSupport {
    std::int64_t k;
    double weight;
    double z_hit;
};

// Positions z in [0, L) where [C(z,p.t), C^dagger(z',t')] fires. Exactly one
// term survives for any pair of times: the ring contains one crossing.
std::vector<SpatialSupport> spatial_commutator_support(const SpaceTimePoint& p,
                                                       const SpaceTimePoint& pprime,
                                                       const JunctionCoupling& j,
                                                       const RingGeometry& ring,
                                                       std::int64_t kmax);

// [C(0+,t), A^dagger(t')] = tau sum_{n>=0} rho^n delta(t - t' - nT). Causal.
DeltaTrain cross_commutator_ca(const JunctionCoupling& j, double T, std::int64_t nmax,
                               double eps = kDefaultEps);

struct OutputCommutatorReport {
    DeltaTrain via_correlation;
    std::optional<DeltaTrain> via_decomposition; // absent at rho = 0
    double zero_offset_error;                    // |w(0) - 1|, worst path
    double max_spurious;                         // max |w(k != 0)|, worst path
    std::optional<double> path_disagreement;     // max_k |w_corr(k) - w_dec(k)|
};

// [B(t), B^dagger(t')] from the autocorrelation of the output kernel, and (rho > 0)
// from the decomposition B = -(1/rho) A + (tau/rho) C(0+).
OutputCommutatorReport output_commutator_check(const JunctionCoupling& j, double T,
                                               double eps = kDefaultEps);
// Same, with the correlation path driven by an arbitrary output kernel.
OutputCommutatorReport output_commutator_check(const JunctionCoupling& j, double T, double eps,
                                               const DeltaTrain& output_kernel);

struct CommutatorMap {
    UniformAxis z_axis;
    UniformAxis t_axis;
    Eigen::MatrixXd values; // rows follow t, columns follow z
    double broadening;
    double zprime;
    double tprime;
    double rho;
};

struct CommutatorFigureOptions {
    double t_start{-2.0}; // in units of T
    double t_stop{2.0};
    std::size_t t_points{401};
    std::size_t z_points{200};
    double tprime{0.0};
};

// |[C(z,t), C^dagger(z',t')]| on a (t, z) grid with each delta drawn as a
// unit-mass Gaussian of width `broadening`.
CommutatorMap commutator_figure(const JunctionCoupling& j, double zprime, const RingGeometry& ring,
                                double broadening, const CommutatorFigureOptions& options = {});

} // namespace ringio
