// validation.hpp - the invariant suite behind `ringio validate`

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ringio/core_response.hpp"
#include "ringio/echo_kernels.hpp"

namespace ringio {

using KernelFactory = std::function<DeltaTrain(const JunctionCoupling&, double T, double eps)>;

struct ValidationConfig {
    JunctionCoupling coupling = JunctionCoupling::from_rho(0.75);
    double T = 1.0;
    double eps = kDefaultEps;
    // Output kernel under test; tests inject a corrupted kernel here.
    KernelFactory output_kernel = [](const JunctionCoupling& j, double T, double eps) {
        return kernel_ba(j, T, eps);
    };
};

struct CheckResult {
    std::string name;
    bool passed{false};
    bool skipped{false};
    double measured{0.0};
    double tolerance{0.0};
    std::string note;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    [[nodiscard]] bool all_passed() const;
    [[nodiscard]] std::size_t failures() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

ValidationReport run_validation(const ValidationConfig& config);

} // namespace ringio
