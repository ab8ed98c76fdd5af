#pragma once

#include <cstddef>
#include <stdexcept>

namespace ringio {

// Uniform 1-D sampling: start + i * step for i in [0, count).
struct UniformAxis {
    double start{0.0};
    double step{1.0};
    std::size_t count{0};

    UniformAxis() = default;
    UniformAxis(double start_, double step_, std::size_t count_)
        : start(start_), step(step_), count(count_)
    {
        if (!(step > 0.0)) throw std::invalid_argument("UniformAxis: step must be positive");
    }

    // count points from lo to hi inclusive.
    static UniformAxis spanning(double lo, double hi, std::size_t count)
    {
        if (count < 2 || !(hi > lo)) throw std::invalid_argument("UniformAxis::spanning: need hi > lo and count >= 2");
        return {lo, (hi - lo) / static_cast<double>(count - 1), count};
    }

    [[nodiscard]] double at(std::size_t i) const { return start + static_cast<double>(i) * step; }
    [[nodiscard]] double back() const { return at(count - 1); }
    [[nodiscard]] std::size_t size() const { return count; }

    friend bool operator==(const UniformAxis&, const UniformAxis&) = default;
};

// Angular-frequency sampling used by the spectral routines.
using FrequencyGrid = UniformAxis;

} // namespace ringio
