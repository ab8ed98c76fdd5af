#pragma once

#include <stdexcept>
#include <string>

namespace ringio {

// Raised when a round-trip time is not an integer multiple of a sample spacing.
// Callers are expected to resample; no interpolation is ever attempted.
class IncommensurateGrid : public std::invalid_argument {
public:
    explicit IncommensurateGrid(const std::string& what) : std::invalid_argument(what) {}
};

// Two signals or grids that must share sampling do not.
class GridMismatch : public std::invalid_argument {
public:
    explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Delta trains with different base periods cannot be combined.
class PeriodMismatch : public std::invalid_argument {
public:
    explicit PeriodMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Quasimode integration step is too coarse relative to 1/kappa.
class StepTooCoarse : public std::invalid_argument {
public:
    explicit StepTooCoarse(const std::string& what) : std::invalid_argument(what) {}
};

// A closed form that divides by rho was requested at rho = 0.
class DivisionByZeroRho : public std::domain_error {
public:
    explicit DivisionByZeroRho(const std::string& what) : std::domain_error(what) {}
};

} // namespace ringio
