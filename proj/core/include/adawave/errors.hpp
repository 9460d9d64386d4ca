#ifndef ADAWAVE_ERRORS_HPP
#define ADAWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adawave {

// Bad argument or malformed input (wrong lengths, out-of-range indices, ...).
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A required observation or grid point is missing from the design.
struct InconsistentDesign : std::runtime_error {
    explicit InconsistentDesign(const std::string& what) : std::runtime_error(what) {}
};

// The stage schedule cannot cover the mandatory grid insertion.
struct ScheduleInfeasible : std::runtime_error {
    explicit ScheduleInfeasible(const std::string& what) : std::runtime_error(what) {}
};

// Noise estimation requested but no fine-scale coefficients are available.
struct EstimationUnavailable : std::runtime_error {
    explicit EstimationUnavailable(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adawave

#endif
