#pragma once

#include <stdexcept>
#include <string>

namespace hsim {

// Bad argument values (ranges, constraint violations).
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inconsistent simulation settings, e.g. a horizon too small for the scale.
struct configuration_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A statistic could not be formed from the data (degenerate regression etc).
struct estimation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariant; never expected with validated inputs.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace hsim
