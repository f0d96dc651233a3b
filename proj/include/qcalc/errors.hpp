#pragma once

#include <stdexcept>
#include <string>

namespace qcalc {

// Thrown when a truncated series or lattice sum fails to meet its tolerance
// within the configured term budget, or when a magnitude guard trips under
// the `error` policy. Domain violations use std::domain_error and overflow
// uses std::range_error.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qcalc
