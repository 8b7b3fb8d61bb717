#pragma once

#include <stdexcept>
#include <string>

namespace ngs {

enum class Errc {
    // configuration / precondition violations
    non_divisible_spacing,
    tau_not_dividing_time,
    horizon_exceeds_collar,
    infinite_horizon_neumann,
    negative_rate,
    unknown_case,
    invalid_argument,
    unsupported_variant,
    // numerical failures
    factorization_failure,
    non_finite_state,
    zero_reference,
    // run control
    max_steps_exceeded,
};

const char* to_string(Errc code) noexcept;

// Process exit code for the CLI: 2 config, 3 numerical, 4 max steps.
int exit_code(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace ngs
