#include "ngs/error.hpp"

namespace ngs {

const char* to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::non_divisible_spacing: return "NonDivisibleSpacing";
    case Errc::tau_not_dividing_time: return "TauNotDividingTime";
    case Errc::horizon_exceeds_collar: return "HorizonExceedsCollar";
    case Errc::infinite_horizon_neumann: return "InfiniteHorizonNeumann";
    case Errc::negative_rate: return "NegativeRate";
    case Errc::unknown_case: return "UnknownCase";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::unsupported_variant: return "UnsupportedVariant";
    case Errc::factorization_failure: return "FactorizationFailure";
    case Errc::non_finite_state: return "NonFiniteState";
    case Errc::zero_reference: return "ZeroReference";
    case Errc::max_steps_exceeded: return "MaxStepsExceeded";
    }
    return "Unknown";
}

int exit_code(Errc code) noexcept
{
    switch (code) {
    case Errc::factorization_failure:
    case Errc::non_finite_state:
    case Errc::zero_reference:
        return 3;
    case Errc::max_steps_exceeded:
        return 4;
    default:
        return 2;
    }
}

} // namespace ngs
