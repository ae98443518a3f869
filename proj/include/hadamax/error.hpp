#pragma once

#include <stdexcept>
#include <string>

namespace hadamax {

enum class Errc {
    NotPrime,
    NotPrimePower,
    TooLarge,
    InvariantBreach,
    DivisionByZero,
    ZeroHasNoLog,
    ZeroArgument,
    NoSubfield,
    BadOrder,
    NoMatch,
    WrongResidue,
    BadForm,
    BadE,
    BadEll,
    BadH,
    NotFound,
    NotHadamard,
    LengthMismatch,
    SchemeInvalid,
    ProfileMismatch,
    BudgetExceeded,
    ParseError,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto its exit-code contract.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace hadamax
