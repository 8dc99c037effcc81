#ifndef ARRHOM_ERROR_HPP
#define ARRHOM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace arrhom {

enum class ErrorCode {
    OrderMismatch,
    DivisionByZero,
    ModeMismatch,
    DuplicateLine,
    DegenerateLine,
    NormalizationFailed,
    NotNormalized,
    NotALocalSystem,
    TrivialOnLine,
    NotResonant,
    NotAdjacent,
    UnboundedChamber,
    PencilNotCovered,
    InvalidArgument,
    ParseError,
    ConsistencyFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace arrhom

#endif
