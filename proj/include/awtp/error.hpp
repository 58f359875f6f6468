#ifndef AWTP_ERROR_HPP
#define AWTP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace awtp {

enum class ErrorCode {
    NotPrime,
    ExponentNotCoprime,
    WrongLength,
    InfeasibleParameters,
    NotMember,
    DimensionTooLarge,
    InterpolationFailed,
    TooLarge,
    DomainError,
    InvalidSets,
    NotRestricted,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode c) noexcept {
    switch (c) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::ExponentNotCoprime: return "ExponentNotCoprime";
        case ErrorCode::WrongLength: return "WrongLength";
        case ErrorCode::InfeasibleParameters: return "InfeasibleParameters";
        case ErrorCode::NotMember: return "NotMember";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::InterpolationFailed: return "InterpolationFailed";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::InvalidSets: return "InvalidSets";
        case ErrorCode::NotRestricted: return "NotRestricted";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

namespace details {

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace details

}  // namespace awtp

#endif
