#pragma once

#include <stdexcept>
#include <string>

namespace rtq {

// Error categories surfaced by the library. Each carries a human-readable
// message naming the offending value (cap, modulus, index, ...).
enum class Errc {
    UnsupportedType,
    WeylGroupTooLarge,
    LevelTooSmall,
    IndexOutOfAlcove,
    ZeroModulus,
    NotCoprime,
    ZeroDenominator,
    CZero,
    ZeroPivot,
    PreconditionViolation,
    SingularB,
    NonIntegralB,
    MissingSignTable,
    ZeroAlpha,
    PZero,
    DegenerateData,
    BudgetExceeded,
    ParseError,
    Overflow,
    InvalidArgument,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace rtq
