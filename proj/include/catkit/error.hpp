#pragma once

#include <stdexcept>
#include <string>

namespace catkit {

enum class ErrorCode {
    invalid_argument,
    domain,
    unsupported_order,
    overflow,
    no_finite_permittivity,
    pole,
    resolution,
    pairing_ambiguity,
    missed_root,
    quadrature,
    degenerate,
    insufficient_data,
    io,
};

// Every failure raised by the library carries a code so the C layer can map
// it to a status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace catkit
