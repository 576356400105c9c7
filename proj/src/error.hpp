#pragma once

#include <stdexcept>
#include <string>

namespace chebmod {

// Typed failure categories. Every throwing path in the library uses Error with
// one of these codes; the C API and CLI map them to stable status / exit codes.
enum class errc {
    invalid_argument,        // domain violation in caller-supplied input
    unsupported_p3_level,    // closed-form count requested for p = 3, k >= 3
    oracle_budget_exceeded,  // enumeration would touch more nodes than the budget
    factor_budget_exceeded,  // trial-division factorization bound exceeded
    order_budget_exceeded,   // multiplicative-order iteration cap exceeded
    not_invertible,          // order/cord of a non-unit requested
    not_periodic,            // classification requested for a non-periodic point
    insufficient_precision,  // p-adic probe hit its working-precision ceiling
    internal,                // invariant violation inside the library (a bug)
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace chebmod
