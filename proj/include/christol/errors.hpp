#pragma once

#include <stdexcept>
#include <string>

namespace christol {

enum class errc {
    not_prime,
    reducible_modulus,
    degree_mismatch,
    field_too_large,
    division_by_zero,
    field_mismatch,
    not_divisible,
    both_constant_in_y,
    not_separable,
    degree_zero,
    invalid_prefix,
    smoothness_check_failed,
    prefix_mismatch,
    precision_exhausted,
    non_unit_denominator,
    ambiguous_continuation,
    no_continuation,
    digit_out_of_range,
    state_explosion,
    parse_error,
    invariant_breach,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::not_prime: return "NotPrime";
    case errc::reducible_modulus: return "ReducibleModulus";
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::field_too_large: return "FieldTooLarge";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::not_divisible: return "NotDivisible";
    case errc::both_constant_in_y: return "BothConstantInY";
    case errc::not_separable: return "NotSeparable";
    case errc::degree_zero: return "DegreeZero";
    case errc::invalid_prefix: return "InvalidPrefix";
    case errc::smoothness_check_failed: return "SmoothnessCheckFailed";
    case errc::prefix_mismatch: return "PrefixMismatch";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::non_unit_denominator: return "NonUnitDenominator";
    case errc::ambiguous_continuation: return "AmbiguousContinuation";
    case errc::no_continuation: return "NoContinuation";
    case errc::digit_out_of_range: return "DigitOutOfRange";
    case errc::state_explosion: return "StateExplosion";
    case errc::parse_error: return "ParseError";
    case errc::invariant_breach: return "InvariantBreach";
    }
    return "UnknownError";
}

// Single exception type; callers dispatch on `code`.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) raise(code, what);
}

} // namespace christol
