#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boolcsp {

enum class ErrorCode {
    parse,           // malformed input file
    structure,       // mismatched universes, bad indices, bad arities
    precondition,    // operation called outside its contract
    resource,        // an exhaustive path would exceed its cap
    unsupported,     // e.g. oracle asked for an arity it cannot enumerate
    unavailable,     // a construction has no witness for this input
    oracle_mismatch, // a cross-check disagreed: always a bug
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::parse: return "E_PARSE";
    case ErrorCode::structure: return "E_STRUCTURE";
    case ErrorCode::precondition: return "E_PRECONDITION";
    case ErrorCode::resource: return "E_RESOURCE";
    case ErrorCode::unsupported: return "E_UNSUPPORTED";
    case ErrorCode::unavailable: return "E_UNAVAILABLE";
    case ErrorCode::oracle_mismatch: return "E_ORACLE_MISMATCH";
    }
    return "E_UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Caps that keep every exhaustive path at desk scale.
struct Limits {
    int count_vars = 24;         // count_models and other 2^|X| enumerations
    int bruteforce_equiv_vars = 20;
    int backtrack_vars = 48;     // non-Schaefer search
    int iso_bruteforce_vars = 8; // |X|! oracle
    int permutation_search_vars = 9;
    int maximality_vars = 64;
    std::size_t closure_tuples = 4'000'000;
};

} // namespace boolcsp
