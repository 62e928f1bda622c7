#pragma once

#include <stdexcept>
#include <string>

namespace decc {

// Every operator-visible failure class. The CLI maps kinds onto its
// documented exit codes; library callers can switch on kind().
enum class ErrorKind {
    Usage,        // bad arguments or parameter invariant violation
    Parse,        // malformed file or wire data
    Key,          // key material or key file problem
    SeqMismatch,  // reference sequence unknown or fingerprint disagrees
    Tamper,       // DNA-layer integrity check failed
    Entropy,      // randomness source failure
    Capacity,     // reference sequence too short for the payload
    Range,        // value outside the embeddable/representable range
    Embedding,    // Koblitz search exhausted every candidate x
    Validation,   // point not on curve / malformed group element
    Alphabet,     // base outside {A,C,G,T}
    Framing,      // length or alignment inconsistency
    NotFound,     // store lookup miss
    Conflict,     // duplicate identifier
    DivByZero,    // field inversion of zero
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

// Exit codes: 0 ok, 2 usage, 3 parse/format, 4 key, 5 sequence mismatch,
// 6 tamper detected, 7 entropy failure.
inline int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Usage:
        case ErrorKind::Capacity:
        case ErrorKind::Range:
        case ErrorKind::Embedding:
        case ErrorKind::Conflict:
        case ErrorKind::DivByZero:
            return 2;
        case ErrorKind::Parse:
        case ErrorKind::Framing:
        case ErrorKind::Validation:
        case ErrorKind::Alphabet:
            return 3;
        case ErrorKind::Key:
            return 4;
        case ErrorKind::SeqMismatch:
        case ErrorKind::NotFound:
            return 5;
        case ErrorKind::Tamper:
            return 6;
        case ErrorKind::Entropy:
            return 7;
    }
    return 1;
}

}  // namespace decc
