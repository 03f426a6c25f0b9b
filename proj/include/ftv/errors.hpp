#pragma once

#include <stdexcept>
#include <string>

namespace ftv {

// Error categories map onto the CLI exit-code contract:
//   0 pass, 1 identity failure, 2 precision failure, 3 input failure.
enum class ErrorKind {
    Input,      // exit 3
    Precision,  // exit 2
    Identity,   // exit 1
    Internal,   // exit 1 (bugs, completeness failures)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& w) : Error(ErrorKind::Precision, w) {}
};
struct NotInvertible : Error {
    explicit NotInvertible(const std::string& w) : Error(ErrorKind::Precision, w) {}
};
struct LevelMismatch : Error {
    explicit LevelMismatch(const std::string& w) : Error(ErrorKind::Input, w) {}
};
struct QEqualsP : Error {
    explicit QEqualsP(const std::string& w) : Error(ErrorKind::Input, w) {}
};
struct CompletenessFailure : Error {
    explicit CompletenessFailure(const std::string& w) : Error(ErrorKind::Internal, w) {}
};
struct MissingCoefficient : Error {
    explicit MissingCoefficient(const std::string& w) : Error(ErrorKind::Input, w) {}
};
struct UnsupportedPrime : Error {
    explicit UnsupportedPrime(const std::string& w) : Error(ErrorKind::Input, w) {}
};
struct BadKummerBase : Error {
    explicit BadKummerBase(const std::string& w) : Error(ErrorKind::Input, w) {}
};
struct BadReduction : Error {
    explicit BadReduction(const std::string& w) : Error(ErrorKind::Input, w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::Input, w) {}
};
struct SchemaViolation : Error {
    explicit SchemaViolation(const std::string& w) : Error(ErrorKind::Input, w) {}
};
struct InconsistentSpecialData : Error {
    explicit InconsistentSpecialData(const std::string& w) : Error(ErrorKind::Input, w) {}
};
struct DivisionByIndeterminate : Error {
    explicit DivisionByIndeterminate(const std::string& w) : Error(ErrorKind::Identity, w) {}
};
struct IOError : Error {
    explicit IOError(const std::string& w) : Error(ErrorKind::Input, w) {}
};

inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::Input: return 3;
        case ErrorKind::Precision: return 2;
        default: return 1;
    }
}

}  // namespace ftv
