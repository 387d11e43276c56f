#ifndef LOADOUT_ERRORS_HPP
#define LOADOUT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace loadout {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& what) : Error(what) {}
};

/// An interval enclosure still straddles zero at the precision cap.
/// Callers must treat the quantity as unverified, never as verified.
struct IndeterminateSign : Error {
    explicit IndeterminateSign(const std::string& what) : Error(what) {}
};

struct InvalidParams : Error {
    explicit InvalidParams(const std::string& what) : Error(what) {}
};

struct EnumerationTooLarge : Error {
    explicit EnumerationTooLarge(const std::string& what) : Error(what) {}
};

/// A cofactor sign contradicting the moment-curve hyperplane sign rule.
/// Indicates an implementation or input error, not a mathematical outcome.
struct SignLemmaViolation : Error {
    explicit SignLemmaViolation(const std::string& what) : Error(what) {}
};

struct IterationLimit : Error {
    explicit IterationLimit(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace loadout

#endif
