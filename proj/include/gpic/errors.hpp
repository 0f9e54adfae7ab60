#pragma once

#include <stdexcept>
#include <string>

namespace gpic {

/// Base class for all library errors.  `code()` is a short stable
/// machine-readable tag; the CLI prints it as `error:<code>: <message>`.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct ParseError : Error {
    ParseError(std::size_t pos, const std::string& msg)
        : Error("parse", msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

struct UnsupportedFamily : Error {
    explicit UnsupportedFamily(const std::string& msg) : Error("unsupported-family", msg) {}
};

struct InvalidPermutation : Error {
    explicit InvalidPermutation(const std::string& msg) : Error("invalid-permutation", msg) {}
};

struct ClosureExceedsCap : Error {
    explicit ClosureExceedsCap(std::size_t cap)
        : Error("closure-cap", "generated group exceeds the configured cap of " + std::to_string(cap)) {}
};

struct BudgetExceeded : Error {
    BudgetExceeded(long long attempted, long long budget)
        : Error("budget",
                "computation of size " + std::to_string(attempted) +
                    " exceeds the configured budget " + std::to_string(budget)),
          attempted_size(attempted) {}
    long long attempted_size;
};

struct GroupTooLarge : Error {
    explicit GroupTooLarge(const std::string& msg) : Error("group-too-large", msg) {}
};

struct InvalidChain : Error {
    explicit InvalidChain(const std::string& msg) : Error("invalid-chain", msg) {}
};

struct InertiaNotSubgroup : Error {
    explicit InertiaNotSubgroup(const std::string& msg) : Error("inertia", msg) {}
};

struct InvalidDatum : Error {
    explicit InvalidDatum(const std::string& msg) : Error("invalid-datum", msg) {}
};

struct InadmissibleC : Error {
    explicit InadmissibleC(const std::string& msg) : Error("inadmissible-c", msg) {}
};

struct NotNormal : Error {
    explicit NotNormal(const std::string& msg) : Error("not-normal", msg) {}
};

struct NotFree : Error {
    explicit NotFree(const std::string& msg) : Error("not-free", msg) {}
};

struct NotUnimodular : Error {
    explicit NotUnimodular(const std::string& msg) : Error("not-unimodular", msg) {}
};

struct NotFanPreserving : Error {
    explicit NotFanPreserving(const std::string& msg) : Error("not-fan-preserving", msg) {}
};

struct RaysDoNotSpan : Error {
    explicit RaysDoNotSpan(const std::string& msg) : Error("rays-do-not-span", msg) {}
};

struct ClassNotInvariant : Error {
    explicit ClassNotInvariant(const std::string& msg) : Error("class-not-invariant", msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("dimension-mismatch", msg) {}
};

struct CorpusMissing : Error {
    explicit CorpusMissing(const std::string& msg) : Error("corpus-missing", msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io", msg) {}
};

} // namespace gpic
