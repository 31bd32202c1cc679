#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dnastore {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside an operation's parameter domain (nonpositive beta, delta out
// of its valid interval, division by zero in a field, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A pool with duplicate molecules was passed where per-index semantics
// require pairwise-distinct contents.
class DistinctnessError : public Error {
public:
    using Error::Error;
};

// A caller violated a structural precondition (e.g. untagged samples fed to
// an operation that needs tags).
class ContractError : public Error {
public:
    using Error::Error;
};

// The tail bound is undefined for the given (M, delta): xi - e^c/M <= 0.
class BoundUndefinedError : public Error {
public:
    using Error::Error;
};

// A size guard tripped: data does not fit the code, or an enumeration would
// materialize too many vectors.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Inconsistent codec configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed file, header, or record.
class FormatError : public Error {
public:
    using Error::Error;
};

// Two samples with the same index disagreed bitwise. The channel is
// noiseless, so this means the input was corrupted outside the channel.
class CorruptionDetected : public Error {
public:
    using Error::Error;
};

// Fewer than k distinct molecule positions were observed; carries how many
// more are needed.
class InsufficientCoverage : public Error {
public:
    InsufficientCoverage(std::size_t deficit, const std::string& msg)
        : Error(msg), deficit_(deficit) {}
    std::size_t deficit() const { return deficit_; }

private:
    std::size_t deficit_;
};

} // namespace dnastore
