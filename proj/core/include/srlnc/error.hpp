#pragma once

#include <stdexcept>
#include <string>

namespace srlnc {

/// Invalid parameters or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Precondition violated by an argument (zero inverse, length mismatch, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Payload decoding requested while the decoding matrix still has a defect.
class NotDecodableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed probability left [0,1], a row failed to sum to one, or a
/// function assumed monotone was not (CLI exit code 3).
class NumericalIntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace srlnc
