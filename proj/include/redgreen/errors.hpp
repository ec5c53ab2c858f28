#pragma once

#include <stdexcept>
#include <string>

namespace redgreen {

// Thrown when an input document, argument, or model definition fails its
// invariants. Messages carry the offending path or value.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by statistics that are undefined on empty data (empty tally,
// no same-setting runs, n = 0).
class EmptyDataError : public std::runtime_error {
public:
    explicit EmptyDataError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace redgreen
