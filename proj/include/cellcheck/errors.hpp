#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cellcheck {

struct CellAddress;

/// Malformed A1-style address text.
class AddressError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Structural violation in a workbook or task bundle file. `where()` names the
/// offending address or JSON location.
class FormatError : public std::runtime_error {
public:
    FormatError(std::string where, const std::string& message)
        : std::runtime_error(where.empty() ? message : where + ": " + message),
          where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Task bundle or reference solution unusable for grading. Distinct from the
/// student-facing statuses of a feedback report.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cellcheck
