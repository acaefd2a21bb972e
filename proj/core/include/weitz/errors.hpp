#pragma once

#include <stdexcept>
#include <string>

namespace weitz {

/// Bad arguments supplied by a caller (malformed weights, wrong dimensions, ...).
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Structurally impossible request (spinor on a non-spin context, ambiguous
/// Cartan summand, representation inconsistent with a context, ...).
class structural_error : public std::runtime_error {
public:
    explicit structural_error(const std::string& what) : std::runtime_error(what) {}
};

/// Violated internal consistency check; indicates a bug, not a usage error.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace weitz
