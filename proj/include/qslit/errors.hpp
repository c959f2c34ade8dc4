#ifndef QSLIT_ERRORS_HPP
#define QSLIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qslit {

// Requested point lies outside an approximation's validity domain.
class ValidityError : public std::runtime_error {
public:
    explicit ValidityError(const std::string& what) : std::runtime_error(what) {}
};

// Grid or window too coarse to represent the requested quantity.
class ResolutionError : public std::runtime_error {
public:
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative scheme exhausted its budget before reaching tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Input document could not be parsed (config files).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qslit

#endif
