#ifndef SSAC_ERRORS_HPP
#define SSAC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssac {

// Caller violated an operation's precondition (bad index, dimension
// mismatch, out-of-range parameter).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A label map that cannot back a clustering (empty cluster, label >= k).
class InvalidClustering : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class GenerationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ssac

#endif  // SSAC_ERRORS_HPP
