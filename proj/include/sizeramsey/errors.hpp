#ifndef SIZERAMSEY_ERRORS_HPP
#define SIZERAMSEY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sizeramsey {

// Raised when an argument lies outside an operation's documented domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Raised when a documented precondition on structured input does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Parameters are well-formed but cannot be realised (e.g. p > 1 in paper mode).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A search or resampling loop ran out of budget. The message carries the
// best partial result so callers can report it.
class SearchExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input (edge lists, colouring strings, config documents).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed. Indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace sizeramsey

#endif  // SIZERAMSEY_ERRORS_HPP
