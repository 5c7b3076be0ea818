#pragma once

#include <stdexcept>
#include <string>

namespace slopegap {

/// Bad user input: unreadable or malformed origami files, out-of-domain arguments.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed object failed one of its own invariants (cover, termination, ...).
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace slopegap
