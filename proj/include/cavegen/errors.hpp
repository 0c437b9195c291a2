#pragma once

#include <stdexcept>
#include <string>

namespace cavegen {

// Bad user input: malformed config, out-of-range dims, unknown preset, ...
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Generation gave up: placement retries exhausted, unreachable objective, ...
// The CLI maps this to exit code 2.
class GenerationError : public std::runtime_error {
public:
    explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / serialization trouble (unwritable directory, truncated file).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cavegen
