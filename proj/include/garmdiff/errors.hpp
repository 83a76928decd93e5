#pragma once

#include <stdexcept>
#include <string>

namespace garmdiff {

// Base class for all library errors. The CLI maps ValidationError to exit
// code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: out-of-range parameters, malformed config, unknown keys.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Inconsistent data structures: topology mismatch, shape mismatch.
class StructuralError : public Error {
public:
    explicit StructuralError(const std::string& msg) : Error(msg) {}
};

// Numerically singular blended skinning transform; names the vertex.
class SingularityError : public Error {
public:
    SingularityError(const std::string& msg, int vertex)
        : Error(msg + " (vertex " + std::to_string(vertex) + ")"), vertex_(vertex) {}
    int vertex() const { return vertex_; }

private:
    int vertex_;
};

// Training produced a non-finite value; names the offending tensor.
class TrainingDivergenceError : public Error {
public:
    explicit TrainingDivergenceError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace garmdiff
