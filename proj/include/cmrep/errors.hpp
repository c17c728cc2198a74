#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cmrep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad file, bad matrix, violated precondition).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A well-formed input for which the requested computation cannot be carried out.
class ComputationError : public Error {
public:
    using Error::Error;
};

/// Raised when an integral would not converge on the requested data.
class NonConvergentError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

/// A graph operation needed a connected graph; carries the vertex components found.
class DisconnectedGraphError : public ValidationError {
public:
    explicit DisconnectedGraphError(std::vector<std::vector<std::string>> components)
        : ValidationError(describe(components)), components_(std::move(components)) {}

    const std::vector<std::vector<std::string>>& components() const noexcept { return components_; }

private:
    static std::string describe(const std::vector<std::vector<std::string>>& components) {
        std::string msg = "graph is disconnected; components:";
        for (const auto& comp : components) {
            msg += " {";
            for (std::size_t i = 0; i < comp.size(); ++i) {
                if (i) msg += ",";
                msg += comp[i];
            }
            msg += "}";
        }
        return msg;
    }

    std::vector<std::vector<std::string>> components_;
};

}  // namespace cmrep
