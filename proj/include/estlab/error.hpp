#pragma once

#include <stdexcept>
#include <string>

namespace estlab {

enum class ErrorKind {
    dimension,
    budget,
    unbounded,
    no_samples,
    invalid_argument,
    outside_validity,
    divergent,
    insufficient_samples,
    window_too_narrow,
    zero_vector,
};

// All library failures surface as this exception; kind() lets callers (the
// CLI in particular) map failures to exit codes without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace estlab
