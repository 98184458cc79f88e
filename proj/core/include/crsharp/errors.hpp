#pragma once

#include <stdexcept>
#include <string>

namespace crsharp {

// Argument outside the mathematical domain of an operation (x <= 0 for
// log-Gamma, lambda outside (0,Q), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Evaluation point sits on (or numerically at) a pole of a formula.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A series or limit that does not converge for the given parameters.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative or adaptive method stopped before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace crsharp
