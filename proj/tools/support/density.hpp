#pragma once

// Density mini-language for the com command: expressions in z1..z{n+1},
// their conjugates and absolute values.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?
//   primary := number | 'i' | 'z'k | 'zb'k | func '(' expr ')' | '(' expr ')'
//   func    := conj | abs | re | im
//
// Exponents are evaluated with std::pow on complex values, so abs(...)^q is
// the usual real power.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "crsharp/csphere.hpp"

namespace crsharp::tools {

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " at offset " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

class Density {
public:
    // Throws ParseError on malformed input or a variable index above n+1.
    static Density parse(const std::string& text, int n);

    csphere::cplx operator()(const csphere::SpherePoint& zeta) const;

    // Real samples on the grid. Throws DomainError if a value is negative or
    // has an imaginary part above 1e-12 (relative).
    std::vector<double> sample_nonnegative(const csphere::QuadratureGrid& grid) const;

    const std::string& text() const { return text_; }
    int n() const { return n_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    std::string text_;
    int n_ = 1;
};

struct BuiltinDensity {
    std::string name;
    std::string expression;
};

// Named families used by `com --family` and the center-of-mass tests.
const std::vector<BuiltinDensity>& builtin_densities();

// Looks up a builtin name first, otherwise parses text as an expression.
Density resolve_density(const std::string& name_or_expr, int n);

}  // namespace crsharp::tools
