#include "density.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "crsharp/errors.hpp"

namespace crsharp::tools {

using csphere::cplx;

struct Density::Node {
    enum class Op { Const, Var, VarBar, Add, Sub, Mul, Div, Pow, Neg, Conj, Abs, Re, Im };
    Op op = Op::Const;
    cplx value = 0.0;
    int slot = 0;
    std::unique_ptr<Node> a, b;

    cplx eval(const csphere::SpherePoint& z) const {
        switch (op) {
            case Op::Const: return value;
            case Op::Var: return z.zeta[slot];
            case Op::VarBar: return std::conj(z.zeta[slot]);
            case Op::Add: return a->eval(z) + b->eval(z);
            case Op::Sub: return a->eval(z) - b->eval(z);
            case Op::Mul: return a->eval(z) * b->eval(z);
            case Op::Div: return a->eval(z) / b->eval(z);
            case Op::Pow: {
                const cplx base = a->eval(z), e = b->eval(z);
                // keep real bases with real exponents on the real branch
                if (base.imag() == 0.0 && e.imag() == 0.0 && base.real() >= 0.0)
                    return std::pow(base.real(), e.real());
                if (e.imag() == 0.0 && e.real() == std::round(e.real()) && std::abs(e.real()) <= 64.0)
                    return std::pow(base, static_cast<int>(e.real()));
                return std::pow(base, e);
            }
            case Op::Neg: return -a->eval(z);
            case Op::Conj: return std::conj(a->eval(z));
            case Op::Abs: return std::abs(a->eval(z));
            case Op::Re: return a->eval(z).real();
            case Op::Im: return a->eval(z).imag();
        }
        return 0.0;
    }
};

namespace {

using Node = Density::Node;
using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto node = std::make_unique<Node>();
    node->op = op;
    node->a = std::move(a);
    node->b = std::move(b);
    return node;
}

class Parser {
public:
    Parser(const std::string& s, int n) : s_(s), n_(n) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(Node::Op::Add, std::move(lhs), term());
            else if (accept('-')) lhs = make(Node::Op::Sub, std::move(lhs), term());
            else return lhs;
        }
    }
    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make(Node::Op::Mul, std::move(lhs), unary());
            else if (accept('/')) lhs = make(Node::Op::Div, std::move(lhs), unary());
            else return lhs;
        }
    }
    NodePtr unary() {
        if (accept('-')) return make(Node::Op::Neg, unary());
        if (accept('+')) return unary();
        return power();
    }
    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Node::Op::Pow, std::move(base), unary());
        return base;
    }
    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = s_[pos_];
        if (accept('(')) {
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }
    NodePtr number() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("malformed number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        auto node = make(Node::Op::Const);
        node->value = v;
        return node;
    }
    NodePtr identifier() {
        const std::size_t start = pos_;
        std::string word;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) word += s_[pos_++];
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];

        if (word == "z" || word == "zb") {
            if (digits.empty()) throw ParseError("variable '" + word + "' needs an index", start);
            const int k = std::stoi(digits);
            if (k < 1 || k > n_ + 1)
                throw ParseError("variable index " + digits + " outside 1.." + std::to_string(n_ + 1), start);
            auto node = make(word == "z" ? Node::Op::Var : Node::Op::VarBar);
            node->slot = k - 1;
            return node;
        }
        if (!digits.empty()) throw ParseError("unknown identifier '" + word + digits + "'", start);
        if (word == "i") {
            auto node = make(Node::Op::Const);
            node->value = cplx(0.0, 1.0);
            return node;
        }
        Node::Op op;
        if (word == "conj") op = Node::Op::Conj;
        else if (word == "abs") op = Node::Op::Abs;
        else if (word == "re") op = Node::Op::Re;
        else if (word == "im") op = Node::Op::Im;
        else throw ParseError("unknown identifier '" + word + "'", start);
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return make(op, std::move(arg));
    }

    const std::string& s_;
    int n_;
    std::size_t pos_ = 0;
};

}  // namespace

Density Density::parse(const std::string& text, int n) {
    if (n < 1) throw DomainError("density: n must be >= 1");
    Density d;
    d.root_ = Parser(text, n).parse();
    d.text_ = text;
    d.n_ = n;
    return d;
}

cplx Density::operator()(const csphere::SpherePoint& zeta) const {
    if (zeta.n() != n_) throw DimensionError("density: point dimension does not match");
    return root_->eval(zeta);
}

std::vector<double> Density::sample_nonnegative(const csphere::QuadratureGrid& grid) const {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx v = (*this)(grid.nodes[i]);
        if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
            throw DomainError("density '" + text_ + "' is not real-valued");
        if (!(v.real() >= 0.0) || !std::isfinite(v.real()))
            throw DomainError("density '" + text_ + "' is negative or non-finite somewhere");
        out[i] = v.real();
    }
    return out;
}

const std::vector<BuiltinDensity>& builtin_densities() {
    static const std::vector<BuiltinDensity> table = {
        {"uniform", "1"},
        {"tilt", "abs(1+0.3*z2)"},
        {"tilt-z1", "abs(1+0.5*z1)^2"},
        {"peak", "abs(1+0.7*z2)^4"},
        {"oblique", "abs(1+0.4*z1+0.3*i*zb2)^2"},
        {"mixed", "1+0.5*re(z1*zb2)+0.3*im(z2)"},
    };
    return table;
}

Density resolve_density(const std::string& name_or_expr, int n) {
    for (const BuiltinDensity& b : builtin_densities())
        if (b.name == name_or_expr) return Density::parse(b.expression, n);
    return Density::parse(name_or_expr, n);
}

}  // namespace crsharp::tools
