#include "christoffel/fexpr.hpp"

#include <cctype>
#include <cmath>

#include "christoffel/errors.hpp"

namespace christoffel::fexpr {

namespace {
enum class Var { CosTheta, SinTheta, SinThetaCosLambda };

Parity combine_mul(Parity a, Parity b) {
    if (a == Parity::Unknown || b == Parity::Unknown) return Parity::Unknown;
    return (a == b) ? Parity::Even : Parity::Odd;
}

Parity combine_add(Parity a, Parity b) {
    if (a == b) return a;
    return Parity::Unknown;
}
} // namespace

struct Expression::Node {
    enum class Kind { Const, Variable, Add, Sub, Mul, Neg, Pow } kind;
    double value = 0.0;      // Const
    Var var = Var::CosTheta; // Variable
    int exponent = 1;        // Pow
    std::unique_ptr<Node> lhs, rhs;

    double eval(double ct, double st, double stcl) const {
        switch (kind) {
            case Kind::Const: return value;
            case Kind::Variable:
                switch (var) {
                    case Var::CosTheta: return ct;
                    case Var::SinTheta: return st;
                    case Var::SinThetaCosLambda: return stcl;
                }
                return 0.0;
            case Kind::Add: return lhs->eval(ct, st, stcl) + rhs->eval(ct, st, stcl);
            case Kind::Sub: return lhs->eval(ct, st, stcl) - rhs->eval(ct, st, stcl);
            case Kind::Mul: return lhs->eval(ct, st, stcl) * rhs->eval(ct, st, stcl);
            case Kind::Neg: return -lhs->eval(ct, st, stcl);
            case Kind::Pow: {
                double base = lhs->eval(ct, st, stcl);
                double acc = 1.0;
                for (int i = 0; i < exponent; ++i) acc *= base;
                return acc;
            }
        }
        return 0.0;
    }

    Parity parity() const {
        switch (kind) {
            case Kind::Const: return Parity::Even;
            case Kind::Variable:
                return (var == Var::SinTheta) ? Parity::Even : Parity::Odd;
            case Kind::Add:
            case Kind::Sub: return combine_add(lhs->parity(), rhs->parity());
            case Kind::Mul: return combine_mul(lhs->parity(), rhs->parity());
            case Kind::Neg: return lhs->parity();
            case Kind::Pow: {
                const Parity p = lhs->parity();
                if (p == Parity::Even) return Parity::Even;
                if (p == Parity::Odd) return (exponent % 2 == 0) ? Parity::Even : Parity::Odd;
                return Parity::Unknown;
            }
        }
        return Parity::Unknown;
    }

    bool uses_longitude() const {
        switch (kind) {
            case Kind::Const: return false;
            case Kind::Variable: return var == Var::SinThetaCosLambda;
            case Kind::Neg:
            case Kind::Pow: return lhs->uses_longitude();
            default: return lhs->uses_longitude() || rhs->uses_longitude();
        }
    }
};

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    std::unique_ptr<Expression::Node> run() {
        auto e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    using Node = Expression::Node;
    using NodePtr = std::unique_ptr<Node>;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("f expression: " + msg, 1, static_cast<int>(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        auto lhs = term();
        while (true) {
            if (eat('+')) {
                auto n = std::make_unique<Node>();
                n->kind = Node::Kind::Add;
                n->lhs = std::move(lhs);
                n->rhs = term();
                lhs = std::move(n);
            } else if (eat('-')) {
                auto n = std::make_unique<Node>();
                n->kind = Node::Kind::Sub;
                n->lhs = std::move(lhs);
                n->rhs = term();
                lhs = std::move(n);
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        auto lhs = factor();
        while (eat('*')) {
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::Mul;
            n->lhs = std::move(lhs);
            n->rhs = factor();
            lhs = std::move(n);
        }
        return lhs;
    }

    NodePtr factor() {
        if (eat('-')) {
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::Neg;
            n->lhs = factor();
            return n;
        }
        auto b = base();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == start) fail("exponent must be a nonnegative integer");
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::Pow;
            n->exponent = std::stoi(s_.substr(start, pos_ - start));
            n->lhs = std::move(b);
            return n;
        }
        return b;
    }

    NodePtr base() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expr();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            double v;
            try {
                v = std::stod(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                fail("invalid number");
            }
            pos_ += used;
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::Const;
            n->value = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::Variable;
            if (name == "cos_theta") n->var = Var::CosTheta;
            else if (name == "sin_theta") n->var = Var::SinTheta;
            else if (name == "sin_theta_cos_lambda") n->var = Var::SinThetaCosLambda;
            else {
                pos_ = start;
                fail("unknown identifier '" + name +
                     "' (allowed: cos_theta, sin_theta, sin_theta_cos_lambda)");
            }
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

Expression::Expression() = default;
Expression::~Expression() = default;
Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.text_ = text;
    e.root_ = Parser(text).run();
    return e;
}

SphericalField Expression::evaluate(GridPtr grid) const {
    if (grid->mode() == GridMode::Axisymmetric && uses_longitude())
        throw InvalidArgument(
            "f expression uses sin_theta_cos_lambda, which needs a full-S2 grid");
    std::vector<double> v(grid->node_count());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double stcl = grid->direction(k)[0];
        v[k] = root_->eval(grid->cos_theta(k), grid->sin_theta(k), stcl);
    }
    return SphericalField(std::move(grid), std::move(v));
}

Parity Expression::parity() const { return root_->parity(); }

bool Expression::uses_longitude() const { return root_->uses_longitude(); }

} // namespace christoffel::fexpr
