#pragma once

#include <memory>
#include <string>

#include "christoffel/grid.hpp"

namespace christoffel::fexpr {

/// Parity under the antipodal map x -> -x.
enum class Parity { Even, Odd, Unknown };

/// Tiny expression language for prescribed data on the sphere:
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := ['-'] base ('^' uint)?
///   base   := number | cos_theta | sin_theta | sin_theta_cos_lambda | '(' expr ')'
/// Primitives are sampled from the grid's exact tables, so expressions of pure
/// parity evaluate exactly even/odd on antipodally closed grids.
class Expression {
public:
    /// Throws ParseError with 1-based column on malformed input.
    static Expression parse(const std::string& text);

    SphericalField evaluate(GridPtr grid) const;
    Parity parity() const;
    /// true if the expression references the longitude-dependent primitive.
    bool uses_longitude() const;
    const std::string& text() const { return text_; }

    ~Expression();
    Expression(Expression&&) noexcept;
    Expression& operator=(Expression&&) noexcept;

    struct Node; // AST node, defined in the implementation

private:
    Expression();
    std::string text_;
    std::unique_ptr<Node> root_;
};

} // namespace christoffel::fexpr
