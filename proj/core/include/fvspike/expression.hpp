#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fvspike/error.hpp"

namespace fvspike {

/// Expression tree for initial-guess formulas.
///
/// Grammar (whitespace insignificant, '-' or U+2212 for minus):
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' factor)?
///   unary  := '-' unary | atom
///   atom   := NUMBER | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'
///
/// Variables: s, i, j, x, y, N. Functions: abs sin cos tan sec exp log sqrt si (arity 1),
/// sn cn dn cd min max (arity 2).
struct ExprNode {
    enum class Kind { number, variable, unary, binary, call };

    Kind kind = Kind::number;
    double number = 0.0;            ///< number literal
    std::string name;               ///< variable or function name
    char op = 0;                    ///< '-' for unary; one of + - * / ^ for binary
    std::vector<ExprNode> children; ///< operands or call arguments

    friend bool operator==(const ExprNode&, const ExprNode&) = default;
};

/// Values bound to the expression variables for one cell.
struct ExprEnv {
    double s = 0.0;
    double i = 0.0;
    double j = 0.0;
    double x = 0.0;
    double y = 0.0;
    double N = 0.0;
};

/// Parse failure with a 1-based column into the source text.
class ParseError : public Error {
public:
    enum class Kind { lexical, syntax, unknown_function, unknown_variable, arity_mismatch };

    ParseError(Kind kind, std::size_t column, const std::string& message);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    Kind kind_;
    std::size_t column_;
};

/// Evaluation failure (division by zero, log of a non-positive value...) at a grid cell.
class EvalError : public Error {
public:
    EvalError(const std::string& message, const ExprEnv& where);

    [[nodiscard]] const ExprEnv& where() const noexcept { return where_; }

private:
    ExprEnv where_;
};

[[nodiscard]] ExprNode parse_expression(std::string_view source);

[[nodiscard]] double eval_expression(const ExprNode& ast, const ExprEnv& env);

/// Fully parenthesised text that parses back to the same tree.
[[nodiscard]] std::string unparse(const ExprNode& ast);

/// Registered arity of a function, or -1 if unknown.
[[nodiscard]] int function_arity(std::string_view name) noexcept;

}  // namespace fvspike
