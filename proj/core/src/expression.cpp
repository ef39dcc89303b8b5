#include "fvspike/expression.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "fvspike/specfun.hpp"

namespace fvspike {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
    Tok kind = Tok::end;
    std::size_t column = 1;
    std::string text;
    double value = 0.0;
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::number: return "number";
        case Tok::ident: return "identifier";
        case Tok::plus: return "'+'";
        case Tok::minus: return "'-'";
        case Tok::star: return "'*'";
        case Tok::slash: return "'/'";
        case Tok::caret: return "'^'";
        case Tok::lparen: return "'('";
        case Tok::rparen: return "')'";
        case Tok::comma: return "','";
        case Tok::end: return "end of input";
    }
    return "?";
}

struct FunctionInfo {
    std::string_view name;
    int arity;
};

constexpr std::array<FunctionInfo, 15> kFunctions{{
    {"abs", 1}, {"sin", 1}, {"cos", 1}, {"tan", 1}, {"sec", 1}, {"exp", 1}, {"log", 1}, {"sqrt", 1},
    {"si", 1},  {"sn", 2},  {"cn", 2},  {"dn", 2},  {"cd", 2},  {"min", 2}, {"max", 2},
}};

constexpr std::array<std::string_view, 6> kVariables{"s", "i", "j", "x", "y", "N"};

bool is_variable(std::string_view name) {
    return std::find(kVariables.begin(), kVariables.end(), name) != kVariables.end();
}

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t pos = 0;
    while (pos < src.size()) {
        const auto c = static_cast<unsigned char>(src[pos]);
        const std::size_t column = pos + 1;
        if (std::isspace(c)) {
            ++pos;
            continue;
        }
        if (std::isdigit(c) || c == '.') {
            std::size_t end = pos;
            while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) ++end;
            if (end < src.size() && src[end] == '.') {
                ++end;
                while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) ++end;
            }
            const std::string_view mantissa = src.substr(pos, end - pos);
            if (mantissa == ".") {
                throw ParseError(ParseError::Kind::lexical, column, "malformed number '.'");
            }
            if (end < src.size() && (src[end] == 'e' || src[end] == 'E')) {
                std::size_t exp = end + 1;
                if (exp < src.size() && (src[exp] == '+' || src[exp] == '-')) ++exp;
                if (exp >= src.size() || !std::isdigit(static_cast<unsigned char>(src[exp]))) {
                    throw ParseError(ParseError::Kind::lexical, exp + 1, "malformed exponent in number");
                }
                while (exp < src.size() && std::isdigit(static_cast<unsigned char>(src[exp]))) ++exp;
                end = exp;
            }
            Token tok{Tok::number, column, std::string(src.substr(pos, end - pos)), 0.0};
            tok.value = std::strtod(tok.text.c_str(), nullptr);
            if (!std::isfinite(tok.value)) {
                throw ParseError(ParseError::Kind::lexical, column, "number out of range: " + tok.text);
            }
            out.push_back(std::move(tok));
            pos = end;
            continue;
        }
        if (std::isalpha(c)) {
            std::size_t end = pos + 1;
            while (end < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_')) {
                ++end;
            }
            out.push_back({Tok::ident, column, std::string(src.substr(pos, end - pos)), 0.0});
            pos = end;
            continue;
        }
        // U+2212 MINUS SIGN in UTF-8
        if (src.substr(pos, 3) == "\xE2\x88\x92") {
            out.push_back({Tok::minus, column, "-", 0.0});
            pos += 3;
            continue;
        }
        Tok kind = Tok::end;
        switch (c) {
            case '+': kind = Tok::plus; break;
            case '-': kind = Tok::minus; break;
            case '*': kind = Tok::star; break;
            case '/': kind = Tok::slash; break;
            case '^': kind = Tok::caret; break;
            case '(': kind = Tok::lparen; break;
            case ')': kind = Tok::rparen; break;
            case ',': kind = Tok::comma; break;
            default: {
                std::string shown(1, static_cast<char>(c));
                throw ParseError(ParseError::Kind::lexical, column, "unexpected character '" + shown + "'");
            }
        }
        out.push_back({kind, column, std::string(1, static_cast<char>(c)), 0.0});
        ++pos;
    }
    out.push_back({Tok::end, src.size() + 1, "", 0.0});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    ExprNode parse() {
        ExprNode root = expr();
        if (peek().kind != Tok::end) {
            unexpected("end of input");
        }
        return root;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }

    [[noreturn]] void unexpected(const char* wanted) const {
        const Token& t = peek();
        std::ostringstream msg;
        msg << "expected " << wanted << " but found " << describe(t.kind);
        if (!t.text.empty()) msg << " '" << t.text << "'";
        throw ParseError(ParseError::Kind::syntax, t.column, msg.str());
    }

    void expect(Tok kind, const char* wanted) {
        if (peek().kind != kind) unexpected(wanted);
        ++pos_;
    }

    static ExprNode binary(char op, ExprNode lhs, ExprNode rhs) {
        ExprNode node;
        node.kind = ExprNode::Kind::binary;
        node.op = op;
        node.children.push_back(std::move(lhs));
        node.children.push_back(std::move(rhs));
        return node;
    }

    ExprNode expr() {
        ExprNode lhs = term();
        while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
            const char op = take().kind == Tok::plus ? '+' : '-';
            lhs = binary(op, std::move(lhs), term());
        }
        return lhs;
    }

    ExprNode term() {
        ExprNode lhs = factor();
        while (peek().kind == Tok::star || peek().kind == Tok::slash) {
            const char op = take().kind == Tok::star ? '*' : '/';
            lhs = binary(op, std::move(lhs), factor());
        }
        return lhs;
    }

    ExprNode factor() {
        ExprNode base = unary();
        if (peek().kind == Tok::caret) {
            ++pos_;
            return binary('^', std::move(base), factor());
        }
        return base;
    }

    ExprNode unary() {
        if (peek().kind == Tok::minus) {
            ++pos_;
            ExprNode node;
            node.kind = ExprNode::Kind::unary;
            node.op = '-';
            node.children.push_back(unary());
            return node;
        }
        return atom();
    }

    ExprNode atom() {
        const Token& t = peek();
        if (t.kind == Tok::number) {
            ExprNode node;
            node.kind = ExprNode::Kind::number;
            node.number = take().value;
            return node;
        }
        if (t.kind == Tok::lparen) {
            ++pos_;
            ExprNode inner = expr();
            expect(Tok::rparen, "')'");
            return inner;
        }
        if (t.kind == Tok::ident) {
            Token ident = take();
            if (peek().kind == Tok::lparen) {
                return call(ident);
            }
            if (!is_variable(ident.text)) {
                const int arity = function_arity(ident.text);
                const std::string hint = arity > 0 ? " (function '" + ident.text + "' needs arguments)" : "";
                throw ParseError(ParseError::Kind::unknown_variable, ident.column,
                                 "unknown variable '" + ident.text + "'" + hint);
            }
            ExprNode node;
            node.kind = ExprNode::Kind::variable;
            node.name = ident.text;
            return node;
        }
        unexpected("number, identifier or '('");
    }

    ExprNode call(const Token& ident) {
        const int arity = function_arity(ident.text);
        if (arity < 0) {
            throw ParseError(ParseError::Kind::unknown_function, ident.column,
                             "unknown function '" + ident.text + "'");
        }
        ++pos_;  // '('
        ExprNode node;
        node.kind = ExprNode::Kind::call;
        node.name = ident.text;
        node.children.push_back(expr());
        while (peek().kind == Tok::comma) {
            ++pos_;
            node.children.push_back(expr());
        }
        expect(Tok::rparen, "',' or ')'");
        if (static_cast<int>(node.children.size()) != arity) {
            std::ostringstream msg;
            msg << "function '" << ident.text << "' expects " << arity << " argument" << (arity == 1 ? "" : "s")
                << ", got " << node.children.size();
            throw ParseError(ParseError::Kind::arity_mismatch, ident.column, msg.str());
        }
        return node;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

[[noreturn]] void fail(const std::string& what, const ExprEnv& env) { throw EvalError(what, env); }

double variable_value(const std::string& name, const ExprEnv& env) {
    switch (name.front()) {
        case 's': return env.s;
        case 'i': return env.i;
        case 'j': return env.j;
        case 'x': return env.x;
        case 'y': return env.y;
        case 'N': return env.N;
        default: break;
    }
    fail("unknown variable '" + name + "'", env);
}

double call_function(const std::string& name, const std::vector<double>& a, const ExprEnv& env) {
    if (name == "abs") return std::abs(a[0]);
    if (name == "sin") return std::sin(a[0]);
    if (name == "cos") return std::cos(a[0]);
    if (name == "tan") return std::tan(a[0]);
    if (name == "sec") {
        const double c = std::cos(a[0]);
        if (c == 0.0) fail("sec: cos(argument) is zero", env);
        return 1.0 / c;
    }
    if (name == "exp") return std::exp(a[0]);
    if (name == "log") {
        if (!(a[0] > 0.0)) fail("log of non-positive value", env);
        return std::log(a[0]);
    }
    if (name == "sqrt") {
        if (a[0] < 0.0) fail("sqrt of negative value", env);
        return std::sqrt(a[0]);
    }
    if (name == "si") return sine_integral(a[0]);
    if (name == "sn") return jacobi_elliptic(a[0], a[1]).sn;
    if (name == "cn") return jacobi_elliptic(a[0], a[1]).cn;
    if (name == "dn") return jacobi_elliptic(a[0], a[1]).dn;
    if (name == "cd") return jacobi_cd(a[0], a[1]);
    if (name == "min") return std::min(a[0], a[1]);
    if (name == "max") return std::max(a[0], a[1]);
    fail("unknown function '" + name + "'", env);
}

double eval_node(const ExprNode& n, const ExprEnv& env) {
    switch (n.kind) {
        case ExprNode::Kind::number: return n.number;
        case ExprNode::Kind::variable: return variable_value(n.name, env);
        case ExprNode::Kind::unary: return -eval_node(n.children.at(0), env);
        case ExprNode::Kind::binary: {
            const double l = eval_node(n.children.at(0), env);
            const double r = eval_node(n.children.at(1), env);
            switch (n.op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                case '/':
                    if (r == 0.0) fail("division by zero", env);
                    return l / r;
                case '^': {
                    if (l == 0.0 && r < 0.0) fail("zero raised to a negative power", env);
                    const double v = std::pow(l, r);
                    if (std::isnan(v)) fail("negative base raised to a non-integer power", env);
                    return v;
                }
                default: break;
            }
            fail(std::string("unknown operator '") + n.op + "'", env);
        }
        case ExprNode::Kind::call: {
            std::vector<double> args;
            args.reserve(n.children.size());
            for (const auto& child : n.children) args.push_back(eval_node(child, env));
            if (static_cast<int>(args.size()) != function_arity(n.name)) {
                fail("arity mismatch calling '" + n.name + "'", env);
            }
            try {
                return call_function(n.name, args, env);
            } catch (const MathDomainError& e) {
                fail(e.what(), env);
            }
        }
    }
    fail("malformed expression node", env);
}

void unparse_into(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case ExprNode::Kind::number: {
            std::array<char, 32> buf{};
            std::snprintf(buf.data(), buf.size(), "%.17g", n.number);
            out += buf.data();
            return;
        }
        case ExprNode::Kind::variable: out += n.name; return;
        case ExprNode::Kind::unary:
            out += "(-";
            unparse_into(n.children.at(0), out);
            out += ')';
            return;
        case ExprNode::Kind::binary:
            out += '(';
            unparse_into(n.children.at(0), out);
            out += ' ';
            out += n.op;
            out += ' ';
            unparse_into(n.children.at(1), out);
            out += ')';
            return;
        case ExprNode::Kind::call:
            out += n.name;
            out += '(';
            for (std::size_t k = 0; k < n.children.size(); ++k) {
                if (k > 0) out += ", ";
                unparse_into(n.children[k], out);
            }
            out += ')';
            return;
    }
}

std::string located(std::size_t column, const std::string& message) {
    return "column " + std::to_string(column) + ": " + message;
}

std::string eval_location(const std::string& message, const ExprEnv& env) {
    std::ostringstream msg;
    msg << message << " at s=" << env.s << " (i=" << env.i << ", j=" << env.j << ")";
    return msg.str();
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t column, const std::string& message)
    : Error(located(column, message)), kind_(kind), column_(column) {}

EvalError::EvalError(const std::string& message, const ExprEnv& where)
    : Error(eval_location(message, where)), where_(where) {}

int function_arity(std::string_view name) noexcept {
    for (const auto& f : kFunctions) {
        if (f.name == name) return f.arity;
    }
    return -1;
}

ExprNode parse_expression(std::string_view source) {
    if (std::all_of(source.begin(), source.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
        throw ParseError(ParseError::Kind::syntax, 1, "empty expression");
    }
    return Parser(tokenize(source)).parse();
}

double eval_expression(const ExprNode& ast, const ExprEnv& env) { return eval_node(ast, env); }

std::string unparse(const ExprNode& ast) {
    std::string out;
    unparse_into(ast, out);
    return out;
}

}  // namespace fvspike
