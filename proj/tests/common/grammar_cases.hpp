#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fvspike/expression.hpp"

namespace grammar {

struct Case {
    std::string source;
    std::optional<double> value;                       // expected value at kEnv
    std::optional<fvspike::ParseError::Kind> error;    // or expected failure
    std::size_t column = 0;
};

inline const fvspike::ExprEnv kEnv{.s = 2, .i = 3, .j = 4, .x = 3, .y = 4, .N = 10};

inline std::vector<Case> cases() {
    using K = fvspike::ParseError::Kind;
    return {
        {"1+2*3", 7.0, {}, 0},
        {"(1+2)*3", 9.0, {}, 0},
        {"2^3^2", 512.0, {}, 0},
        {"(2^3)^2", 64.0, {}, 0},
        {"8/4/2", 1.0, {}, 0},
        {"8-3-2", 3.0, {}, 0},
        {"-2^2", 4.0, {}, 0},
        {"2^-1", 0.5, {}, 0},
        {"--3", 3.0, {}, 0},
        {"\xE2\x88\x92" "3+5", 2.0, {}, 0},
        {"x^2+y^2", 25.0, {}, 0},
        {"s*N+i-j", 19.0, {}, 0},
        {"abs(-5)", 5.0, {}, 0},
        {"max(1,min(4,2))", 2.0, {}, 0},
        {"2*3^2", 18.0, {}, 0},
        {"1e3/1E-1", 10000.0, {}, 0},
        {".5+1.", 1.5, {}, 0},
        {"2 ^ 3 * 2", 16.0, {}, 0},
        {"cd(0, 10)", 1.0, {}, 0},
        {"1-2+3", 2.0, {}, 0},
        {"1+", {}, K::syntax, 3},
        {"(1+2", {}, K::syntax, 5},
        {"1 $ 2", {}, K::lexical, 3},
        {"foo(1)", {}, K::unknown_function, 1},
        {"cn(s)", {}, K::arity_mismatch, 1},
        {"2*max(1,2,3)", {}, K::arity_mismatch, 3},
        {"z+1", {}, K::unknown_variable, 1},
        {"2*(3))", {}, K::syntax, 6},
        {"1e+", {}, K::lexical, 4},
        {"sin()", {}, K::syntax, 5},
    };
}

}  // namespace grammar
