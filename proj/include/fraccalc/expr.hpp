#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace fraccalc {

// Arithmetic expression trees for user-supplied f(x) and f(x, y).
//
// Grammar (precedence low to high): + -  |  * /  |  unary -  |  ^
// with ^ right-associative and binding tighter than unary minus, so
// "-x^2" is -(x^2) and "2^3^2" is 2^(3^2). Function calls take one
// argument except pow(a, b), which is normalized to the ^ operator at
// parse time. Nodes are immutable after construction and safe to share.

enum class AstKind { Number, Variable, Pi, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func { Sin, Cos, Exp, Ln, Abs, Sqrt, Gamma };

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
    AstKind kind;
    double number = 0.0; // Number payload
    char var = 'x';      // Variable payload
    Func func = Func::Sin;
    AstPtr lhs, rhs;     // rhs empty for Neg and one-argument calls

    static AstPtr make_number(double v);
    static AstPtr make_variable(char name);
    static AstPtr make_pi();
    static AstPtr make_neg(AstPtr e);
    static AstPtr make_binary(AstKind k, AstPtr l, AstPtr r);
    static AstPtr make_call(Func f, AstPtr arg);
};

/// Parse UTF-8 source into an Ast. Throws SyntaxError with the byte
/// offset of the offending token.
AstPtr parse(std::string_view source);

/// Evaluate with x bound and y unbound (one-variable use).
double eval(const Ast& ast, double x);

/// Evaluate with both variables bound.
double eval(const Ast& ast, double x, double y);

/// Exact symbolic derivative with respect to `var` ('x' or 'y'),
/// simplified by constant folding and identity elimination. Throws
/// EvalError for non-differentiable nodes (abs, gamma of a non-constant
/// argument).
AstPtr differentiate(const Ast& ast, char var);

/// Constant folding plus the identities 0+e, e*1, 0*e, e^1, e^0, --e.
AstPtr simplify(const AstPtr& ast);

/// Minimal-parentheses source form; parses back to a structurally
/// identical tree.
std::string pretty(const Ast& ast);

bool structurally_equal(const Ast& a, const Ast& b);

/// True if the subtree mentions the given variable.
bool references(const Ast& ast, char var);

} // namespace fraccalc
