#include "fraccalc/expr.hpp"
#include "fraccalc/errors.hpp"
#include "fraccalc/special.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace fraccalc {

AstPtr Ast::make_number(double v)
{
    auto n = std::make_shared<Ast>();
    n->kind = AstKind::Number;
    n->number = v;
    return n;
}

AstPtr Ast::make_variable(char name)
{
    auto n = std::make_shared<Ast>();
    n->kind = AstKind::Variable;
    n->var = name;
    return n;
}

AstPtr Ast::make_pi()
{
    auto n = std::make_shared<Ast>();
    n->kind = AstKind::Pi;
    return n;
}

AstPtr Ast::make_neg(AstPtr e)
{
    auto n = std::make_shared<Ast>();
    n->kind = AstKind::Neg;
    n->lhs = std::move(e);
    return n;
}

AstPtr Ast::make_binary(AstKind k, AstPtr l, AstPtr r)
{
    auto n = std::make_shared<Ast>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

AstPtr Ast::make_call(Func f, AstPtr arg)
{
    auto n = std::make_shared<Ast>();
    n->kind = AstKind::Call;
    n->func = f;
    n->lhs = std::move(arg);
    return n;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind;
    std::size_t offset;
    double number = 0.0;
    std::string ident;
};

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        if ((c >= '0' && c <= '9') || c == '.') {
            double v = 0.0;
            const char* begin = src.data() + i;
            const char* end = src.data() + src.size();
            auto [ptr, ec] = std::from_chars(begin, end, v);
            if (ec != std::errc{} || ptr == begin)
                throw SyntaxError(i, "a numeric literal");
            out.push_back({Tok::Number, i, v, {}});
            i += static_cast<std::size_t>(ptr - begin);
            continue;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   ((src[j] >= 'a' && src[j] <= 'z') || (src[j] >= 'A' && src[j] <= 'Z') ||
                    (src[j] >= '0' && src[j] <= '9') || src[j] == '_'))
                ++j;
            Token t{Tok::Ident, i, 0.0, std::string(src.substr(i, j - i))};
            out.push_back(std::move(t));
            i = j;
            continue;
        }
        Tok k;
        switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        default:
            throw SyntaxError(i, "an operator, parenthesis, number, or name");
        }
        out.push_back({k, i, 0.0, {}});
        ++i;
    }
    out.push_back({Tok::End, src.size(), 0.0, {}});
    return out;
}

// ---------------------------------------------------------------------------
// Parser (recursive descent, one token of lookahead)
// ---------------------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

    AstPtr run()
    {
        AstPtr e = parse_sum();
        expect(Tok::End, "end of input or an operator");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    void expect(Tok k, const char* what)
    {
        if (peek().kind != k)
            throw SyntaxError(peek().offset, what);
        ++pos_;
    }

    AstPtr parse_sum()
    {
        AstPtr e = parse_product();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const bool add = take().kind == Tok::Plus;
            AstPtr r = parse_product();
            e = Ast::make_binary(add ? AstKind::Add : AstKind::Sub, std::move(e), std::move(r));
        }
        return e;
    }

    AstPtr parse_product()
    {
        AstPtr e = parse_unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const bool mul = take().kind == Tok::Star;
            AstPtr r = parse_unary();
            e = Ast::make_binary(mul ? AstKind::Mul : AstKind::Div, std::move(e), std::move(r));
        }
        return e;
    }

    AstPtr parse_unary()
    {
        if (peek().kind == Tok::Minus) {
            take();
            return Ast::make_neg(parse_unary());
        }
        return parse_power();
    }

    AstPtr parse_power()
    {
        AstPtr base = parse_primary();
        if (peek().kind == Tok::Caret) {
            take();
            // Right-associative; the exponent may itself carry a unary minus.
            AstPtr expo = parse_unary();
            return Ast::make_binary(AstKind::Pow, std::move(base), std::move(expo));
        }
        return base;
    }

    AstPtr parse_primary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Number: {
            Token n = take();
            return Ast::make_number(n.number);
        }
        case Tok::LParen: {
            take();
            AstPtr e = parse_sum();
            expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Ident: {
            Token id = take();
            if (id.ident == "x" || id.ident == "y")
                return Ast::make_variable(id.ident[0]);
            if (id.ident == "pi")
                return Ast::make_pi();
            if (id.ident == "pow") {
                expect(Tok::LParen, "'(' after 'pow'");
                AstPtr a = parse_sum();
                expect(Tok::Comma, "',' between the two pow arguments");
                AstPtr b = parse_sum();
                expect(Tok::RParen, "')'");
                return Ast::make_binary(AstKind::Pow, std::move(a), std::move(b));
            }
            Func f;
            if (id.ident == "sin") f = Func::Sin;
            else if (id.ident == "cos") f = Func::Cos;
            else if (id.ident == "exp") f = Func::Exp;
            else if (id.ident == "ln") f = Func::Ln;
            else if (id.ident == "abs") f = Func::Abs;
            else if (id.ident == "sqrt") f = Func::Sqrt;
            else if (id.ident == "gamma") f = Func::Gamma;
            else
                throw SyntaxError(id.offset,
                                  "a known name (x, y, pi, sin, cos, exp, ln, abs, sqrt, pow, gamma)");
            expect(Tok::LParen, "'(' after function name");
            AstPtr arg = parse_sum();
            expect(Tok::RParen, "')'");
            return Ast::make_call(f, std::move(arg));
        }
        default:
            throw SyntaxError(t.offset, "a value (number, variable, constant, or '(')");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

AstPtr parse(std::string_view source)
{
    return Parser(source).run();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

double eval_impl(const Ast& n, const std::optional<double>& x, const std::optional<double>& y)
{
    switch (n.kind) {
    case AstKind::Number:
        return n.number;
    case AstKind::Pi:
        return M_PI;
    case AstKind::Variable: {
        const auto& slot = (n.var == 'x') ? x : y;
        if (!slot)
            throw EvalError(std::string("variable '") + n.var + "' is not bound");
        return *slot;
    }
    case AstKind::Neg:
        return -eval_impl(*n.lhs, x, y);
    case AstKind::Add:
        return eval_impl(*n.lhs, x, y) + eval_impl(*n.rhs, x, y);
    case AstKind::Sub:
        return eval_impl(*n.lhs, x, y) - eval_impl(*n.rhs, x, y);
    case AstKind::Mul:
        return eval_impl(*n.lhs, x, y) * eval_impl(*n.rhs, x, y);
    case AstKind::Div: {
        const double num = eval_impl(*n.lhs, x, y);
        const double den = eval_impl(*n.rhs, x, y);
        if (den == 0.0)
            throw EvalError("division by zero");
        return num / den;
    }
    case AstKind::Pow: {
        const double base = eval_impl(*n.lhs, x, y);
        const double expo = eval_impl(*n.rhs, x, y);
        if (base == 0.0 && expo < 0.0)
            throw EvalError("zero raised to a negative power");
        if (base < 0.0 && expo != std::floor(expo))
            throw EvalError("negative base with a non-integer exponent");
        return std::pow(base, expo);
    }
    case AstKind::Call: {
        const double a = eval_impl(*n.lhs, x, y);
        switch (n.func) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Exp: return std::exp(a);
        case Func::Ln:
            if (a <= 0.0)
                throw EvalError("logarithm of a non-positive argument");
            return std::log(a);
        case Func::Abs: return std::abs(a);
        case Func::Sqrt:
            if (a < 0.0)
                throw EvalError("square root of a negative argument");
            return std::sqrt(a);
        case Func::Gamma: return gammafn(a);
        }
        break;
    }
    }
    throw EvalError("malformed expression tree");
}

} // namespace

double eval(const Ast& ast, double x)
{
    return eval_impl(ast, x, std::nullopt);
}

double eval(const Ast& ast, double x, double y)
{
    return eval_impl(ast, x, y);
}

// ---------------------------------------------------------------------------
// Simplification: constant folding + identity elimination
// ---------------------------------------------------------------------------

namespace {

bool is_number(const AstPtr& e, double v)
{
    return e->kind == AstKind::Number && e->number == v;
}

// Negative constants are represented as Neg(Number) so every tree we
// produce parses back unchanged.
AstPtr fold_constant(double v)
{
    if (v < 0.0)
        return Ast::make_neg(Ast::make_number(-v));
    return Ast::make_number(v);
}

std::optional<double> as_constant(const AstPtr& e)
{
    if (e->kind == AstKind::Number)
        return e->number;
    if (e->kind == AstKind::Neg && e->lhs->kind == AstKind::Number)
        return -e->lhs->number;
    return std::nullopt;
}

} // namespace

AstPtr simplify(const AstPtr& ast)
{
    switch (ast->kind) {
    case AstKind::Number:
    case AstKind::Variable:
    case AstKind::Pi:
        return ast;
    case AstKind::Neg: {
        AstPtr c = simplify(ast->lhs);
        if (c->kind == AstKind::Neg)
            return c->lhs;
        if (is_number(c, 0.0))
            return c;
        return Ast::make_neg(std::move(c));
    }
    case AstKind::Call: {
        AstPtr a = simplify(ast->lhs);
        return Ast::make_call(ast->func, std::move(a));
    }
    default:
        break;
    }

    AstPtr l = simplify(ast->lhs);
    AstPtr r = simplify(ast->rhs);
    const auto lc = as_constant(l);
    const auto rc = as_constant(r);

    if (lc && rc) {
        double v = 0.0;
        bool ok = true;
        switch (ast->kind) {
        case AstKind::Add: v = *lc + *rc; break;
        case AstKind::Sub: v = *lc - *rc; break;
        case AstKind::Mul: v = *lc * *rc; break;
        case AstKind::Div:
            ok = (*rc != 0.0);
            if (ok) v = *lc / *rc;
            break;
        case AstKind::Pow:
            v = std::pow(*lc, *rc);
            ok = std::isfinite(v);
            break;
        default: ok = false; break;
        }
        if (ok && std::isfinite(v))
            return fold_constant(v);
    }

    switch (ast->kind) {
    case AstKind::Add:
        if (is_number(l, 0.0)) return r;
        if (is_number(r, 0.0)) return l;
        break;
    case AstKind::Sub:
        if (is_number(r, 0.0)) return l;
        if (is_number(l, 0.0)) return simplify(Ast::make_neg(r));
        break;
    case AstKind::Mul:
        if (is_number(l, 0.0) || is_number(r, 0.0)) return Ast::make_number(0.0);
        if (is_number(l, 1.0)) return r;
        if (is_number(r, 1.0)) return l;
        break;
    case AstKind::Div:
        if (is_number(r, 1.0)) return l;
        if (is_number(l, 0.0)) return l;
        break;
    case AstKind::Pow:
        if (is_number(r, 1.0)) return l;
        if (is_number(r, 0.0)) return Ast::make_number(1.0);
        break;
    default:
        break;
    }
    return Ast::make_binary(ast->kind, std::move(l), std::move(r));
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

bool references(const Ast& ast, char var)
{
    switch (ast.kind) {
    case AstKind::Variable:
        return ast.var == var;
    case AstKind::Number:
    case AstKind::Pi:
        return false;
    default:
        if (ast.lhs && references(*ast.lhs, var)) return true;
        if (ast.rhs && references(*ast.rhs, var)) return true;
        return false;
    }
}

namespace {

AstPtr diff(const AstPtr& n, char var)
{
    switch (n->kind) {
    case AstKind::Number:
    case AstKind::Pi:
        return Ast::make_number(0.0);
    case AstKind::Variable:
        return Ast::make_number(n->var == var ? 1.0 : 0.0);
    case AstKind::Neg:
        return Ast::make_neg(diff(n->lhs, var));
    case AstKind::Add:
    case AstKind::Sub:
        return Ast::make_binary(n->kind, diff(n->lhs, var), diff(n->rhs, var));
    case AstKind::Mul:
        // (uv)' = u'v + uv'
        return Ast::make_binary(
            AstKind::Add,
            Ast::make_binary(AstKind::Mul, diff(n->lhs, var), n->rhs),
            Ast::make_binary(AstKind::Mul, n->lhs, diff(n->rhs, var)));
    case AstKind::Div:
        // (u/v)' = (u'v - uv') / v^2
        return Ast::make_binary(
            AstKind::Div,
            Ast::make_binary(AstKind::Sub,
                             Ast::make_binary(AstKind::Mul, diff(n->lhs, var), n->rhs),
                             Ast::make_binary(AstKind::Mul, n->lhs, diff(n->rhs, var))),
            Ast::make_binary(AstKind::Pow, n->rhs, Ast::make_number(2.0)));
    case AstKind::Pow: {
        const bool base_const = !references(*n->lhs, var);
        const bool expo_const = !references(*n->rhs, var);
        if (expo_const) {
            if (base_const)
                return Ast::make_number(0.0);
            // (u^c)' = c * u^(c-1) * u'
            AstPtr expo_minus_one =
                Ast::make_binary(AstKind::Sub, n->rhs, Ast::make_number(1.0));
            return Ast::make_binary(
                AstKind::Mul,
                Ast::make_binary(AstKind::Mul, n->rhs,
                                 Ast::make_binary(AstKind::Pow, n->lhs, std::move(expo_minus_one))),
                diff(n->lhs, var));
        }
        if (base_const) {
            // (c^v)' = c^v * ln(c) * v'
            return Ast::make_binary(
                AstKind::Mul,
                Ast::make_binary(AstKind::Mul, n, Ast::make_call(Func::Ln, n->lhs)),
                diff(n->rhs, var));
        }
        // General u^v: u^v * (v' ln u + v u'/u)
        return Ast::make_binary(
            AstKind::Mul, n,
            Ast::make_binary(
                AstKind::Add,
                Ast::make_binary(AstKind::Mul, diff(n->rhs, var), Ast::make_call(Func::Ln, n->lhs)),
                Ast::make_binary(AstKind::Mul, n->rhs,
                                 Ast::make_binary(AstKind::Div, diff(n->lhs, var), n->lhs))));
    }
    case AstKind::Call: {
        AstPtr inner = diff(n->lhs, var);
        switch (n->func) {
        case Func::Sin:
            return Ast::make_binary(AstKind::Mul, Ast::make_call(Func::Cos, n->lhs), std::move(inner));
        case Func::Cos:
            return Ast::make_binary(AstKind::Mul,
                                    Ast::make_neg(Ast::make_call(Func::Sin, n->lhs)),
                                    std::move(inner));
        case Func::Exp:
            return Ast::make_binary(AstKind::Mul, n, std::move(inner));
        case Func::Ln:
            return Ast::make_binary(AstKind::Div, std::move(inner), n->lhs);
        case Func::Sqrt:
            return Ast::make_binary(
                AstKind::Div, std::move(inner),
                Ast::make_binary(AstKind::Mul, Ast::make_number(2.0), AstPtr(n)));
        case Func::Abs:
            throw EvalError("abs is not differentiable");
        case Func::Gamma:
            if (!references(*n->lhs, var))
                return Ast::make_number(0.0);
            throw EvalError("gamma of a non-constant argument is not differentiable");
        }
        break;
    }
    }
    throw EvalError("malformed expression tree");
}

} // namespace

AstPtr differentiate(const Ast& ast, char var)
{
    // The shared_ptr aliasing below never mutates; wrap the root so diff can
    // reference subtrees of the original without copying.
    auto root = std::make_shared<Ast>(ast);
    return simplify(diff(root, var));
}

// ---------------------------------------------------------------------------
// Pretty printing
// ---------------------------------------------------------------------------

namespace {

int precedence(const Ast& n)
{
    switch (n.kind) {
    case AstKind::Add:
    case AstKind::Sub: return 1;
    case AstKind::Mul:
    case AstKind::Div: return 2;
    case AstKind::Neg: return 3;
    case AstKind::Pow: return 4;
    default: return 5;
    }
}

std::string format_number(double v)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

const char* func_name(Func f)
{
    switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Ln: return "ln";
    case Func::Abs: return "abs";
    case Func::Sqrt: return "sqrt";
    case Func::Gamma: return "gamma";
    }
    return "?";
}

void print(const Ast& n, std::string& out)
{
    const auto child = [&out](const Ast& c, bool parens) {
        if (parens) out += '(';
        print(c, out);
        if (parens) out += ')';
    };

    switch (n.kind) {
    case AstKind::Number:
        out += format_number(n.number);
        return;
    case AstKind::Variable:
        out += n.var;
        return;
    case AstKind::Pi:
        out += "pi";
        return;
    case AstKind::Neg:
        out += '-';
        child(*n.lhs, precedence(*n.lhs) < 3);
        return;
    case AstKind::Add:
    case AstKind::Sub:
        child(*n.lhs, precedence(*n.lhs) < 1);
        out += (n.kind == AstKind::Add) ? " + " : " - ";
        child(*n.rhs, precedence(*n.rhs) <= 1);
        return;
    case AstKind::Mul:
    case AstKind::Div:
        child(*n.lhs, precedence(*n.lhs) < 2);
        out += (n.kind == AstKind::Mul) ? "*" : "/";
        child(*n.rhs, precedence(*n.rhs) <= 2);
        return;
    case AstKind::Pow:
        child(*n.lhs, precedence(*n.lhs) <= 4);
        out += '^';
        child(*n.rhs, precedence(*n.rhs) < 4);
        return;
    case AstKind::Call:
        out += func_name(n.func);
        out += '(';
        print(*n.lhs, out);
        out += ')';
        return;
    }
}

} // namespace

std::string pretty(const Ast& ast)
{
    std::string out;
    print(ast, out);
    return out;
}

bool structurally_equal(const Ast& a, const Ast& b)
{
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case AstKind::Number:
        return a.number == b.number;
    case AstKind::Variable:
        return a.var == b.var;
    case AstKind::Pi:
        return true;
    case AstKind::Call:
        if (a.func != b.func)
            return false;
        return structurally_equal(*a.lhs, *b.lhs);
    case AstKind::Neg:
        return structurally_equal(*a.lhs, *b.lhs);
    default:
        return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

} // namespace fraccalc
