#include "folia/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace folia {

ExprPtr Expr::make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->number = v;
    return e;
}
ExprPtr Expr::make_coord(int index) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Coord;
    e->coord_index = index;
    return e;
}
ExprPtr Expr::make_param(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Param;
    e->param = std::move(name);
    return e;
}
ExprPtr Expr::make_unary(Kind k, ExprPtr a) {
    // fold negated literals so parse(render(e)) is structurally stable
    if (k == Kind::Neg && a->kind == Kind::Number) return make_number(-a->number);
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(a);
    return e;
}
ExprPtr Expr::make_binary(Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}
ExprPtr Expr::make_pow(ExprPtr a, int n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pow;
    e->a = std::move(a);
    e->exponent = n;
    return e;
}

namespace {

struct Parser {
    const std::string& text;
    const std::array<std::string, 4>& coords;
    const std::vector<std::string>& params;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& msg, const std::string& expected) {
        skip_ws();
        throw ParseError(pos, msg, expected);
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (eat('+'))
                lhs = Expr::make_binary(Expr::Kind::Add, lhs, parse_term());
            else if (eat('-'))
                lhs = Expr::make_binary(Expr::Kind::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            if (eat('*'))
                lhs = Expr::make_binary(Expr::Kind::Mul, lhs, parse_factor());
            else if (eat('/'))
                lhs = Expr::make_binary(Expr::Kind::Div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    ExprPtr parse_factor() {
        if (eat('-')) return Expr::make_unary(Expr::Kind::Neg, parse_factor());
        ExprPtr base = parse_atom();
        if (eat('^')) {
            bool neg = eat('-');
            skip_ws();
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) fail("expected integer exponent", "integer");
            int n = std::atoi(text.substr(start, pos - start).c_str());
            return Expr::make_pow(base, neg ? -n : n);
        }
        return base;
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input", "number, name or '('");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        if (c == '(') {
            ++pos;
            ExprPtr e = parse_expr();
            if (!eat(')')) fail("expected ')'", ")");
            return e;
        }
        fail("unexpected character", "number, name or '('");
    }

    ExprPtr parse_number() {
        size_t start = pos;
        const char* begin = text.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number", "number");
        pos = start + static_cast<size_t>(end - begin);
        return Expr::make_number(v);
    }

    ExprPtr parse_ident() {
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);

        static const std::map<std::string, Expr::Kind> functions = {
            {"sin", Expr::Kind::Sin},   {"cos", Expr::Kind::Cos}, {"exp", Expr::Kind::Exp},
            {"ln", Expr::Kind::Log},    {"log", Expr::Kind::Log}, {"sqrt", Expr::Kind::Sqrt},
        };
        auto fn = functions.find(name);
        if (fn != functions.end()) {
            skip_ws();
            if (!eat('(')) throw ParseError(pos, "function '" + name + "' requires an argument", "(");
            ExprPtr arg = parse_expr();
            if (eat(',')) throw ParseError(pos - 1, "function '" + name + "' takes one argument", ")");
            if (!eat(')')) fail("expected ')'", ")");
            return Expr::make_unary(fn->second, arg);
        }
        for (int i = 0; i < 4; ++i)
            if (coords[i] == name) return Expr::make_coord(i);
        for (const auto& p : params)
            if (p == name) return Expr::make_param(name);
        throw ParseError(start, "unknown identifier '" + name + "'", "coordinate or parameter");
    }
};

}  // namespace

ExprPtr parse(const std::string& text, const std::array<std::string, 4>& coords,
              const std::vector<std::string>& params) {
    if (text.empty()) throw ParseError(0, "empty expression", "expression");
    Parser p{text, coords, params};
    ExprPtr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input", "end of expression");
    return e;
}

namespace {

void render_to(const ExprPtr& e, const std::array<std::string, 4>& coords, std::ostream& out) {
    using K = Expr::Kind;
    switch (e->kind) {
        case K::Number: {
            std::ostringstream num;
            num.precision(17);
            num << e->number;
            // parenthesize negative literals so they survive e.g. a '^' that
            // would otherwise bind tighter than the sign
            if (e->number < 0.0)
                out << "(" << num.str() << ")";
            else
                out << num.str();
            return;
        }
        case K::Coord:
            out << coords[e->coord_index];
            return;
        case K::Param:
            out << e->param;
            return;
        case K::Add:
        case K::Sub:
        case K::Mul:
        case K::Div: {
            const char* op = e->kind == K::Add ? "+" : e->kind == K::Sub ? "-"
                             : e->kind == K::Mul ? "*" : "/";
            out << "(";
            render_to(e->a, coords, out);
            out << op;
            render_to(e->b, coords, out);
            out << ")";
            return;
        }
        case K::Neg:
            out << "(-";
            render_to(e->a, coords, out);
            out << ")";
            return;
        case K::Pow:
            out << "(";
            render_to(e->a, coords, out);
            out << "^" << e->exponent << ")";
            return;
        case K::Sin: out << "sin("; render_to(e->a, coords, out); out << ")"; return;
        case K::Cos: out << "cos("; render_to(e->a, coords, out); out << ")"; return;
        case K::Exp: out << "exp("; render_to(e->a, coords, out); out << ")"; return;
        case K::Log: out << "ln("; render_to(e->a, coords, out); out << ")"; return;
        case K::Sqrt: out << "sqrt("; render_to(e->a, coords, out); out << ")"; return;
    }
}

}  // namespace

std::string render(const ExprPtr& e, const std::array<std::string, 4>& coords) {
    std::ostringstream out;
    render_to(e, coords, out);
    return out.str();
}

std::string render_debug(const ExprPtr& e) {
    return render(e, {"$0", "$1", "$2", "$3"});
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    using K = Expr::Kind;
    switch (a->kind) {
        case K::Number: return a->number == b->number;
        case K::Coord: return a->coord_index == b->coord_index;
        case K::Param: return a->param == b->param;
        case K::Pow:
            return a->exponent == b->exponent && structurally_equal(a->a, b->a);
        default:
            if (a->b || b->b)
                return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
            return structurally_equal(a->a, b->a);
    }
}

namespace {

Jet2 eval_rec(const ExprPtr& e, const Vec4d& p, const Params& params) {
    using K = Expr::Kind;
    try {
        switch (e->kind) {
            case K::Number: return Jet2::constant(e->number);
            case K::Coord: return Jet2::variable(p[e->coord_index], e->coord_index);
            case K::Param: {
                auto it = params.find(e->param);
                if (it == params.end())
                    throw EvalDomainError(e->param, p, "unbound parameter");
                return Jet2::constant(it->second);
            }
            case K::Add: return eval_rec(e->a, p, params) + eval_rec(e->b, p, params);
            case K::Sub: return eval_rec(e->a, p, params) - eval_rec(e->b, p, params);
            case K::Mul: return eval_rec(e->a, p, params) * eval_rec(e->b, p, params);
            case K::Div: return eval_rec(e->a, p, params) / eval_rec(e->b, p, params);
            case K::Neg: return -eval_rec(e->a, p, params);
            case K::Pow: return pow_int(eval_rec(e->a, p, params), e->exponent);
            case K::Sin: return sin(eval_rec(e->a, p, params));
            case K::Cos: return cos(eval_rec(e->a, p, params));
            case K::Exp: return exp(eval_rec(e->a, p, params));
            case K::Log: return log(eval_rec(e->a, p, params));
            case K::Sqrt: return sqrt(eval_rec(e->a, p, params));
        }
        throw std::logic_error("unreachable expression kind");
    } catch (const JetDomainError& err) {
        throw EvalDomainError(render_debug(e), p, err.what());
    }
}

}  // namespace

Jet2 eval_jet2(const ExprPtr& e, const Vec4d& p, const Params& params) {
    return eval_rec(e, p, params);
}

double eval_value(const ExprPtr& e, const Vec4d& p, const Params& params) {
    return eval_rec(e, p, params).v;
}

}  // namespace folia
