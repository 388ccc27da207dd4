#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "folia/jet.hpp"
#include "folia/linalg.hpp"

namespace folia {

struct ParseError : std::runtime_error {
    size_t offset;
    std::string expected;
    ParseError(size_t off, const std::string& msg, std::string exp = "")
        : std::runtime_error(msg + " at offset " + std::to_string(off)),
          offset(off),
          expected(std::move(exp)) {}
};

struct EvalDomainError : std::runtime_error {
    std::string subexpression;
    Vec4d point;
    EvalDomainError(const std::string& sub, const Vec4d& p, const std::string& what)
        : std::runtime_error("domain error in '" + sub + "': " + what),
          subexpression(sub),
          point(p) {}
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Closed-form scalar expression over the four chart coordinates and a set
/// of named parameters. Trees are immutable; evaluation is pure.
struct Expr {
    enum class Kind {
        Number,
        Coord,
        Param,
        Add,
        Sub,
        Mul,
        Div,
        Neg,
        Pow,   // integer exponent
        Sin,
        Cos,
        Exp,
        Log,
        Sqrt,
    };

    Kind kind;
    double number = 0.0;       // Number
    int coord_index = -1;      // Coord
    std::string param;         // Param
    int exponent = 0;          // Pow
    ExprPtr a, b;

    static ExprPtr make_number(double v);
    static ExprPtr make_coord(int index);
    static ExprPtr make_param(std::string name);
    static ExprPtr make_unary(Kind k, ExprPtr a);
    static ExprPtr make_binary(Kind k, ExprPtr a, ExprPtr b);
    static ExprPtr make_pow(ExprPtr a, int n);
};

using Params = std::map<std::string, double>;

/// Parse an expression over the given coordinate names and parameter names.
/// Throws ParseError with a byte offset on malformed input or unknown
/// identifiers.
ExprPtr parse(const std::string& text, const std::array<std::string, 4>& coords,
              const std::vector<std::string>& params);

/// Render back to a fully parenthesized string; parse(render(e, coords))
/// reproduces e up to structural equality.
std::string render(const ExprPtr& e, const std::array<std::string, 4>& coords);

/// Render with anonymous coordinate names (diagnostics only).
std::string render_debug(const ExprPtr& e);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

/// Evaluate to a second-order jet at p. All parameters must be bound.
Jet2 eval_jet2(const ExprPtr& e, const Vec4d& p, const Params& params);

/// Value-only evaluation (same domain rules).
double eval_value(const ExprPtr& e, const Vec4d& p, const Params& params);

}  // namespace folia
