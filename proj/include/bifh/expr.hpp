#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bifh/jet.hpp"

namespace bifh {

// Parsed scalar expression of the arclength variable (and curvature references).
//
// Grammar (deliberately tiny; anything else is a parse error):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' exponent)?          -- right-associative, binds tighter
//                                              than unary minus
//   atom   := number | 's' | 'k1' | 'k2' | 'k3' | 'pi' | 'e'
//           | ('sin'|'cos'|'exp'|'log'|'sqrt') '(' expr ')'
//           | '(' expr ')'
//   exponent := integer | '(' '-'? integer ('/' integer)? ')' | '-'? integer
//
// Exponents are rational literals stored as integer pairs (num, den), den >= 1.

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow, Call };

    Kind kind;
    double value = 0.0;        // Constant
    std::string name;          // Variable / Call
    long long pow_num = 1;     // Pow
    long long pow_den = 1;
    ExprPtr lhs, rhs;

    static ExprPtr constant(double v);
    static ExprPtr variable(std::string name);
    static ExprPtr binary(Kind k, ExprPtr a, ExprPtr b);
    static ExprPtr neg(ExprPtr a);
    static ExprPtr pow(ExprPtr base, long long num, long long den);
    static ExprPtr call(std::string fn, ExprPtr arg);
};

class ExprAst {
public:
    ExprAst() = default;
    explicit ExprAst(ExprPtr root) : root_(std::move(root)) {}

    const ExprPtr& root() const { return root_; }
    bool empty() const { return root_ == nullptr; }

    bool structurally_equal(const ExprAst& other) const;

private:
    ExprPtr root_;
};

// Identifier set accepted by default; chart component expressions extend it
// with the chart parameters u and v.
const std::set<std::string>& default_variables();
const std::set<std::string>& chart_variables();

ExprAst parse(const std::string& text, const std::set<std::string>& variables = default_variables());

// Deterministic printer; parse(print(ast)) round-trips structurally.
std::string print(const ExprAst& ast);

using Bindings = std::map<std::string, Jet3>;

// Evaluate value and exact chain-rule derivatives to order 3.
// `bindings` supplies jets for every variable occurring in the AST.
Jet3 eval_jet(const ExprAst& ast, const Bindings& bindings);

// Convenience: bind s as the independent variable plus curvature jets.
Jet3 eval_jet(const ExprAst& ast, double s, const Bindings& curvature_jets = {});

// True iff the value of the expression is > 0 at every grid point.
bool validate_positive(const ExprAst& ast, const std::vector<double>& grid,
                       const std::vector<Bindings>& curvature_jets = {});

}  // namespace bifh
