#include "bifh/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace bifh {

ExprPtr ExprNode::constant(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Constant;
    n->value = v;
    return n;
}

ExprPtr ExprNode::variable(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Variable;
    n->name = std::move(name);
    return n;
}

ExprPtr ExprNode::binary(Kind k, ExprPtr a, ExprPtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

ExprPtr ExprNode::neg(ExprPtr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Neg;
    n->lhs = std::move(a);
    return n;
}

ExprPtr ExprNode::pow(ExprPtr base, long long num, long long den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Pow;
    n->lhs = std::move(base);
    n->pow_num = num;
    n->pow_den = den;
    return n;
}

ExprPtr ExprNode::call(std::string fn, ExprPtr arg) {
    auto n = std::make_shared<ExprNode>();
    n->kind = Kind::Call;
    n->name = std::move(fn);
    n->lhs = std::move(arg);
    return n;
}

const std::set<std::string>& default_variables() {
    static const std::set<std::string> vars = {"s", "k1", "k2", "k3"};
    return vars;
}

const std::set<std::string>& chart_variables() {
    static const std::set<std::string> vars = {"s", "k1", "k2", "k3", "u", "v"};
    return vars;
}

namespace {

const std::set<std::string>& functions() {
    static const std::set<std::string> fns = {"sin", "cos", "exp", "log", "sqrt"};
    return fns;
}

class Parser {
public:
    Parser(const std::string& text, const std::set<std::string>& variables)
        : text_(text), vars_(variables) {}

    ExprAst run() {
        if (text_.empty()) throw SyntaxError("empty expression", 0);
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return ExprAst(std::move(e));
    }

private:
    const std::string& text_;
    const std::set<std::string>& vars_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+'))
                e = ExprNode::binary(ExprNode::Kind::Add, e, term());
            else if (eat('-'))
                e = ExprNode::binary(ExprNode::Kind::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = unary();
        for (;;) {
            if (eat('*'))
                e = ExprNode::binary(ExprNode::Kind::Mul, e, unary());
            else if (eat('/'))
                e = ExprNode::binary(ExprNode::Kind::Div, e, unary());
            else
                return e;
        }
    }

    ExprPtr unary() {
        if (eat('-')) return ExprNode::neg(unary());
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (eat('^')) {
            auto [num, den] = exponent();
            return ExprNode::pow(std::move(base), num, den);
        }
        return base;
    }

    long long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw SyntaxError("expected integer exponent", start);
        return std::strtoll(text_.substr(start, pos_ - start).c_str(), nullptr, 10);
    }

    std::pair<long long, long long> exponent() {
        if (eat('(')) {
            bool negative = eat('-');
            long long num = integer();
            long long den = 1;
            if (eat('/')) den = integer();
            if (!eat(')')) throw SyntaxError("expected ')' after exponent", pos_);
            if (den == 0) throw SyntaxError("zero exponent denominator", pos_);
            return {negative ? -num : num, den};
        }
        bool negative = eat('-');
        long long num = integer();
        return {negative ? -num : num, 1};
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        if (eat('(')) {
            ExprPtr e = expr();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return e;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr number() {
        std::size_t start = pos_;
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw SyntaxError("malformed number", start);
        // reject exponent-style literals consuming identifier chars oddly
        pos_ += static_cast<std::size_t>(end - begin);
        return ExprNode::constant(v);
    }

    ExprPtr identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        if (functions().count(name)) {
            if (!eat('(')) throw SyntaxError("expected '(' after function '" + name + "'", pos_);
            ExprPtr arg = expr();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return ExprNode::call(name, std::move(arg));
        }
        if (name == "pi") return ExprNode::constant(3.14159265358979323846);
        if (name == "e") return ExprNode::constant(2.71828182845904523536);
        if (vars_.count(name)) return ExprNode::variable(name);
        throw UnknownIdentifier(name, start);
    }
};

int precedence(ExprNode::Kind k) {
    switch (k) {
        case ExprNode::Kind::Add:
        case ExprNode::Kind::Sub:
            return 1;
        case ExprNode::Kind::Mul:
        case ExprNode::Kind::Div:
            return 2;
        case ExprNode::Kind::Neg:
            return 3;
        case ExprNode::Kind::Pow:
            return 4;
        default:
            return 5;
    }
}

void print_node(const ExprPtr& n, std::ostringstream& out, int parent_prec) {
    int prec = precedence(n->kind);
    bool parens = prec < parent_prec;
    if (parens) out << '(';
    switch (n->kind) {
        case ExprNode::Kind::Constant: {
            if (n->value < 0) {
                out << '(' << n->value << ')';
            } else {
                std::ostringstream tmp;
                tmp.precision(17);
                tmp << n->value;
                out << tmp.str();
            }
            break;
        }
        case ExprNode::Kind::Variable:
            out << n->name;
            break;
        case ExprNode::Kind::Add:
            print_node(n->lhs, out, prec);
            out << '+';
            print_node(n->rhs, out, prec + 1);
            break;
        case ExprNode::Kind::Sub:
            print_node(n->lhs, out, prec);
            out << '-';
            print_node(n->rhs, out, prec + 1);
            break;
        case ExprNode::Kind::Mul:
            print_node(n->lhs, out, prec);
            out << '*';
            print_node(n->rhs, out, prec + 1);
            break;
        case ExprNode::Kind::Div:
            print_node(n->lhs, out, prec);
            out << '/';
            print_node(n->rhs, out, prec + 1);
            break;
        case ExprNode::Kind::Neg:
            out << '-';
            print_node(n->lhs, out, prec + 1);
            break;
        case ExprNode::Kind::Pow:
            print_node(n->lhs, out, prec + 1);
            out << '^';
            if (n->pow_den == 1 && n->pow_num >= 0)
                out << n->pow_num;
            else if (n->pow_den == 1)
                out << '(' << n->pow_num << ')';
            else
                out << '(' << n->pow_num << '/' << n->pow_den << ')';
            break;
        case ExprNode::Kind::Call:
            out << n->name << '(';
            print_node(n->lhs, out, 0);
            out << ')';
            break;
    }
    if (parens) out << ')';
}

bool nodes_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprNode::Kind::Constant:
            return a->value == b->value;
        case ExprNode::Kind::Variable:
            return a->name == b->name;
        case ExprNode::Kind::Pow:
            return a->pow_num == b->pow_num && a->pow_den == b->pow_den &&
                   nodes_equal(a->lhs, b->lhs);
        case ExprNode::Kind::Call:
            return a->name == b->name && nodes_equal(a->lhs, b->lhs);
        case ExprNode::Kind::Neg:
            return nodes_equal(a->lhs, b->lhs);
        default:
            return nodes_equal(a->lhs, b->lhs) && nodes_equal(a->rhs, b->rhs);
    }
}

Jet3 eval_node(const ExprPtr& n, const Bindings& bindings) {
    Jet3 out;
    switch (n->kind) {
        case ExprNode::Kind::Constant:
            out = Jet3::constant(n->value);
            break;
        case ExprNode::Kind::Variable: {
            auto it = bindings.find(n->name);
            if (it == bindings.end()) throw MissingBinding(n->name);
            out = it->second;
            break;
        }
        case ExprNode::Kind::Add:
            out = eval_node(n->lhs, bindings) + eval_node(n->rhs, bindings);
            break;
        case ExprNode::Kind::Sub:
            out = eval_node(n->lhs, bindings) - eval_node(n->rhs, bindings);
            break;
        case ExprNode::Kind::Mul:
            out = eval_node(n->lhs, bindings) * eval_node(n->rhs, bindings);
            break;
        case ExprNode::Kind::Div:
            out = eval_node(n->lhs, bindings) / eval_node(n->rhs, bindings);
            break;
        case ExprNode::Kind::Neg:
            out = -eval_node(n->lhs, bindings);
            break;
        case ExprNode::Kind::Pow:
            out = pow_rational(eval_node(n->lhs, bindings), n->pow_num, n->pow_den);
            break;
        case ExprNode::Kind::Call: {
            Jet3 arg = eval_node(n->lhs, bindings);
            if (n->name == "sin")
                out = sin(arg);
            else if (n->name == "cos")
                out = cos(arg);
            else if (n->name == "exp")
                out = exp(arg);
            else if (n->name == "log")
                out = log(arg);
            else
                out = sqrt(arg);
            break;
        }
    }
    if (!out.finite()) throw DomainError("non-finite value in expression evaluation");
    return out;
}

}  // namespace

ExprAst parse(const std::string& text, const std::set<std::string>& variables) {
    return Parser(text, variables).run();
}

std::string print(const ExprAst& ast) {
    std::ostringstream out;
    out.precision(17);
    print_node(ast.root(), out, 0);
    return out.str();
}

bool ExprAst::structurally_equal(const ExprAst& other) const {
    return nodes_equal(root_, other.root_);
}

Jet3 eval_jet(const ExprAst& ast, const Bindings& bindings) {
    return eval_node(ast.root(), bindings);
}

Jet3 eval_jet(const ExprAst& ast, double s, const Bindings& curvature_jets) {
    Bindings b = curvature_jets;
    b["s"] = Jet3::variable(s);
    return eval_node(ast.root(), b);
}

bool validate_positive(const ExprAst& ast, const std::vector<double>& grid,
                       const std::vector<Bindings>& curvature_jets) {
    static const Bindings no_jets;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Bindings& kj = curvature_jets.empty() ? no_jets : curvature_jets[i];
        if (eval_jet(ast, grid[i], kj).v0 <= 0.0) return false;
    }
    return true;
}

}  // namespace bifh
