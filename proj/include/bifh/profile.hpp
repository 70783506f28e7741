#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "bifh/expr.hpp"
#include "bifh/spline.hpp"

namespace bifh {

// One curvature function k_i(s): identically zero, a closed-form expression
// in s, or sampled data behind a spline fit. Jets to order 3 are available
// everywhere in the domain.
class ScalarProfile {
public:
    ScalarProfile() : repr_(Zero{}) {}

    static ScalarProfile zero() { return ScalarProfile(); }
    static ScalarProfile constant(double v) { return ScalarProfile(ExprAst(ExprNode::constant(v))); }
    static ScalarProfile expression(ExprAst ast) { return ScalarProfile(std::move(ast)); }
    static ScalarProfile sampled(std::vector<double> s, std::vector<double> values) {
        return ScalarProfile(CubicSpline(std::move(s), std::move(values)));
    }

    bool identically_zero() const { return std::holds_alternative<Zero>(repr_); }

    Jet3 jet(double s) const {
        if (auto* ast = std::get_if<ExprAst>(&repr_)) return eval_jet(*ast, s);
        if (auto* sp = std::get_if<CubicSpline>(&repr_)) return sp->jet(s);
        return Jet3::constant(0.0);
    }

private:
    struct Zero {};
    explicit ScalarProfile(ExprAst ast) : repr_(std::move(ast)) {}
    explicit ScalarProfile(CubicSpline sp) : repr_(std::move(sp)) {}
    std::variant<Zero, ExprAst, CubicSpline> repr_;
};

// Curvature profile k1, k2, k3 over an arclength interval.
struct CurvatureProfile {
    ScalarProfile k1, k2, k3;
    double s0 = 0.0;
    double s1 = 1.0;

    std::vector<double> grid(int n) const {
        std::vector<double> g(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            g[static_cast<std::size_t>(i)] = s0 + (s1 - s0) * i / (n - 1);
        return g;
    }

    // Jets for the curvature references at s, keyed k1/k2/k3.
    Bindings curvature_jets(double s) const {
        return {{"k1", k1.jet(s)}, {"k2", k2.jet(s)}, {"k3", k3.jet(s)}};
    }
};

}  // namespace bifh
