#pragma once

#include <string>
#include <vector>

#include "bifh/curve.hpp"
#include "bifh/report.hpp"

namespace bifh {

// Positive weight function along the curve, possibly referencing curvatures.
struct WeightFn {
    ExprAst ast;
    std::string tag = "custom";  // constant | affine | trig | exponential |
                                 // curvature-power | custom

    static WeightFn one() { return {ExprAst(ExprNode::constant(1.0)), "constant"}; }
    static WeightFn from_expression(std::string text, std::string tag = "custom") {
        return {parse(text), std::move(tag)};
    }

    Jet3 jet(double s) const { return eval_jet(ast, s); }
    Jet3 jet(double s, const Bindings& curvature_jets) const {
        return eval_jet(ast, s, curvature_jets);
    }
};

// Unit tangent-direction field dγ/ds (4th-order stencils, one-sided at the
// ends so the field covers every sample).
std::vector<AmbientVector> tangent_field(const SpaceForm& space, const CurveSamples& samples);

// τ(γ) = ∇_T T; margin of covariant_margin samples at each end.
std::vector<AmbientVector> tension_field(const SpaceForm& space, const CurveSamples& samples);

// τ_f(γ) = f·τ(γ) + f′·T.
std::vector<AmbientVector> f_tension_field(const SpaceForm& space, const CurveSamples& samples,
                                           const WeightFn& f);

// Bi-f-tension evaluated directly through iterated covariant derivatives:
//   (ff‴+f′f″)T + (3ff″+2f′²)∇_T T + 4ff′∇²_T T + f²∇³_T T + f²R(∇_T T,T)T.
// Margin of bi_f_margin samples at each end.
inline constexpr std::size_t bi_f_margin = 3 * covariant_margin;
std::vector<AmbientVector> bi_f_tension_direct(const SpaceForm& space,
                                               const CurveSamples& samples, const WeightFn& f);

// Frame coefficients of the bi-f-tension along E_1..E_4 for a curvature
// profile, evaluated from jets. The third row is stored with one factor of f
// divided out (f > 0, so the zero-sets agree); fold it back for comparisons
// against the direct evaluator.
struct FrameCoefficients {
    std::vector<double> s;
    std::array<std::vector<double>, 4> rows;
};
FrameCoefficients frenet_coefficients(const CurvatureProfile& profile, const WeightFn& f,
                                      double c, int n = 128);
FrameCoefficients frenet_coefficients(const CurvatureProfile& profile, const WeightFn& f,
                                      double c, const std::vector<double>& grid);

// Residual report for the four-equation bi-f-harmonic curve system with
// ambient curvature c; the fourth equation is k1·k2·k3 = 0 as printed.
ResidualReport system_residual(const CurvatureProfile& profile, const WeightFn& f, double c,
                               double tol = 1e-6, int n = 128);

// f·f″ = constant test: holds iff max-min ≤ tol·(1 + max|ff″|).
struct GeodesicCondition {
    bool holds = false;
    double value = 0.0;
};
GeodesicCondition geodesic_condition(const WeightFn& f, const std::vector<double>& grid,
                                     double tol = 1e-6);

// The five energy functionals specialized to curves, composite trapezoid on
// the interior grid.
struct Energies {
    double E = 0.0;    // ½∫|dγ|²
    double E2 = 0.0;   // ½∫|τ|²
    double Ef = 0.0;   // ½∫f|dγ|²
    double E2f = 0.0;  // ½∫f|τ|²
    double Ef2 = 0.0;  // ½∫|τ_f|²
};
Energies energies(const SpaceForm& space, const CurveSamples& samples, const WeightFn& f);

}  // namespace bifh
