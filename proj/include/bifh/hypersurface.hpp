#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bifh/expr.hpp"
#include "bifh/spaceform.hpp"

namespace bifh {

// ---------------------------------------------------------------------------
// Grid carriers. All per-node data lives on a rectangular (nu x nv) chart
// grid; `margin` records how many boundary rings carry no valid data (finite
// differencing eats two rings per derivative level).
// ---------------------------------------------------------------------------

struct GridShape {
    std::size_t nu = 0, nv = 0;
    int margin = 0;

    std::size_t size() const { return nu * nv; }
    std::size_t idx(std::size_t i, std::size_t j) const { return i * nv + j; }
    bool valid(std::size_t i, std::size_t j) const {
        const auto m = static_cast<std::size_t>(margin);
        return i >= m && i + m < nu && j >= m && j + m < nv;
    }
};

struct ScalarGrid : GridShape {
    std::vector<double> v;
    double& at(std::size_t i, std::size_t j) { return v[idx(i, j)]; }
    double at(std::size_t i, std::size_t j) const { return v[idx(i, j)]; }
};

// Tangent vectors in the chart coordinate basis (components along du, dv).
struct TangentGrid : GridShape {
    std::vector<std::array<double, 2>> v;
    std::array<double, 2>& at(std::size_t i, std::size_t j) { return v[idx(i, j)]; }
    const std::array<double, 2>& at(std::size_t i, std::size_t j) const { return v[idx(i, j)]; }
};

struct AmbientGrid : GridShape {
    std::vector<AmbientVector> v;
    AmbientVector& at(std::size_t i, std::size_t j) { return v[idx(i, j)]; }
    const AmbientVector& at(std::size_t i, std::size_t j) const { return v[idx(i, j)]; }
};

// ---------------------------------------------------------------------------
// Chart surfaces (m = 2) in 3-dimensional space forms.
// ---------------------------------------------------------------------------

// Parametrized surface patch: component expressions in the chart variables
// u, v mapping the rectangle [u0,u1]x[v0,v1] into ambient coordinates
// (3 components for E^3, 4 for the sphere / hyperboloid embeddings).
struct SurfaceChart {
    std::vector<ExprAst> components;
    double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;
    int nu = 65, nv = 65;
    double orientation = 1.0;  // +1: coordinate cross-product normal; -1: flipped

    static SurfaceChart from_expressions(const std::vector<std::string>& exprs,
                                         double u0, double u1, double v0, double v1,
                                         int nu, int nv);

    double hu() const { return (u1 - u0) / (nu - 1); }
    double hv() const { return (v1 - v0) / (nv - 1); }
    double u_at(std::size_t i) const { return u0 + hu() * static_cast<double>(i); }
    double v_at(std::size_t j) const { return v0 + hv() * static_cast<double>(j); }
};

// First/second fundamental data per node. Index conventions: metric and the
// scalar second fundamental form are symmetric 2x2 arrays stored as
// {g11, g12, g22}; the shape operator is a full 2x2 array {A11, A12, A21, A22}
// (first index row = output component); Christoffel symbols gamma[c][ab] with
// ab in {uu=0, uv=1, vv=2}.
struct HypersurfaceGeometry {
    SpaceForm space = SpaceForm::euclidean(3);
    GridShape shape;  // margin 2 after the parametrization derivatives
    double hu = 0.0, hv = 0.0;

    AmbientGrid position;
    std::array<AmbientGrid, 2> tangent;      // X_u, X_v
    ScalarGrid g11, g12, g22;                // first fundamental form
    ScalarGrid inv11, inv12, inv22, det;     // inverse metric and determinant
    std::array<std::array<ScalarGrid, 3>, 2> gamma;
    AmbientGrid normal;                      // unit normal xi (tangent to N)
    ScalarGrid b11, b12, b22;                // scalar second fundamental form
    ScalarGrid A11, A12, A21, A22;           // shape operator
    ScalarGrid H;                            // mean curvature (1/m) trace A
    ScalarGrid A_norm2;                      // |A|^2

    static constexpr int m = 2;
};

// Geometry from 4th-order finite differences of the parametrization.
HypersurfaceGeometry chart_geometry(const SurfaceChart& chart, const SpaceForm& space);

// Sample a scalar field over the chart grid from a callable of the ambient
// position and the chart parameters.
ScalarGrid sample_field(const HypersurfaceGeometry& geom,
                        const std::function<double(const AmbientVector&, double, double)>& w,
                        const SurfaceChart& chart);

// Sample an expression in the chart variables u, v.
ScalarGrid sample_expression(const HypersurfaceGeometry& geom, const ExprAst& ast,
                             const SurfaceChart& chart);

// g^{ab} d_b w in the chart basis; adds one derivative level of margin.
TangentGrid intrinsic_grad(const HypersurfaceGeometry& geom, const ScalarGrid& w);

// Divergence-form scalar Laplacian (trace convention: plane x^2+y^2 -> 4).
ScalarGrid laplace_beltrami(const HypersurfaceGeometry& geom, const ScalarGrid& w);

// Rough Laplacian of grad f split along the surface / normal directions.
// The tangential part is the intrinsic vector Laplacian of grad f plus
// A^2(grad f); the normal part is the divergence-type contraction of the
// second fundamental form against the Hessian of f.
struct GradfLaplacian {
    TangentGrid tangential;
    ScalarGrid normal;
};
GradfLaplacian rough_laplacian_gradf(const HypersurfaceGeometry& geom, const ScalarGrid& f);

// Ricci contractions of the space-form ambient (Ric^N = m c h):
// (Ric(xi))^T = 0, Ric(xi,xi) = m c, (Ric(grad f))^T = m c grad f,
// Ric(grad f, xi) = 0.
struct RicciTerms {
    TangentGrid xi_tangential;
    ScalarGrid xi_xi;
    TangentGrid gradf_tangential;
    ScalarGrid gradf_xi;
};
RicciTerms ricci_terms(const SpaceForm& space, const HypersurfaceGeometry& geom,
                       const ScalarGrid& f);

// Tangential component of the bi-f-tension of the immersion (chart basis).
TangentGrid residual_tangential(const HypersurfaceGeometry& geom, const ScalarGrid& f,
                                const SpaceForm& space);

// Normal component (coefficient along the unit normal).
ScalarGrid residual_normal(const HypersurfaceGeometry& geom, const ScalarGrid& f,
                           const SpaceForm& space);

// Specializations of the residual pair under extra hypotheses.
enum class SurfaceMode { General, Cmc, RicciFlat, Einstein, ConstantC };

struct SurfaceResidual {
    TangentGrid tangential;
    ScalarGrid normal;
    double sup_tangential = 0.0;  // metric norm of the tangential part
    double sup_normal = 0.0;
    SurfaceMode mode = SurfaceMode::General;
};
SurfaceResidual corollary_residual(const HypersurfaceGeometry& geom, const ScalarGrid& f,
                                   SurfaceMode mode, double einstein_r = 0.0);

// Independent oracle: the bi-f-tension from its definition via nested finite
// differences of the pulled-back connection, returned as a full ambient field.
// `richardson` replaces the 2nd-order outer derivative of the nested scheme
// with its Richardson extrapolation over strides 1 and 2 (the 4th-order
// stencil), for convergence studies and acceptance runs.
AmbientGrid direct_bi_f_tension_oracle(const HypersurfaceGeometry& geom, const ScalarGrid& f,
                                       const SpaceForm& space, bool richardson = false);

// Split an ambient field into chart-basis tangential components and the
// normal coefficient.
struct SplitField {
    TangentGrid tangential;
    ScalarGrid normal;
};
SplitField split_ambient_field(const HypersurfaceGeometry& geom, const AmbientGrid& field);

// Sup discrepancies of the intermediate identities, each side computed
// independently (left via ambient finite differences, right via the surface
// geometry).
struct IdentityReport {
    double gradf_tangential = 0.0;  // rough Laplacian of grad f, tangential part
    double xi_normal = 0.0;         // normal part of the rough Laplacian of xi vs |A|^2
    double xi_tangential = 0.0;     // tangential part vs m grad H + Ricci
    double codazzi = 0.0;           // Codazzi contraction vs Ric(xi, .)
};
IdentityReport identity_suite(const HypersurfaceGeometry& geom, const ScalarGrid& f,
                              bool richardson = false);

// Sup norms over the valid region at the given margin.
double sup_norm(const ScalarGrid& w, int margin);
double sup_norm(const HypersurfaceGeometry& geom, const TangentGrid& t, int margin);

}  // namespace bifh
