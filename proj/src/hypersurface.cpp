#include "bifh/hypersurface.hpp"

#include <algorithm>
#include <cmath>

#include "bifh/errors.hpp"

namespace bifh {

namespace {

// Stencil coefficients (central): 4th-order first derivative (/12h) and
// 4th-order second derivative (/12h^2), offsets -2..2.
constexpr double kFirst4[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
constexpr double kSecond4[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};

template <class G, class T>
G stencil5(const G& in, const double* coef, double scale, int axis, const T& zero) {
    G out;
    out.nu = in.nu;
    out.nv = in.nv;
    out.margin = in.margin + 2;
    out.v.assign(in.size(), zero);
    for (std::size_t i = 0; i < in.nu; ++i)
        for (std::size_t j = 0; j < in.nv; ++j) {
            if (!out.valid(i, j)) continue;
            T acc = zero;
            for (int k = -2; k <= 2; ++k) {
                const std::size_t id = axis == 0 ? in.idx(i + static_cast<std::size_t>(k + 2) - 2, j)
                                                 : in.idx(i, j + static_cast<std::size_t>(k + 2) - 2);
                acc += in.v[id] * coef[k + 2];
            }
            out.v[out.idx(i, j)] = acc * scale;
        }
    return out;
}

// 2nd-order central first derivative (margin +1); used as the outer layer of
// the nested oracle derivatives.
template <class G, class T>
G central2(const G& in, double h, int axis, const T& zero) {
    G out;
    out.nu = in.nu;
    out.nv = in.nv;
    out.margin = in.margin + 1;
    out.v.assign(in.size(), zero);
    for (std::size_t i = 0; i < in.nu; ++i)
        for (std::size_t j = 0; j < in.nv; ++j) {
            if (!out.valid(i, j)) continue;
            const std::size_t ip = axis == 0 ? in.idx(i + 1, j) : in.idx(i, j + 1);
            const std::size_t im = axis == 0 ? in.idx(i - 1, j) : in.idx(i, j - 1);
            out.v[out.idx(i, j)] = (in.v[ip] - in.v[im]) * (0.5 / h);
        }
    return out;
}

// 4th-order mixed second derivative d^2/dudv via the tensor product of the
// 1D first-derivative stencils (margin +2).
template <class G, class T>
G mixed4(const G& in, double hu, double hv, const T& zero) {
    G out;
    out.nu = in.nu;
    out.nv = in.nv;
    out.margin = in.margin + 2;
    out.v.assign(in.size(), zero);
    const double scale = 1.0 / (144.0 * hu * hv);
    for (std::size_t i = 0; i < in.nu; ++i)
        for (std::size_t j = 0; j < in.nv; ++j) {
            if (!out.valid(i, j)) continue;
            T acc = zero;
            for (int p = -2; p <= 2; ++p)
                for (int q = -2; q <= 2; ++q) {
                    if (kFirst4[p + 2] == 0.0 || kFirst4[q + 2] == 0.0) continue;
                    acc += in.v[in.idx(i + static_cast<std::size_t>(p + 2) - 2,
                                       j + static_cast<std::size_t>(q + 2) - 2)] *
                           (kFirst4[p + 2] * kFirst4[q + 2]);
                }
            out.v[out.idx(i, j)] = acc * scale;
        }
    return out;
}

ScalarGrid make_scalar(const GridShape& shape, int margin) {
    ScalarGrid out;
    out.nu = shape.nu;
    out.nv = shape.nv;
    out.margin = margin;
    out.v.assign(shape.size(), 0.0);
    return out;
}

TangentGrid make_tangent(const GridShape& shape, int margin) {
    TangentGrid out;
    out.nu = shape.nu;
    out.nv = shape.nv;
    out.margin = margin;
    out.v.assign(shape.size(), {0.0, 0.0});
    return out;
}

AmbientGrid make_ambient(const GridShape& shape, int margin, int dim) {
    AmbientGrid out;
    out.nu = shape.nu;
    out.nv = shape.nv;
    out.margin = margin;
    out.v.assign(shape.size(), AmbientVector::Zero(dim));
    return out;
}

double det3(const AmbientVector& a, const AmbientVector& b, const AmbientVector& c, int skip) {
    double col[3][3];
    int n = 0;
    for (int k = 0; k < 4; ++k) {
        if (k == skip) continue;
        col[0][n] = a[k];
        col[1][n] = b[k];
        col[2][n] = c[k];
        ++n;
    }
    return col[0][0] * (col[1][1] * col[2][2] - col[1][2] * col[2][1]) -
           col[0][1] * (col[1][0] * col[2][2] - col[1][2] * col[2][0]) +
           col[0][2] * (col[1][0] * col[2][1] - col[1][1] * col[2][0]);
}

// Index of the symmetric pair (a,b) into {uu, uv, vv}.
int sym(int a, int b) { return a + b; }

void check_positive(const ScalarGrid& f, int margin) {
    bool any = false;
    for (std::size_t i = 0; i < f.nu; ++i)
        for (std::size_t j = 0; j < f.nv; ++j) {
            const auto m = static_cast<std::size_t>(margin);
            if (i < m || i + m >= f.nu || j < m || j + m >= f.nv) continue;
            any = true;
            if (!(f.at(i, j) > 0.0))
                throw DomainError("weight function must be positive on the chart grid");
        }
    if (!any) throw DegenerateInput("chart grid too small for the requested margin");
}

// Covariant derivative of a tangent field: W[a][c] = d_a V^c + Gamma^c_{ab} V^b.
std::array<std::array<ScalarGrid, 2>, 2> covariant_tangent(const HypersurfaceGeometry& geom,
                                                           const TangentGrid& V) {
    ScalarGrid V0 = make_scalar(V, V.margin), V1 = make_scalar(V, V.margin);
    for (std::size_t n = 0; n < V.size(); ++n) {
        V0.v[n] = V.v[n][0];
        V1.v[n] = V.v[n][1];
    }
    const double h[2] = {geom.hu, geom.hv};
    std::array<std::array<ScalarGrid, 2>, 2> W;
    for (int a = 0; a < 2; ++a) {
        const ScalarGrid d0 = stencil5(V0, kFirst4, 1.0 / (12.0 * h[a]), a, 0.0);
        const ScalarGrid d1 = stencil5(V1, kFirst4, 1.0 / (12.0 * h[a]), a, 0.0);
        const int margin = std::max(d0.margin, geom.shape.margin);
        for (int c = 0; c < 2; ++c) W[a][c] = make_scalar(V, margin);
        for (std::size_t i = 0; i < V.nu; ++i)
            for (std::size_t j = 0; j < V.nv; ++j) {
                if (!W[a][0].valid(i, j)) continue;
                const std::size_t n = V.idx(i, j);
                for (int c = 0; c < 2; ++c)
                    W[a][c].v[n] = (c == 0 ? d0.v[n] : d1.v[n]) +
                                   geom.gamma[c][sym(a, 0)].v[n] * V.v[n][0] +
                                   geom.gamma[c][sym(a, 1)].v[n] * V.v[n][1];
            }
    }
    return W;
}

// Rough (minus-trace) vector Laplacian of a tangent field on the surface:
// -g^{ab} ( d_a W_b^c + Gamma^c_{ad} W_b^d - Gamma^e_{ab} W_e^c ).
TangentGrid vector_laplacian(const HypersurfaceGeometry& geom, const TangentGrid& V) {
    const auto W = covariant_tangent(geom, V);
    const double h[2] = {geom.hu, geom.hv};
    std::array<std::array<std::array<ScalarGrid, 2>, 2>, 2> dW;  // dW[a][b][c]
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                dW[a][b][c] = stencil5(W[b][c], kFirst4, 1.0 / (12.0 * h[a]), a, 0.0);

    TangentGrid out = make_tangent(V, dW[0][0][0].margin);
    for (std::size_t i = 0; i < V.nu; ++i)
        for (std::size_t j = 0; j < V.nv; ++j) {
            if (!out.valid(i, j)) continue;
            const std::size_t n = V.idx(i, j);
            const double inv[2][2] = {{geom.inv11.v[n], geom.inv12.v[n]},
                                      {geom.inv12.v[n], geom.inv22.v[n]}};
            for (int c = 0; c < 2; ++c) {
                double acc = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        double term = dW[a][b][c].v[n];
                        for (int d = 0; d < 2; ++d)
                            term += geom.gamma[c][sym(a, d)].v[n] * W[b][d].v[n] -
                                    geom.gamma[d][sym(a, b)].v[n] * W[d][c].v[n];
                        acc += inv[a][b] * term;
                    }
                out.v[n][c] = -acc;
            }
        }
    return out;
}

// trace(nabla^phi)^2 of an ambient field along the immersion, by nested
// finite differences with space-form projection corrections. The outer layer
// is the 2nd-order central stencil, or its stride-1/stride-2 Richardson
// extrapolation (the 4th-order stencil) when requested.
AmbientGrid ambient_trace2(const HypersurfaceGeometry& geom, const AmbientGrid& V,
                           bool richardson) {
    const double c = geom.space.curvature();
    const int dim = geom.space.ambient_dim();
    const AmbientVector zero = AmbientVector::Zero(dim);
    const double h[2] = {geom.hu, geom.hv};

    std::array<AmbientGrid, 2> W;  // W[b] = nabla^phi_b V
    for (int b = 0; b < 2; ++b) {
        W[b] = stencil5(V, kFirst4, 1.0 / (12.0 * h[b]), b, zero);
        W[b].margin = std::max(W[b].margin, geom.shape.margin);
        if (c != 0.0)
            for (std::size_t n = 0; n < V.size(); ++n)
                W[b].v[n] += c * geom.space.metric(geom.tangent[b].v[n], V.v[n]) *
                             geom.position.v[n];
    }

    std::array<std::array<AmbientGrid, 2>, 2> WW;  // WW[a][b] = nabla^phi_a W[b]
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            WW[a][b] = richardson ? stencil5(W[b], kFirst4, 1.0 / (12.0 * h[a]), a, zero)
                                  : central2(W[b], h[a], a, zero);
            if (c != 0.0)
                for (std::size_t n = 0; n < V.size(); ++n)
                    WW[a][b].v[n] += c * geom.space.metric(geom.tangent[a].v[n], W[b].v[n]) *
                                     geom.position.v[n];
        }

    AmbientGrid out = make_ambient(V, WW[0][0].margin, dim);
    for (std::size_t i = 0; i < V.nu; ++i)
        for (std::size_t j = 0; j < V.nv; ++j) {
            if (!out.valid(i, j)) continue;
            const std::size_t n = V.idx(i, j);
            const double inv[2][2] = {{geom.inv11.v[n], geom.inv12.v[n]},
                                      {geom.inv12.v[n], geom.inv22.v[n]}};
            AmbientVector acc = zero;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    AmbientVector term = WW[a][b].v[n];
                    for (int d = 0; d < 2; ++d)
                        term -= geom.gamma[d][sym(a, b)].v[n] * W[d].v[n];
                    acc += inv[a][b] * term;
                }
            out.v[n] = acc;
        }
    return out;
}

// |grad f|^2 as a scalar grid.
ScalarGrid grad_square(const HypersurfaceGeometry& geom, const TangentGrid& grad) {
    ScalarGrid out = make_scalar(grad, std::max(grad.margin, geom.shape.margin));
    for (std::size_t n = 0; n < grad.size(); ++n) {
        const auto& t = grad.v[n];
        out.v[n] = geom.g11.v[n] * t[0] * t[0] + 2.0 * geom.g12.v[n] * t[0] * t[1] +
                   geom.g22.v[n] * t[1] * t[1];
    }
    return out;
}

}  // namespace

SurfaceChart SurfaceChart::from_expressions(const std::vector<std::string>& exprs, double u0,
                                            double u1, double v0, double v1, int nu, int nv) {
    SurfaceChart chart;
    for (const auto& e : exprs) chart.components.push_back(parse(e, chart_variables()));
    chart.u0 = u0;
    chart.u1 = u1;
    chart.v0 = v0;
    chart.v1 = v1;
    chart.nu = nu;
    chart.nv = nv;
    return chart;
}

HypersurfaceGeometry chart_geometry(const SurfaceChart& chart, const SpaceForm& space) {
    if (space.dim() != 3)
        throw DimensionMismatch("chart surfaces require a 3-dimensional ambient space");
    const int dim = space.ambient_dim();
    if (static_cast<int>(chart.components.size()) != dim)
        throw DimensionMismatch("chart needs " + std::to_string(dim) +
                                " component expressions for this ambient space");
    if (chart.nu < 9 || chart.nv < 9) throw ConfigError("chart grid must be at least 9x9");
    if (!(chart.u1 > chart.u0) || !(chart.v1 > chart.v0))
        throw ConfigError("chart domain rectangle is empty");
    if (chart.orientation != 1.0 && chart.orientation != -1.0)
        throw ConfigError("chart orientation must be +1 or -1");

    HypersurfaceGeometry geom;
    geom.space = space;
    geom.hu = chart.hu();
    geom.hv = chart.hv();
    GridShape base;
    base.nu = static_cast<std::size_t>(chart.nu);
    base.nv = static_cast<std::size_t>(chart.nv);
    base.margin = 0;

    const AmbientVector zero = AmbientVector::Zero(dim);
    geom.position = make_ambient(base, 0, dim);
    for (std::size_t i = 0; i < base.nu; ++i)
        for (std::size_t j = 0; j < base.nv; ++j) {
            const Bindings bind{{"u", Jet3::constant(chart.u_at(i))},
                                {"v", Jet3::constant(chart.v_at(j))}};
            AmbientVector p(dim);
            for (int k = 0; k < dim; ++k) p[k] = eval_jet(chart.components[k], bind).v0;
            if (space.model() != SpaceForm::Model::Euclidean && !space.on_manifold(p, 1e-6))
                throw OffManifold("chart image leaves the model space at node (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
            geom.position.v[geom.position.idx(i, j)] = p;
        }

    geom.tangent[0] = stencil5(geom.position, kFirst4, 1.0 / (12.0 * geom.hu), 0, zero);
    geom.tangent[1] = stencil5(geom.position, kFirst4, 1.0 / (12.0 * geom.hv), 1, zero);
    const AmbientGrid Xuu =
        stencil5(geom.position, kSecond4, 1.0 / (12.0 * geom.hu * geom.hu), 0, zero);
    const AmbientGrid Xvv =
        stencil5(geom.position, kSecond4, 1.0 / (12.0 * geom.hv * geom.hv), 1, zero);
    const AmbientGrid Xuv = mixed4(geom.position, geom.hu, geom.hv, zero);
    const AmbientGrid* second[3] = {&Xuu, &Xuv, &Xvv};

    geom.shape = base;
    geom.shape.margin = 2;
    for (ScalarGrid* s : {&geom.g11, &geom.g12, &geom.g22, &geom.inv11, &geom.inv12,
                          &geom.inv22, &geom.det, &geom.b11, &geom.b12, &geom.b22, &geom.A11,
                          &geom.A12, &geom.A21, &geom.A22, &geom.H, &geom.A_norm2})
        *s = make_scalar(base, 2);
    for (int c = 0; c < 2; ++c)
        for (int ab = 0; ab < 3; ++ab) geom.gamma[c][ab] = make_scalar(base, 2);
    geom.normal = make_ambient(base, 2, dim);

    for (std::size_t i = 0; i < base.nu; ++i)
        for (std::size_t j = 0; j < base.nv; ++j) {
            if (!geom.shape.valid(i, j)) continue;
            const std::size_t n = base.idx(i, j);
            const AmbientVector& p = geom.position.v[n];
            const AmbientVector& Xu = geom.tangent[0].v[n];
            const AmbientVector& Xv = geom.tangent[1].v[n];

            const double g11 = space.metric(Xu, Xu);
            const double g12 = space.metric(Xu, Xv);
            const double g22 = space.metric(Xv, Xv);
            const double det = g11 * g22 - g12 * g12;
            if (!(det > 1e-10))
                throw ImmersionFailure("first fundamental form degenerate at node (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
            geom.g11.v[n] = g11;
            geom.g12.v[n] = g12;
            geom.g22.v[n] = g22;
            geom.det.v[n] = det;
            const double inv11 = g22 / det, inv12 = -g12 / det, inv22 = g11 / det;
            geom.inv11.v[n] = inv11;
            geom.inv12.v[n] = inv12;
            geom.inv22.v[n] = inv22;

            AmbientVector nrm(dim);
            if (dim == 3) {
                nrm[0] = Xu[1] * Xv[2] - Xu[2] * Xv[1];
                nrm[1] = Xu[2] * Xv[0] - Xu[0] * Xv[2];
                nrm[2] = Xu[0] * Xv[1] - Xu[1] * Xv[0];
            } else {
                for (int k = 0; k < 4; ++k)
                    nrm[k] = (k % 2 == 0 ? 1.0 : -1.0) * det3(p, Xu, Xv, k);
                if (space.model() == SpaceForm::Model::Hyperbolic) nrm[0] = -nrm[0];
            }
            nrm *= chart.orientation;
            const double nn = space.metric(nrm, nrm);
            if (!(nn > 1e-10))
                throw NormalDegeneracy("normal direction degenerate at node (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
            const AmbientVector xi = nrm / std::sqrt(nn);
            geom.normal.v[n] = xi;

            const double b[3] = {space.metric(second[0]->v[n], xi),
                                 space.metric(second[1]->v[n], xi),
                                 space.metric(second[2]->v[n], xi)};
            geom.b11.v[n] = b[0];
            geom.b12.v[n] = b[1];
            geom.b22.v[n] = b[2];
            for (int ab = 0; ab < 3; ++ab) {
                const double tu = space.metric(second[ab]->v[n], Xu);
                const double tv = space.metric(second[ab]->v[n], Xv);
                geom.gamma[0][ab].v[n] = inv11 * tu + inv12 * tv;
                geom.gamma[1][ab].v[n] = inv12 * tu + inv22 * tv;
            }

            const double A11 = inv11 * b[0] + inv12 * b[1];
            const double A12 = inv11 * b[1] + inv12 * b[2];
            const double A21 = inv12 * b[0] + inv22 * b[1];
            const double A22 = inv12 * b[1] + inv22 * b[2];
            geom.A11.v[n] = A11;
            geom.A12.v[n] = A12;
            geom.A21.v[n] = A21;
            geom.A22.v[n] = A22;
            geom.H.v[n] = 0.5 * (A11 + A22);
            geom.A_norm2.v[n] = A11 * A11 + 2.0 * A12 * A21 + A22 * A22;
        }
    return geom;
}

ScalarGrid sample_field(const HypersurfaceGeometry& geom,
                        const std::function<double(const AmbientVector&, double, double)>& w,
                        const SurfaceChart& chart) {
    ScalarGrid out = make_scalar(geom.position, 0);
    for (std::size_t i = 0; i < out.nu; ++i)
        for (std::size_t j = 0; j < out.nv; ++j)
            out.at(i, j) = w(geom.position.at(i, j), chart.u_at(i), chart.v_at(j));
    return out;
}

ScalarGrid sample_expression(const HypersurfaceGeometry& geom, const ExprAst& ast,
                             const SurfaceChart& chart) {
    return sample_field(
        geom,
        [&ast](const AmbientVector&, double u, double v) {
            const Bindings bind{{"u", Jet3::constant(u)}, {"v", Jet3::constant(v)}};
            return eval_jet(ast, bind).v0;
        },
        chart);
}

TangentGrid intrinsic_grad(const HypersurfaceGeometry& geom, const ScalarGrid& w) {
    const ScalarGrid wu = stencil5(w, kFirst4, 1.0 / (12.0 * geom.hu), 0, 0.0);
    const ScalarGrid wv = stencil5(w, kFirst4, 1.0 / (12.0 * geom.hv), 1, 0.0);
    TangentGrid out = make_tangent(w, std::max(wu.margin, geom.shape.margin));
    for (std::size_t n = 0; n < w.size(); ++n) {
        out.v[n][0] = geom.inv11.v[n] * wu.v[n] + geom.inv12.v[n] * wv.v[n];
        out.v[n][1] = geom.inv12.v[n] * wu.v[n] + geom.inv22.v[n] * wv.v[n];
    }
    return out;
}

ScalarGrid laplace_beltrami(const HypersurfaceGeometry& geom, const ScalarGrid& w) {
    const TangentGrid grad = intrinsic_grad(geom, w);
    ScalarGrid F0 = make_scalar(grad, grad.margin), F1 = make_scalar(grad, grad.margin);
    for (std::size_t n = 0; n < grad.size(); ++n) {
        const double s = std::sqrt(std::max(geom.det.v[n], 0.0));
        F0.v[n] = s * grad.v[n][0];
        F1.v[n] = s * grad.v[n][1];
    }
    const ScalarGrid d0 = stencil5(F0, kFirst4, 1.0 / (12.0 * geom.hu), 0, 0.0);
    const ScalarGrid d1 = stencil5(F1, kFirst4, 1.0 / (12.0 * geom.hv), 1, 0.0);
    ScalarGrid out = make_scalar(w, d0.margin);
    for (std::size_t i = 0; i < w.nu; ++i)
        for (std::size_t j = 0; j < w.nv; ++j) {
            if (!out.valid(i, j)) continue;
            const std::size_t n = w.idx(i, j);
            out.v[n] = (d0.v[n] + d1.v[n]) / std::sqrt(geom.det.v[n]);
        }
    return out;
}

GradfLaplacian rough_laplacian_gradf(const HypersurfaceGeometry& geom, const ScalarGrid& f) {
    const TangentGrid grad = intrinsic_grad(geom, f);
    const TangentGrid lap = vector_laplacian(geom, grad);
    const auto W = covariant_tangent(geom, grad);

    GradfLaplacian out;
    out.tangential = make_tangent(grad, lap.margin);
    for (std::size_t n = 0; n < grad.size(); ++n) {
        const double Au = geom.A11.v[n] * grad.v[n][0] + geom.A12.v[n] * grad.v[n][1];
        const double Av = geom.A21.v[n] * grad.v[n][0] + geom.A22.v[n] * grad.v[n][1];
        out.tangential.v[n][0] = lap.v[n][0] + geom.A11.v[n] * Au + geom.A12.v[n] * Av;
        out.tangential.v[n][1] = lap.v[n][1] + geom.A21.v[n] * Au + geom.A22.v[n] * Av;
    }

    // omega_a = b_{ab} grad^b; normal part = -( g^{ab} b_{cb} W_a^c
    //                                           + g^{ab} (d_a omega_b - Gamma^c_{ab} omega_c) )
    ScalarGrid om0 = make_scalar(grad, grad.margin), om1 = make_scalar(grad, grad.margin);
    for (std::size_t n = 0; n < grad.size(); ++n) {
        om0.v[n] = geom.b11.v[n] * grad.v[n][0] + geom.b12.v[n] * grad.v[n][1];
        om1.v[n] = geom.b12.v[n] * grad.v[n][0] + geom.b22.v[n] * grad.v[n][1];
    }
    const double h[2] = {geom.hu, geom.hv};
    std::array<std::array<ScalarGrid, 2>, 2> dom;  // dom[a][b] = d_a omega_b
    for (int a = 0; a < 2; ++a) {
        dom[a][0] = stencil5(om0, kFirst4, 1.0 / (12.0 * h[a]), a, 0.0);
        dom[a][1] = stencil5(om1, kFirst4, 1.0 / (12.0 * h[a]), a, 0.0);
    }
    out.normal = make_scalar(grad, std::max(dom[0][0].margin, W[0][0].margin));
    const ScalarGrid* om[2] = {&om0, &om1};
    const ScalarGrid* bb[3] = {&geom.b11, &geom.b12, &geom.b22};
    for (std::size_t i = 0; i < grad.nu; ++i)
        for (std::size_t j = 0; j < grad.nv; ++j) {
            if (!out.normal.valid(i, j)) continue;
            const std::size_t n = grad.idx(i, j);
            const double inv[2][2] = {{geom.inv11.v[n], geom.inv12.v[n]},
                                      {geom.inv12.v[n], geom.inv22.v[n]}};
            double acc = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    double term = dom[a][b].v[n];
                    for (int c = 0; c < 2; ++c) {
                        term -= geom.gamma[c][sym(a, b)].v[n] * om[c]->v[n];
                        term += bb[sym(c, b)]->v[n] * W[a][c].v[n];
                    }
                    acc += inv[a][b] * term;
                }
            out.normal.v[n] = -acc;
        }
    return out;
}

RicciTerms ricci_terms(const SpaceForm& space, const HypersurfaceGeometry& geom,
                       const ScalarGrid& f) {
    const double mc = HypersurfaceGeometry::m * space.curvature();
    RicciTerms out;
    out.xi_tangential = make_tangent(geom.shape, geom.shape.margin);
    out.xi_xi = make_scalar(geom.shape, geom.shape.margin);
    out.gradf_xi = make_scalar(geom.shape, geom.shape.margin);
    for (double& v : out.xi_xi.v) v = mc;
    out.gradf_tangential = intrinsic_grad(geom, f);
    for (auto& t : out.gradf_tangential.v) {
        t[0] *= mc;
        t[1] *= mc;
    }
    return out;
}

TangentGrid residual_tangential(const HypersurfaceGeometry& geom, const ScalarGrid& f,
                                const SpaceForm& space) {
    constexpr double m = HypersurfaceGeometry::m;
    const double c = space.curvature();
    check_positive(f, geom.shape.margin);

    const TangentGrid grad = intrinsic_grad(geom, f);
    const TangentGrid gradH = intrinsic_grad(geom, geom.H);
    const TangentGrid lap = rough_laplacian_gradf(geom, f).tangential;
    const ScalarGrid gsq = grad_square(geom, grad);
    const TangentGrid ggsq = intrinsic_grad(geom, gsq);

    TangentGrid out = make_tangent(geom.shape,
                                   std::max({lap.margin, ggsq.margin, gradH.margin}));
    for (std::size_t i = 0; i < out.nu; ++i)
        for (std::size_t j = 0; j < out.nv; ++j) {
            if (!out.valid(i, j)) continue;
            const std::size_t n = out.idx(i, j);
            const double fv = f.v[n], Hv = geom.H.v[n];
            const double Agf[2] = {geom.A11.v[n] * grad.v[n][0] + geom.A12.v[n] * grad.v[n][1],
                                   geom.A21.v[n] * grad.v[n][0] + geom.A22.v[n] * grad.v[n][1]};
            const double AgH[2] = {
                geom.A11.v[n] * gradH.v[n][0] + geom.A12.v[n] * gradH.v[n][1],
                geom.A21.v[n] * gradH.v[n][0] + geom.A22.v[n] * gradH.v[n][1]};
            // The curvature trace runs over the m surface directions only, so
            // its grad-f part carries (m-1)c, not the full ambient Ricci mc.
            for (int k = 0; k < 2; ++k)
                out.v[n][k] = 3.0 * m * fv * Hv * Agf[k] + 2.0 * m * fv * fv * AgH[k] +
                              m * m * fv * fv * Hv * gradH.v[n][k] + fv * lap.v[n][k] -
                              0.5 * ggsq.v[n][k] - fv * (m - 1.0) * c * grad.v[n][k];
        }
    return out;
}

ScalarGrid residual_normal(const HypersurfaceGeometry& geom, const ScalarGrid& f,
                           const SpaceForm& space) {
    constexpr double m = HypersurfaceGeometry::m;
    const double c = space.curvature();
    check_positive(f, geom.shape.margin);

    const TangentGrid grad = intrinsic_grad(geom, f);
    const TangentGrid gradH = intrinsic_grad(geom, geom.H);
    const ScalarGrid lapf = laplace_beltrami(geom, f);
    const ScalarGrid lapH = laplace_beltrami(geom, geom.H);
    const ScalarGrid rough = rough_laplacian_gradf(geom, f).normal;
    const ScalarGrid gsq = grad_square(geom, grad);

    ScalarGrid out = make_scalar(geom.shape, std::max({lapH.margin, rough.margin, lapf.margin}));
    for (std::size_t i = 0; i < out.nu; ++i)
        for (std::size_t j = 0; j < out.nv; ++j) {
            if (!out.valid(i, j)) continue;
            const std::size_t n = out.idx(i, j);
            const double fv = f.v[n], Hv = geom.H.v[n];
            const double inner = geom.g11.v[n] * grad.v[n][0] * gradH.v[n][0] +
                                 geom.g12.v[n] * (grad.v[n][0] * gradH.v[n][1] +
                                                  grad.v[n][1] * gradH.v[n][0]) +
                                 geom.g22.v[n] * grad.v[n][1] * gradH.v[n][1];
            const double bgg = geom.b11.v[n] * grad.v[n][0] * grad.v[n][0] +
                               2.0 * geom.b12.v[n] * grad.v[n][0] * grad.v[n][1] +
                               geom.b22.v[n] * grad.v[n][1] * grad.v[n][1];
            out.v[n] = -m * fv * Hv * lapf.v[n] - 3.0 * m * fv * inner -
                       m * fv * fv * lapH.v[n] + m * fv * fv * Hv * geom.A_norm2.v[n] +
                       fv * rough.v[n] - m * Hv * gsq.v[n] - bgg -
                       m * fv * fv * Hv * (m * c);
        }
    return out;
}

SurfaceResidual corollary_residual(const HypersurfaceGeometry& geom, const ScalarGrid& f,
                                   SurfaceMode mode, double einstein_r) {
    constexpr double m = HypersurfaceGeometry::m;
    const SpaceForm& space = geom.space;
    const double c = space.curvature();
    check_positive(f, geom.shape.margin);

    SurfaceResidual out;
    out.mode = mode;

    if (mode == SurfaceMode::General) {
        out.tangential = residual_tangential(geom, f, space);
        out.normal = residual_normal(geom, f, space);
    } else {
        if (mode == SurfaceMode::Cmc || mode == SurfaceMode::RicciFlat) {
            double lo = 0.0, hi = 0.0;
            bool first = true;
            for (std::size_t i = 0; i < geom.H.nu; ++i)
                for (std::size_t j = 0; j < geom.H.nv; ++j) {
                    if (!geom.shape.valid(i, j)) continue;
                    const double v = geom.H.at(i, j);
                    lo = first ? v : std::min(lo, v);
                    hi = first ? v : std::max(hi, v);
                    first = false;
                }
            if (hi - lo > 1e-6 * (1.0 + std::max(std::abs(lo), std::abs(hi))))
                throw ModePreconditionFailed("mean curvature is not constant on the grid");
        }
        if (mode == SurfaceMode::RicciFlat && c != 0.0)
            throw ModePreconditionFailed("ambient space is not Ricci flat");

        // Ricci scale r/(m+1) entering both sides of the specialized systems.
        const double ric = mode == SurfaceMode::Einstein ? einstein_r / (m + 1.0)
                           : mode == SurfaceMode::ConstantC ? m * c
                           : mode == SurfaceMode::Cmc ? m * c
                                                      : 0.0;

        const TangentGrid grad = intrinsic_grad(geom, f);
        const TangentGrid lap = rough_laplacian_gradf(geom, f).tangential;
        const ScalarGrid rough = rough_laplacian_gradf(geom, f).normal;
        const ScalarGrid gsq = grad_square(geom, grad);
        const TangentGrid ggsq = intrinsic_grad(geom, gsq);
        const ScalarGrid lapf = laplace_beltrami(geom, f);

        out.tangential = make_tangent(geom.shape, std::max(lap.margin, ggsq.margin));
        out.normal = make_scalar(geom.shape, std::max(rough.margin, lapf.margin));
        // The Ricci-flat corollary states the normal equation with all terms
        // moved to the other side, so its residual flips sign there.
        const double flip = mode == SurfaceMode::RicciFlat ? -1.0 : 1.0;
        for (std::size_t i = 0; i < geom.H.nu; ++i)
            for (std::size_t j = 0; j < geom.H.nv; ++j) {
                const std::size_t n = geom.H.idx(i, j);
                const double fv = f.v[n], Hv = geom.H.v[n];
                if (out.tangential.valid(i, j)) {
                    const double Agf[2] = {
                        geom.A11.v[n] * grad.v[n][0] + geom.A12.v[n] * grad.v[n][1],
                        geom.A21.v[n] * grad.v[n][0] + geom.A22.v[n] * grad.v[n][1]};
                    for (int k = 0; k < 2; ++k)
                        out.tangential.v[n][k] = 3.0 * m * fv * Hv * Agf[k] +
                                                 fv * lap.v[n][k] - 0.5 * ggsq.v[n][k] -
                                                 fv * ric * grad.v[n][k];
                }
                if (out.normal.valid(i, j)) {
                    const double bgg = geom.b11.v[n] * grad.v[n][0] * grad.v[n][0] +
                                       2.0 * geom.b12.v[n] * grad.v[n][0] * grad.v[n][1] +
                                       geom.b22.v[n] * grad.v[n][1] * grad.v[n][1];
                    out.normal.v[n] =
                        flip * (-m * fv * Hv * lapf.v[n] + m * fv * fv * Hv * geom.A_norm2.v[n] +
                                fv * rough.v[n] - m * Hv * gsq.v[n] - bgg -
                                m * fv * fv * Hv * ric);
                }
            }
    }

    out.sup_tangential = sup_norm(geom, out.tangential, out.tangential.margin);
    out.sup_normal = sup_norm(out.normal, out.normal.margin);
    return out;
}

AmbientGrid direct_bi_f_tension_oracle(const HypersurfaceGeometry& geom, const ScalarGrid& f,
                                       const SpaceForm& space, bool richardson) {
    constexpr double m = HypersurfaceGeometry::m;
    const double c = space.curvature();
    const int dim = space.ambient_dim();
    const AmbientVector zero = AmbientVector::Zero(dim);
    check_positive(f, geom.shape.margin);

    const TangentGrid grad = intrinsic_grad(geom, f);
    AmbientGrid dphi_grad = make_ambient(geom.shape, grad.margin, dim);
    AmbientGrid tau_f = make_ambient(geom.shape, grad.margin, dim);
    for (std::size_t n = 0; n < grad.size(); ++n) {
        dphi_grad.v[n] = grad.v[n][0] * geom.tangent[0].v[n] + grad.v[n][1] * geom.tangent[1].v[n];
        tau_f.v[n] = f.v[n] * (m * geom.H.v[n]) * geom.normal.v[n] + dphi_grad.v[n];
    }

    const double h[2] = {geom.hu, geom.hv};
    std::array<AmbientGrid, 2> W;
    for (int b = 0; b < 2; ++b) {
        W[b] = stencil5(tau_f, kFirst4, 1.0 / (12.0 * h[b]), b, zero);
        if (c != 0.0)
            for (std::size_t n = 0; n < tau_f.size(); ++n)
                W[b].v[n] +=
                    c * space.metric(geom.tangent[b].v[n], tau_f.v[n]) * geom.position.v[n];
    }

    std::array<std::array<AmbientGrid, 2>, 2> WW;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            WW[a][b] = richardson ? stencil5(W[b], kFirst4, 1.0 / (12.0 * h[a]), a, zero)
                                  : central2(W[b], h[a], a, zero);
            if (c != 0.0)
                for (std::size_t n = 0; n < tau_f.size(); ++n)
                    WW[a][b].v[n] +=
                        c * space.metric(geom.tangent[a].v[n], W[b].v[n]) * geom.position.v[n];
        }

    AmbientGrid out = make_ambient(geom.shape, WW[0][0].margin, dim);
    for (std::size_t i = 0; i < out.nu; ++i)
        for (std::size_t j = 0; j < out.nv; ++j) {
            if (!out.valid(i, j)) continue;
            const std::size_t n = out.idx(i, j);
            const double inv[2][2] = {{geom.inv11.v[n], geom.inv12.v[n]},
                                      {geom.inv12.v[n], geom.inv22.v[n]}};
            AmbientVector trace = zero;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    AmbientVector term = WW[a][b].v[n];
                    for (int d = 0; d < 2; ++d)
                        term -= geom.gamma[d][sym(a, b)].v[n] * W[d].v[n];
                    trace += inv[a][b] * term;
                }
            const AmbientVector curv = c * (m * tau_f.v[n] - dphi_grad.v[n]);
            const AmbientVector advect = grad.v[n][0] * W[0].v[n] + grad.v[n][1] * W[1].v[n];
            out.v[n] = -f.v[n] * trace - f.v[n] * curv - advect;
        }
    return out;
}

SplitField split_ambient_field(const HypersurfaceGeometry& geom, const AmbientGrid& field) {
    SplitField out;
    const int margin = std::max(field.margin, geom.shape.margin);
    out.tangential = make_tangent(geom.shape, margin);
    out.normal = make_scalar(geom.shape, margin);
    for (std::size_t i = 0; i < field.nu; ++i)
        for (std::size_t j = 0; j < field.nv; ++j) {
            if (!out.normal.valid(i, j)) continue;
            const std::size_t n = field.idx(i, j);
            const double t0 = geom.space.metric(field.v[n], geom.tangent[0].v[n]);
            const double t1 = geom.space.metric(field.v[n], geom.tangent[1].v[n]);
            out.tangential.v[n][0] = geom.inv11.v[n] * t0 + geom.inv12.v[n] * t1;
            out.tangential.v[n][1] = geom.inv12.v[n] * t0 + geom.inv22.v[n] * t1;
            out.normal.v[n] = geom.space.metric(field.v[n], geom.normal.v[n]);
        }
    return out;
}

IdentityReport identity_suite(const HypersurfaceGeometry& geom, const ScalarGrid& f,
                              bool richardson) {
    constexpr double m = HypersurfaceGeometry::m;
    IdentityReport report;

    // (a) tangential part of the rough Laplacian of grad f
    const TangentGrid grad = intrinsic_grad(geom, f);
    const int dim = geom.space.ambient_dim();
    AmbientGrid dphi_grad = make_ambient(geom.shape, grad.margin, dim);
    for (std::size_t n = 0; n < grad.size(); ++n)
        dphi_grad.v[n] =
            grad.v[n][0] * geom.tangent[0].v[n] + grad.v[n][1] * geom.tangent[1].v[n];
    AmbientGrid lhs_grad = ambient_trace2(geom, dphi_grad, richardson);
    for (auto& v : lhs_grad.v) v = -v;
    const SplitField lhs_split = split_ambient_field(geom, lhs_grad);
    const GradfLaplacian rhs = rough_laplacian_gradf(geom, f);
    {
        const int margin = std::max(lhs_split.tangential.margin, rhs.tangential.margin);
        for (std::size_t i = 0; i < grad.nu; ++i)
            for (std::size_t j = 0; j < grad.nv; ++j) {
                GridShape s = geom.shape;
                s.margin = margin;
                if (!s.valid(i, j)) continue;
                const std::size_t n = grad.idx(i, j);
                const double d0 = lhs_split.tangential.v[n][0] - rhs.tangential.v[n][0];
                const double d1 = lhs_split.tangential.v[n][1] - rhs.tangential.v[n][1];
                const double nrm = std::sqrt(geom.g11.v[n] * d0 * d0 +
                                             2.0 * geom.g12.v[n] * d0 * d1 +
                                             geom.g22.v[n] * d1 * d1);
                report.gradf_tangential = std::max(report.gradf_tangential, nrm);
            }
    }

    // (b)/(c) rough Laplacian of the unit normal
    AmbientGrid lhs_xi = ambient_trace2(geom, geom.normal, richardson);
    for (auto& v : lhs_xi.v) v = -v;
    const SplitField xi_split = split_ambient_field(geom, lhs_xi);
    const TangentGrid gradH = intrinsic_grad(geom, geom.H);
    {
        const int margin = std::max(xi_split.normal.margin, gradH.margin);
        for (std::size_t i = 0; i < f.nu; ++i)
            for (std::size_t j = 0; j < f.nv; ++j) {
                GridShape s = geom.shape;
                s.margin = margin;
                if (!s.valid(i, j)) continue;
                const std::size_t n = f.idx(i, j);
                report.xi_normal = std::max(
                    report.xi_normal, std::abs(xi_split.normal.v[n] - geom.A_norm2.v[n]));
                const double d0 = xi_split.tangential.v[n][0] - m * gradH.v[n][0];
                const double d1 = xi_split.tangential.v[n][1] - m * gradH.v[n][1];
                const double nrm = std::sqrt(geom.g11.v[n] * d0 * d0 +
                                             2.0 * geom.g12.v[n] * d0 * d1 +
                                             geom.g22.v[n] * d1 * d1);
                report.xi_tangential = std::max(report.xi_tangential, nrm);
            }
    }

    // (d) Codazzi contraction g^{ab}[(nabla_a b)_{cb} - (nabla_c b)_{ab}]
    //     against Ric(xi, .) = 0 in a space-form ambient
    const double h[2] = {geom.hu, geom.hv};
    const ScalarGrid* bb[3] = {&geom.b11, &geom.b12, &geom.b22};
    std::array<std::array<ScalarGrid, 3>, 2> db;
    for (int a = 0; a < 2; ++a)
        for (int ab = 0; ab < 3; ++ab)
            db[a][ab] = stencil5(*bb[ab], kFirst4, 1.0 / (12.0 * h[a]), a, 0.0);
    {
        const int margin = db[0][0].margin;
        auto nabla_b = [&](int a, int cc, int b2, std::size_t n) {
            double t = db[a][sym(cc, b2)].v[n];
            for (int d = 0; d < 2; ++d)
                t -= geom.gamma[d][sym(a, cc)].v[n] * bb[sym(d, b2)]->v[n] +
                     geom.gamma[d][sym(a, b2)].v[n] * bb[sym(cc, d)]->v[n];
            return t;
        };
        for (std::size_t i = 0; i < f.nu; ++i)
            for (std::size_t j = 0; j < f.nv; ++j) {
                GridShape s = geom.shape;
                s.margin = margin;
                if (!s.valid(i, j)) continue;
                const std::size_t n = f.idx(i, j);
                const double inv[2][2] = {{geom.inv11.v[n], geom.inv12.v[n]},
                                          {geom.inv12.v[n], geom.inv22.v[n]}};
                double C[2] = {0.0, 0.0};
                for (int cc = 0; cc < 2; ++cc)
                    for (int a = 0; a < 2; ++a)
                        for (int b2 = 0; b2 < 2; ++b2)
                            C[cc] += inv[a][b2] * (nabla_b(a, cc, b2, n) - nabla_b(cc, a, b2, n));
                double nrm2 = 0.0;
                for (int cc = 0; cc < 2; ++cc)
                    for (int dd = 0; dd < 2; ++dd) nrm2 += inv[cc][dd] * C[cc] * C[dd];
                report.codazzi = std::max(report.codazzi, std::sqrt(std::max(nrm2, 0.0)));
            }
    }
    return report;
}

double sup_norm(const ScalarGrid& w, int margin) {
    double sup = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < w.nu; ++i)
        for (std::size_t j = 0; j < w.nv; ++j) {
            const auto m = static_cast<std::size_t>(margin);
            if (i < m || i + m >= w.nu || j < m || j + m >= w.nv) continue;
            sup = std::max(sup, std::abs(w.at(i, j)));
            any = true;
        }
    if (!any) throw DegenerateInput("no interior nodes at the requested margin");
    return sup;
}

double sup_norm(const HypersurfaceGeometry& geom, const TangentGrid& t, int margin) {
    double sup = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < t.nu; ++i)
        for (std::size_t j = 0; j < t.nv; ++j) {
            const auto m = static_cast<std::size_t>(margin);
            if (i < m || i + m >= t.nu || j < m || j + m >= t.nv) continue;
            const std::size_t n = t.idx(i, j);
            const double nrm2 = geom.g11.v[n] * t.v[n][0] * t.v[n][0] +
                                2.0 * geom.g12.v[n] * t.v[n][0] * t.v[n][1] +
                                geom.g22.v[n] * t.v[n][1] * t.v[n][1];
            sup = std::max(sup, std::sqrt(std::max(nrm2, 0.0)));
            any = true;
        }
    if (!any) throw DegenerateInput("no interior nodes at the requested margin");
    return sup;
}

}  // namespace bifh
