#include "bifh/curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "bifh/errors.hpp"
#include "bifh/spline.hpp"

namespace bifh {

namespace {

// 5-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGaussNode[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                  0.5384693101056831, 0.9061798459386640};
constexpr double kGaussWeight[5] = {0.2369268850561891, 0.4786286704993665,
                                    0.5688888888888889, 0.4786286704993665,
                                    0.2369268850561891};

double gauss_integrate(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) acc += kGaussWeight[k] * f(mid + half * kGaussNode[k]);
    return acc * half;
}

AmbientVector nan_vector(long dim) {
    return AmbientVector::Constant(dim, std::numeric_limits<double>::quiet_NaN());
}

}  // namespace

CurveSamples resample_arclength(const std::vector<AmbientVector>& raw_points,
                                const SpaceForm& space, int n_out) {
    const std::size_t n_raw = raw_points.size();
    if (n_raw < 4) throw DegenerateInput("resample needs at least 4 raw points");
    if (n_out < 9) throw DegenerateInput("resample needs at least 9 output samples");
    const long dim = space.ambient_dim();
    for (const auto& p : raw_points) {
        if (p.size() != dim) throw DimensionMismatch("raw point has wrong ambient dimension");
        if (!space.on_manifold(p, 1e-6)) throw OffManifold("raw point is not on the manifold");
    }

    // chord-length parametrization
    std::vector<double> t(n_raw, 0.0);
    for (std::size_t i = 1; i < n_raw; ++i) {
        const double chord = (raw_points[i] - raw_points[i - 1]).norm();
        if (chord < 1e-12) throw DegenerateInput("repeated raw point");
        t[i] = t[i - 1] + chord;
    }
    if (t.back() < 1e-9) throw DegenerateInput("curve has negligible total length");

    std::vector<CubicSpline> coord;
    coord.reserve(static_cast<std::size_t>(dim));
    for (long k = 0; k < dim; ++k) {
        std::vector<double> yk(n_raw);
        for (std::size_t i = 0; i < n_raw; ++i) yk[i] = raw_points[i][k];
        coord.emplace_back(t, std::move(yk));
    }

    std::function<double(double)> speed = [&](double tt) {
        AmbientVector d(dim);
        for (long k = 0; k < dim; ++k) d[k] = coord[static_cast<std::size_t>(k)].eval(tt, 1);
        return std::sqrt(std::max(0.0, space.metric(d, d)));
    };

    // cumulative arclength on a refined node table
    constexpr int kSub = 4;
    std::vector<double> node{t.front()};
    for (std::size_t i = 0; i + 1 < n_raw; ++i)
        for (int j = 1; j <= kSub; ++j) node.push_back(t[i] + (t[i + 1] - t[i]) * j / kSub);
    std::vector<double> cum(node.size(), 0.0);
    for (std::size_t j = 1; j < node.size(); ++j)
        cum[j] = cum[j - 1] + gauss_integrate(speed, node[j - 1], node[j]);
    const double total = cum.back();
    if (total < 1e-9) throw DegenerateInput("curve has negligible total length");

    // S(t) relative to the refined table
    auto arclen_at = [&](double tt) {
        auto it = std::upper_bound(node.begin(), node.end(), tt);
        std::size_t j = it == node.begin() ? 0 : static_cast<std::size_t>(it - node.begin()) - 1;
        if (j >= node.size() - 1) j = node.size() - 2;
        return cum[j] + gauss_integrate(speed, node[j], tt);
    };

    CurveSamples out;
    out.space = space;
    out.s.resize(static_cast<std::size_t>(n_out));
    out.points.resize(static_cast<std::size_t>(n_out));
    for (int i = 0; i < n_out; ++i) {
        const double target = total * i / (n_out - 1);
        double lo = t.front(), hi = t.back();
        for (int iter = 0; iter < 60; ++iter) {
            const double mid = 0.5 * (lo + hi);
            (arclen_at(mid) < target ? lo : hi) = mid;
        }
        const double tt = 0.5 * (lo + hi);
        AmbientVector p(dim);
        for (long k = 0; k < dim; ++k) p[k] = coord[static_cast<std::size_t>(k)].value(tt);
        out.s[static_cast<std::size_t>(i)] = target;
        out.points[static_cast<std::size_t>(i)] = space.normalize_point(p);
    }
    return out;
}

std::vector<AmbientVector> covariant_derivative_along(const SpaceForm& space,
                                                      const CurveSamples& samples,
                                                      const std::vector<AmbientVector>& field) {
    const std::size_t n = samples.size();
    if (field.size() != n) throw DimensionMismatch("field length does not match samples");
    if (n < 2 * covariant_margin + 1) throw TooFewSamples("need at least 5 samples");
    const double h = samples.h();
    const long dim = space.ambient_dim();

    std::vector<AmbientVector> out(n, nan_vector(dim));
    for (std::size_t i = covariant_margin; i + covariant_margin < n; ++i) {
        const AmbientVector d = (-field[i + 2] + 8.0 * field[i + 1] - 8.0 * field[i - 1] +
                                 field[i - 2]) /
                                (12.0 * h);
        out[i] = space.tangent_project(samples.points[i], d);
    }
    return out;
}

FrenetApparatus frenet_apparatus(const SpaceForm& space, const CurveSamples& samples,
                                 double tol) {
    const std::size_t n = samples.size();
    if (n < 9) throw TooFewSamples("frenet apparatus needs at least 9 samples");
    const long dim = space.ambient_dim();
    const double h = samples.h();

    // E1 = T from a 4th-order derivative of the points, projected and normalized
    std::vector<AmbientVector> T(n, nan_vector(dim));
    for (std::size_t i = 2; i + 2 < n; ++i) {
        AmbientVector d = (-samples.points[i + 2] + 8.0 * samples.points[i + 1] -
                           8.0 * samples.points[i - 1] + samples.points[i - 2]) /
                          (12.0 * h);
        d = space.tangent_project(samples.points[i], d);
        const double nrm = space.norm(d);
        if (nrm < 1e-12) throw DegenerateInput("vanishing tangent in frenet apparatus");
        T[i] = d / nrm;
    }

    FrenetApparatus app;
    app.frames.assign(n, {});
    app.curvatures.assign(n, {});
    std::vector<std::vector<AmbientVector>> levels{T};
    std::size_t margin = 2;

    const int max_rank = space.dim();
    while (static_cast<int>(levels.size()) < max_rank) {
        const std::size_t new_margin = margin + covariant_margin;
        if (2 * new_margin + 1 > n) break;  // no room for another derivative level

        std::vector<AmbientVector> D = covariant_derivative_along(space, samples, levels.back());

        std::vector<double> k(n, 0.0);
        std::vector<AmbientVector> next(n, nan_vector(dim));
        std::size_t below = 0, valid_count = 0;
        for (std::size_t i = new_margin; i + new_margin < n; ++i) {
            AmbientVector r = D[i];
            for (const auto& level : levels) r -= space.metric(r, level[i]) * level[i];
            k[i] = space.norm(r);
            ++valid_count;
            if (k[i] < tol)
                ++below;
            else
                next[i] = r / k[i];
        }
        if (below == valid_count) break;  // curvature identically zero: rank truncates
        if (below > 0) {
            if (below * 20 > valid_count)
                throw FrameCollapse("curvature oscillates across tolerance");
            // isolated degenerate samples: borrow the nearest well-defined
            // direction, re-projected and re-orthonormalized at this sample
            for (std::size_t i = new_margin; i + new_margin < n; ++i) {
                if (k[i] >= tol) continue;
                app.degenerate_at.push_back(i);
                std::size_t j = i;
                for (std::size_t off = 1; off < n; ++off) {
                    if (i >= new_margin + off && k[i - off] >= tol) { j = i - off; break; }
                    if (i + off + new_margin < n && k[i + off] >= tol) { j = i + off; break; }
                }
                AmbientVector r = space.tangent_project(samples.points[i], next[j]);
                for (const auto& level : levels) r -= space.metric(r, level[i]) * level[i];
                const double nrm = space.norm(r);
                next[i] = nrm > 1e-12 ? AmbientVector(r / nrm) : nan_vector(dim);
            }
        }
        levels.push_back(std::move(next));
        margin = new_margin;
        for (std::size_t i = margin; i + margin < n; ++i)
            app.curvatures[i].push_back(k[i]);
    }

    app.rank = static_cast<int>(levels.size());
    app.margin = margin;
    for (std::size_t i = app.margin; i + app.margin < n; ++i) {
        app.frames[i].reserve(levels.size());
        for (const auto& level : levels) app.frames[i].push_back(level[i]);
        app.curvatures[i].resize(static_cast<std::size_t>(app.rank) - 1, 0.0);
    }
    return app;
}

CurveSamples reconstruct_curve(const SpaceForm& space, const CurvatureProfile& profile,
                               const AmbientVector& p0,
                               const std::vector<AmbientVector>& frame0, double h) {
    if (!(h > 0.0) || h > 1e-2) throw ConfigError("step size must lie in (0, 1e-2]");
    if (frame0.empty()) throw DegenerateInput("initial frame is empty");
    const long dim = space.ambient_dim();
    const std::size_t r = frame0.size();
    if (static_cast<int>(r) > space.dim())
        throw DimensionMismatch("frame rank exceeds manifold dimension");
    if (p0.size() != dim) throw DimensionMismatch("initial point has wrong dimension");
    if (!space.on_manifold(p0, 1e-8)) throw OffManifold("initial point is not on the manifold");
    for (std::size_t i = 0; i < r; ++i) {
        if (frame0[i].size() != dim) throw DimensionMismatch("frame vector has wrong dimension");
        for (std::size_t j = 0; j <= i; ++j) {
            const double want = i == j ? 1.0 : 0.0;
            if (std::abs(space.metric(frame0[i], frame0[j]) - want) > 1e-8)
                throw DegenerateInput("initial frame is not orthonormal");
        }
        if (space.model() != SpaceForm::Model::Euclidean &&
            std::abs(space.metric(frame0[i], p0)) > 1e-8)
            throw DegenerateInput("initial frame vector is not tangent");
    }

    const double c = space.curvature();
    const ScalarProfile* ks[3] = {&profile.k1, &profile.k2, &profile.k3};
    auto curvature_value = [&](std::size_t i, double s) {
        return i < 3 ? ks[i]->jet(s).v0 : 0.0;
    };

    // state layout: p, E_1..E_r flattened
    const long stride = dim;
    Eigen::VectorXd state((static_cast<long>(r) + 1) * stride);
    state.segment(0, stride) = p0;
    for (std::size_t i = 0; i < r; ++i)
        state.segment((static_cast<long>(i) + 1) * stride, stride) = frame0[i];

    auto deriv = [&](double s, const Eigen::VectorXd& y) {
        Eigen::VectorXd dy(y.size());
        const AmbientVector p = y.segment(0, stride);
        std::vector<AmbientVector> E(r);
        for (std::size_t i = 0; i < r; ++i)
            E[i] = y.segment((static_cast<long>(i) + 1) * stride, stride);
        dy.segment(0, stride) = E[0];
        for (std::size_t i = 0; i < r; ++i) {
            AmbientVector rhs = AmbientVector::Zero(stride);
            if (i > 0) rhs -= curvature_value(i - 1, s) * E[i - 1];
            if (i + 1 < r) rhs += curvature_value(i, s) * E[i + 1];
            // ambient representation of the covariant equation
            rhs -= c * space.metric(E[i], E[0]) * p;
            dy.segment((static_cast<long>(i) + 1) * stride, stride) = rhs;
        }
        return dy;
    };

    const int steps = static_cast<int>(std::llround((profile.s1 - profile.s0) / h));
    if (steps < 1) throw ConfigError("profile domain shorter than one step");

    CurveSamples out;
    out.space = space;
    out.s.reserve(static_cast<std::size_t>(steps) + 1);
    out.points.reserve(static_cast<std::size_t>(steps) + 1);
    out.s.push_back(profile.s0);
    out.points.push_back(p0);

    for (int step = 0; step < steps; ++step) {
        const double s = profile.s0 + step * h;
        const Eigen::VectorXd k1v = deriv(s, state);
        const Eigen::VectorXd k2v = deriv(s + 0.5 * h, state + 0.5 * h * k1v);
        const Eigen::VectorXd k3v = deriv(s + 0.5 * h, state + 0.5 * h * k2v);
        const Eigen::VectorXd k4v = deriv(s + h, state + h * k3v);
        state += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

        if ((step + 1) % 16 == 0 || step + 1 == steps) {
            AmbientVector p = state.segment(0, stride);
            std::vector<AmbientVector> E(r);
            for (std::size_t i = 0; i < r; ++i)
                E[i] = state.segment((static_cast<long>(i) + 1) * stride, stride);
            double drift = 0.0;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    const double want = i == j ? 1.0 : 0.0;
                    drift = std::max(drift, std::abs(space.metric(E[i], E[j]) - want));
                }
            if (space.model() != SpaceForm::Model::Euclidean)
                drift = std::max(drift, std::abs(space.metric(p, p) - c));
            if (drift > 1e-6) throw StepTooLarge("orthonormality drift exceeds tolerance");

            p = space.normalize_point(p);
            for (std::size_t i = 0; i < r; ++i) {
                AmbientVector v = space.tangent_project(p, E[i]);
                for (std::size_t j = 0; j < i; ++j) v -= space.metric(v, E[j]) * E[j];
                E[i] = v / space.norm(v);
            }
            state.segment(0, stride) = p;
            for (std::size_t i = 0; i < r; ++i)
                state.segment((static_cast<long>(i) + 1) * stride, stride) = E[i];
        }

        out.s.push_back(profile.s0 + (step + 1) * h);
        out.points.push_back(space.normalize_point(state.segment(0, stride)));
    }
    return out;
}

}  // namespace bifh
