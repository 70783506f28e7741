#include "bifh/spaceform.hpp"

#include <cmath>

namespace bifh {

SpaceForm SpaceForm::euclidean(int n) {
    if (n < 2) throw DimensionMismatch("space form dimension must be >= 2");
    return SpaceForm(Model::Euclidean, n, 0.0);
}

SpaceForm SpaceForm::sphere(int n) {
    if (n < 2) throw DimensionMismatch("space form dimension must be >= 2");
    return SpaceForm(Model::Sphere, n, 1.0);
}

SpaceForm SpaceForm::hyperbolic(int n) {
    if (n < 2) throw DimensionMismatch("space form dimension must be >= 2");
    return SpaceForm(Model::Hyperbolic, n, -1.0);
}

int SpaceForm::ambient_dim() const { return model_ == Model::Euclidean ? n_ : n_ + 1; }

void SpaceForm::check_dim(const AmbientVector& v) const {
    if (v.size() != ambient_dim())
        throw DimensionMismatch("expected ambient vector of length " +
                                std::to_string(ambient_dim()) + ", got " +
                                std::to_string(v.size()));
}

double SpaceForm::metric(const AmbientVector& u, const AmbientVector& v) const {
    check_dim(u);
    check_dim(v);
    double dot = u.dot(v);
    if (model_ == Model::Hyperbolic) dot -= 2.0 * u[0] * v[0];
    return dot;
}

double SpaceForm::norm(const AmbientVector& u) const {
    return std::sqrt(std::abs(metric(u, u)));
}

AmbientVector SpaceForm::tangent_project(const AmbientVector& p, const AmbientVector& v) const {
    check_dim(p);
    check_dim(v);
    switch (model_) {
        case Model::Euclidean:
            return v;
        case Model::Sphere:
            return v - metric(v, p) * p;
        case Model::Hyperbolic:
            // <p,p> = -1, so the projection adds the Minkowski component.
            return v + metric(v, p) * p;
    }
    return v;
}

AmbientVector SpaceForm::curvature_tensor_apply(const AmbientVector& X, const AmbientVector& Y,
                                                const AmbientVector& Z) const {
    check_dim(X);
    check_dim(Y);
    check_dim(Z);
    if (c_ == 0.0) return AmbientVector::Zero(X.size());
    return c_ * (metric(Y, Z) * X - metric(X, Z) * Y);
}

bool SpaceForm::on_manifold(const AmbientVector& p, double tol) const {
    check_dim(p);
    switch (model_) {
        case Model::Euclidean:
            return true;
        case Model::Sphere:
            return std::abs(metric(p, p) - 1.0) <= tol;
        case Model::Hyperbolic:
            return std::abs(metric(p, p) + 1.0) <= tol && p[0] > 0.0;
    }
    return false;
}

AmbientVector SpaceForm::normalize_point(const AmbientVector& p) const {
    check_dim(p);
    switch (model_) {
        case Model::Euclidean:
            return p;
        case Model::Sphere: {
            double n = p.norm();
            if (n < 1e-12) throw OffManifold("cannot normalize near-zero point onto sphere");
            return p / n;
        }
        case Model::Hyperbolic: {
            double q = -metric(p, p);
            if (q <= 0.0 || p[0] <= 0.0)
                throw OffManifold("point not in the timelike upper cone");
            return p / std::sqrt(q);
        }
    }
    return p;
}

}  // namespace bifh
