#pragma once

#include <Eigen/Dense>

#include "bifh/errors.hpp"

namespace bifh {

// Coordinate carrier for points and vectors in the ambient model space.
// Length n for Euclidean, n+1 for the sphere / hyperboloid embeddings.
using AmbientVector = Eigen::VectorXd;

// Ambient space form: E^n, S^n(1) as the unit sphere in R^{n+1}, or H^n(-1)
// as the upper hyperboloid in Minkowski R^{1,n} with signature (-,+,...,+).
class SpaceForm {
public:
    enum class Model { Euclidean, Sphere, Hyperbolic };

    static SpaceForm euclidean(int n);
    static SpaceForm sphere(int n);
    static SpaceForm hyperbolic(int n);

    Model model() const { return model_; }
    int dim() const { return n_; }                  // manifold dimension
    int ambient_dim() const;                        // coordinate length
    double curvature() const { return c_; }

    double metric(const AmbientVector& u, const AmbientVector& v) const;
    double norm(const AmbientVector& u) const;

    // Orthogonal projection of v onto the tangent space at p.
    AmbientVector tangent_project(const AmbientVector& p, const AmbientVector& v) const;

    // R^N(X,Y)Z = c (h(Y,Z) X - h(X,Z) Y)
    AmbientVector curvature_tensor_apply(const AmbientVector& X, const AmbientVector& Y,
                                         const AmbientVector& Z) const;

    bool on_manifold(const AmbientVector& p, double tol) const;

    // Rescale p onto the model (sphere / hyperboloid normalization).
    AmbientVector normalize_point(const AmbientVector& p) const;

private:
    SpaceForm(Model m, int n, double c) : model_(m), n_(n), c_(c) {}

    void check_dim(const AmbientVector& v) const;

    Model model_;
    int n_;
    double c_;
};

}  // namespace bifh
