#pragma once

#include <cstddef>
#include <vector>

#include "bifh/profile.hpp"
#include "bifh/spaceform.hpp"

namespace bifh {

// Arclength-parametrized curve: uniform grid s, one ambient point per sample.
struct CurveSamples {
    std::vector<double> s;
    std::vector<AmbientVector> points;
    SpaceForm space = SpaceForm::euclidean(2);

    std::size_t size() const { return s.size(); }
    double h() const { return s.size() > 1 ? s[1] - s[0] : 0.0; }
};

// Frenet frame field E_1..E_r with curvatures k_1..k_{r-1} per sample.
// Derivative stencils leave a margin of `margin` samples at each end whose
// entries are unspecified; `valid(i)` tells whether sample i carries data.
// `degenerate_at` lists interior samples where a Gram-Schmidt residual fell
// below tolerance while the level as a whole did not truncate.
struct FrenetApparatus {
    int rank = 0;
    std::size_t margin = 0;
    std::vector<std::vector<AmbientVector>> frames;    // [sample][0..rank-1]
    std::vector<std::vector<double>> curvatures;       // [sample][0..rank-2]
    std::vector<std::size_t> degenerate_at;

    bool valid(std::size_t i) const {
        return i >= margin && i + margin < frames.size();
    }
};

// Fit a spline through raw points, reparametrize by arclength, resample to
// n_out uniform samples, and re-project each sample onto the manifold.
CurveSamples resample_arclength(const std::vector<AmbientVector>& raw_points,
                                const SpaceForm& space, int n_out);

// Covariant derivative of a tangent field along the curve: 4th-order central
// difference of the ambient representation followed by tangential projection.
// The first and last `covariant_margin` entries are NaN-filled.
inline constexpr std::size_t covariant_margin = 2;
std::vector<AmbientVector> covariant_derivative_along(const SpaceForm& space,
                                                      const CurveSamples& samples,
                                                      const std::vector<AmbientVector>& field);

// Gram-Schmidt Frenet apparatus. A curvature below tol at every sample
// truncates the rank; isolated sub-tolerance samples (at most 5%) are recorded
// in degenerate_at; more than that raises FrameCollapse.
FrenetApparatus frenet_apparatus(const SpaceForm& space, const CurveSamples& samples,
                                 double tol = 1e-7);

// Integrate the Frenet system for a curvature profile from an initial point
// and orthonormal tangent frame, with classical 4th-order steps of size h and
// periodic re-orthonormalization.
CurveSamples reconstruct_curve(const SpaceForm& space, const CurvatureProfile& profile,
                               const AmbientVector& p0,
                               const std::vector<AmbientVector>& frame0, double h);

}  // namespace bifh
