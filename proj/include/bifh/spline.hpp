#pragma once

#include <vector>

#include "bifh/jet.hpp"

namespace bifh {

// Interpolating cubic spline with not-a-knot end conditions on a strictly
// increasing knot sequence. Not-a-knot keeps full fourth-order accuracy at the
// boundary, which natural end conditions would lose.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> knots, std::vector<double> values);

    double value(double t) const { return eval(t, 0); }
    double eval(double t, int derivative) const;  // derivative in 0..3
    Jet3 jet(double t) const;

    double front() const { return t_.front(); }
    double back() const { return t_.back(); }

private:
    std::size_t locate(double t) const;

    std::vector<double> t_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at knots
};

}  // namespace bifh
