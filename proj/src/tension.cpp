#include "bifh/tension.hpp"

#include <cmath>
#include <limits>

#include "bifh/errors.hpp"

namespace bifh {

namespace {

// 4th-order first derivative of a vector sequence; one-sided at the two
// samples nearest each end so every sample gets a value.
std::vector<AmbientVector> derivative_field(const std::vector<AmbientVector>& y, double h) {
    const std::size_t n = y.size();
    std::vector<AmbientVector> out(n);
    auto fwd = [&](std::size_t i) -> AmbientVector {
        return (-25.0 * y[i] + 48.0 * y[i + 1] - 36.0 * y[i + 2] + 16.0 * y[i + 3] -
                3.0 * y[i + 4]) /
               (12.0 * h);
    };
    auto bwd = [&](std::size_t i) -> AmbientVector {
        return (25.0 * y[i] - 48.0 * y[i - 1] + 36.0 * y[i - 2] - 16.0 * y[i - 3] +
                3.0 * y[i - 4]) /
               (12.0 * h);
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (i < 2)
            out[i] = fwd(i);
        else if (i + 2 >= n)
            out[i] = bwd(i);
        else
            out[i] = (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) / (12.0 * h);
    }
    return out;
}

}  // namespace

std::vector<AmbientVector> tangent_field(const SpaceForm& space, const CurveSamples& samples) {
    if (samples.size() < 9) throw TooFewSamples("tangent field needs at least 9 samples");
    std::vector<AmbientVector> T = derivative_field(samples.points, samples.h());
    for (std::size_t i = 0; i < T.size(); ++i)
        T[i] = space.tangent_project(samples.points[i], T[i]);
    return T;
}

std::vector<AmbientVector> tension_field(const SpaceForm& space, const CurveSamples& samples) {
    return covariant_derivative_along(space, samples, tangent_field(space, samples));
}

std::vector<AmbientVector> f_tension_field(const SpaceForm& space, const CurveSamples& samples,
                                           const WeightFn& f) {
    auto T = tangent_field(space, samples);
    auto tau = covariant_derivative_along(space, samples, T);
    std::vector<AmbientVector> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Jet3 fj = f.jet(samples.s[i]);
        if (!(fj.v0 > 0.0)) throw DomainError("weight function must be positive on the grid");
        out[i] = fj.v0 * tau[i] + fj.v1 * T[i];
    }
    return out;
}

std::vector<AmbientVector> bi_f_tension_direct(const SpaceForm& space,
                                               const CurveSamples& samples, const WeightFn& f) {
    const std::size_t n = samples.size();
    if (n < 2 * bi_f_margin + 1) throw TooFewSamples("not enough samples for the bi-f-tension");
    auto T = tangent_field(space, samples);
    auto d1 = covariant_derivative_along(space, samples, T);
    auto d2 = covariant_derivative_along(space, samples, d1);
    auto d3 = covariant_derivative_along(space, samples, d2);

    std::vector<AmbientVector> out(
        n, AmbientVector::Constant(space.ambient_dim(),
                                   std::numeric_limits<double>::quiet_NaN()));
    for (std::size_t i = bi_f_margin; i + bi_f_margin < n; ++i) {
        const Jet3 fj = f.jet(samples.s[i]);
        if (!(fj.v0 > 0.0)) throw DomainError("weight function must be positive on the grid");
        out[i] = (fj.v0 * fj.v3 + fj.v1 * fj.v2) * T[i] +
                 (3.0 * fj.v0 * fj.v2 + 2.0 * fj.v1 * fj.v1) * d1[i] +
                 4.0 * fj.v0 * fj.v1 * d2[i] + fj.v0 * fj.v0 * d3[i] +
                 fj.v0 * fj.v0 * space.curvature_tensor_apply(d1[i], T[i], T[i]);
    }
    return out;
}

FrameCoefficients frenet_coefficients(const CurvatureProfile& profile, const WeightFn& f,
                                      double c, int n) {
    if (n < 2) throw ConfigError("coefficient grid needs at least 2 samples");
    return frenet_coefficients(profile, f, c, profile.grid(n));
}

FrameCoefficients frenet_coefficients(const CurvatureProfile& profile, const WeightFn& f,
                                      double c, const std::vector<double>& grid) {
    FrameCoefficients out;
    out.s = grid;
    for (auto& row : out.rows) row.reserve(out.s.size());
    for (double s : out.s) {
        const Bindings kj = profile.curvature_jets(s);
        const Jet3 k1 = kj.at("k1"), k2 = kj.at("k2"), k3 = kj.at("k3");
        const Jet3 fj = f.jet(s, kj);
        if (!(fj.v0 > 0.0)) throw DomainError("weight function must be positive on the grid");
        const double f0 = fj.v0, f1 = fj.v1, f2 = fj.v2, f3 = fj.v3;
        out.rows[0].push_back(-3.0 * k1.v0 * k1.v1 * f0 * f0 - 4.0 * k1.v0 * k1.v0 * f0 * f1 +
                              f0 * f3 + f1 * f2);
        out.rows[1].push_back(-k1.v0 * k1.v0 * k1.v0 * f0 * f0 -
                              k1.v0 * k2.v0 * k2.v0 * f0 * f0 + k1.v2 * f0 * f0 +
                              4.0 * k1.v1 * f0 * f1 + 3.0 * k1.v0 * f0 * f2 +
                              2.0 * k1.v0 * f1 * f1 + c * k1.v0 * f0 * f0);
        out.rows[2].push_back(2.0 * k1.v1 * k2.v0 * f0 + k1.v0 * k2.v1 * f0 +
                              4.0 * k1.v0 * k2.v0 * f1);
        out.rows[3].push_back(k1.v0 * k2.v0 * k3.v0 * f0 * f0);
    }
    return out;
}

ResidualReport system_residual(const CurvatureProfile& profile, const WeightFn& f, double c,
                               double tol, int n) {
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
    FrameCoefficients coeff = frenet_coefficients(profile, f, c, n);
    ResidualReport report;
    report.grid = coeff.s;
    report.tol = tol;
    for (int e = 0; e < 4; ++e) report.eq_residuals[static_cast<std::size_t>(e)] = coeff.rows[static_cast<std::size_t>(e)];
    // fourth equation as printed: k1 k2 k3 = 0, without the weight factor
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        const Bindings kj = profile.curvature_jets(report.grid[i]);
        report.eq_residuals[3][i] = kj.at("k1").v0 * kj.at("k2").v0 * kj.at("k3").v0;
    }
    for (std::size_t e = 0; e < 4; ++e) {
        double sup = 0.0;
        for (double v : report.eq_residuals[e]) sup = std::max(sup, std::abs(v));
        report.sup_norms[e] = sup;
    }
    const bool ok = report.sup_norms[0] <= tol && report.sup_norms[1] <= tol &&
                    report.sup_norms[2] <= tol && report.sup_norms[3] <= tol;
    report.verdict = ok ? Verdict::Satisfied : Verdict::Violated;
    return report;
}

GeodesicCondition geodesic_condition(const WeightFn& f, const std::vector<double>& grid,
                                     double tol) {
    if (grid.size() < 3) throw ConfigError("geodesic condition needs at least 3 grid points");
    double lo = 0.0, hi = 0.0, sum = 0.0, amax = 0.0;
    bool first = true;
    for (double s : grid) {
        const Jet3 fj = f.jet(s);
        const double v = fj.v0 * fj.v2;
        lo = first ? v : std::min(lo, v);
        hi = first ? v : std::max(hi, v);
        amax = std::max(amax, std::abs(v));
        sum += v;
        first = false;
    }
    GeodesicCondition out;
    out.holds = (hi - lo) <= tol * (1.0 + amax);
    out.value = sum / static_cast<double>(grid.size());
    return out;
}

Energies energies(const SpaceForm& space, const CurveSamples& samples, const WeightFn& f) {
    const std::size_t n = samples.size();
    auto T = tangent_field(space, samples);
    auto tau = covariant_derivative_along(space, samples, T);
    const std::size_t m = covariant_margin;
    if (n < 2 * m + 2) throw TooFewSamples("not enough samples for energies");
    const double h = samples.h();

    Energies out;
    auto add = [&](std::size_t i, double w) {
        const Jet3 fj = f.jet(samples.s[i]);
        const double dT = space.metric(T[i], T[i]);
        const double dTau = space.metric(tau[i], tau[i]);
        const AmbientVector tf = fj.v0 * tau[i] + fj.v1 * T[i];
        out.E += w * 0.5 * dT;
        out.E2 += w * 0.5 * dTau;
        out.Ef += w * 0.5 * fj.v0 * dT;
        out.E2f += w * 0.5 * fj.v0 * dTau;
        out.Ef2 += w * 0.5 * space.metric(tf, tf);
    };
    for (std::size_t i = m; i + m < n; ++i) {
        const bool edge = (i == m) || (i + m + 1 == n);
        add(i, edge ? 0.5 * h : h);
    }
    return out;
}

}  // namespace bifh
