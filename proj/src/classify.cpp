#include "bifh/classify.hpp"

#include <cmath>
#include <sstream>

#include "bifh/errors.hpp"

namespace bifh {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

enum class Kind { Zero, Constant, Varying };

Kind classify_curvature(const ScalarProfile& k, const std::vector<double>& grid, double tol,
                        const char* name) {
    if (k.identically_zero()) return Kind::Zero;
    double sup = 0.0, inf = 0.0;
    bool first = true;
    for (double s : grid) {
        const double v = k.jet(s).v0;
        sup = first ? v : std::max(sup, v);
        inf = first ? v : std::min(inf, v);
        first = false;
    }
    if (std::abs(sup) < tol && std::abs(inf) < tol) return Kind::Zero;
    constexpr double nowhere_zero = 1e-7;
    if (inf < nowhere_zero)
        throw Ambiguous(std::string(name) +
                        " is neither identically zero nor bounded away from zero");
    if (sup - inf <= tol * sup) return Kind::Constant;
    return Kind::Varying;
}

double midpoint_value(const ScalarProfile& k, const CurvatureProfile& profile) {
    return k.jet(0.5 * (profile.s0 + profile.s1)).v0;
}

}  // namespace

const char* to_string(CaseTag::Case c) {
    switch (c) {
        case CaseTag::Case::I: return "I";
        case CaseTag::Case::II: return "II";
        case CaseTag::Case::III: return "III";
        case CaseTag::Case::IV: return "IV";
        case CaseTag::Case::V: return "V";
        case CaseTag::Case::VI: return "VI";
        case CaseTag::Case::VII: return "VII";
    }
    return "?";
}

CaseTag detect_regime(const CurvatureProfile& profile, double tol, int n, double space_c) {
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
    const std::vector<double> grid = profile.grid(n);
    const Kind k1 = classify_curvature(profile.k1, grid, tol, "k1");
    const Kind k2 = classify_curvature(profile.k2, grid, tol, "k2");

    CaseTag tag;
    tag.space_c = space_c;
    if (k1 == Kind::Zero) {
        tag.value = CaseTag::Case::I;
    } else if (k1 == Kind::Constant) {
        tag.value = k2 == Kind::Zero ? CaseTag::Case::II
                    : k2 == Kind::Constant ? CaseTag::Case::III
                                           : CaseTag::Case::IV;
    } else {
        tag.value = k2 == Kind::Zero ? CaseTag::Case::V
                    : k2 == Kind::Constant ? CaseTag::Case::VI
                                           : CaseTag::Case::VII;
    }
    return tag;
}

std::vector<WeightFn> candidate_weight(const CaseTag& tag, const CurvatureProfile& profile,
                                       double c) {
    using Case = CaseTag::Case;
    switch (tag.value) {
        case Case::I:
            return {WeightFn::from_expression("s", "affine")};
        case Case::II: {
            const double k1 = midpoint_value(profile.k1, profile);
            if (c == 0.0) {
                return {WeightFn::from_expression(
                    "cos(" + fmt(std::sqrt(2.5) * k1) + "*s)", "trig")};
            }
            if (c == 1.0) {
                return {WeightFn::from_expression(
                    "cos(" + fmt(std::sqrt((5.0 * k1 * k1 + 1.0) / 2.0)) + "*s)", "trig")};
            }
            if (c == -1.0) {
                const double threshold = std::sqrt(5.0) / 5.0;
                if (std::abs(k1 - threshold) <= 1e-9)
                    return {WeightFn::from_expression("s", "affine")};
                if (k1 > threshold)
                    return {WeightFn::from_expression(
                        "cos(" + fmt(std::sqrt((5.0 * k1 * k1 - 1.0) / 2.0)) + "*s)", "trig")};
                return {WeightFn::from_expression(
                    "exp(" + fmt(std::sqrt((1.0 - 5.0 * k1 * k1) / 2.0)) + "*s)",
                    "exponential")};
            }
            throw ConfigError("closed-form weights require ambient curvature 0, 1, or -1");
        }
        case Case::III:
            if (c == 1.0) return {WeightFn::from_expression("1", "constant")};
            throw NoCandidates(
                "no weight admits constant nonzero curvatures unless the ambient curvature "
                "is +1");
        case Case::IV:
            return {WeightFn::from_expression("k2^(-1/4)", "curvature-power")};
        case Case::V:
            return {};
        case Case::VI:
            return {WeightFn::from_expression("k1^(-1/2)", "curvature-power")};
        case Case::VII:
            return {WeightFn::from_expression("k1^(-1/2)*k2^(-1/4)", "curvature-power")};
    }
    return {};
}

double reduction_identity_check(const WeightFn& f, double k1_const,
                                const std::vector<double>& grid) {
    if (!(k1_const > 0.0)) throw ConfigError("constant curvature must be positive");
    const double kk = k1_const * k1_const;
    double sup = 0.0;
    for (double s : grid) {
        const Jet3 fj = f.jet(s);
        // d/ds of the second constant-k1 equation (which has no third
        // derivative of f, so this needs jets only to order 3)
        const double d_eq2 =
            3.0 * fj.v0 * fj.v3 + 7.0 * fj.v1 * fj.v2 - 2.0 * kk * fj.v0 * fj.v1;
        const double eq1 = fj.v0 * fj.v3 + fj.v1 * fj.v2 - 4.0 * kk * fj.v0 * fj.v1;
        const double reduced = 2.0 * fj.v1 * (5.0 * kk * fj.v0 + 2.0 * fj.v2);
        // normalize by the magnitude of the combined terms so the result
        // measures cancellation quality independent of the scale of f
        const double scale =
            std::max(1.0, std::abs(d_eq2) + 3.0 * std::abs(eq1) + std::abs(reduced));
        sup = std::max(sup, std::abs(d_eq2 - 3.0 * eq1 - reduced) / scale);
    }
    return sup;
}

FactorReport substitution_equivalence(const CaseTag& tag, const CurvatureProfile& profile,
                                      const std::vector<double>& grid) {
    using Case = CaseTag::Case;
    if (tag.value != Case::IV && tag.value != Case::VI && tag.value != Case::VII)
        throw ConfigError("substitution equivalence applies to the curvature-power regimes");

    const WeightFn f = candidate_weight(tag, profile, 0.0).front();
    const FrameCoefficients rows = frenet_coefficients(profile, f, 0.0, grid);

    FactorReport out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Bindings kj = profile.curvature_jets(grid[i]);
        const Jet3 k1 = kj.at("k1"), k2 = kj.at("k2");
        out.third_row_sup = std::max(out.third_row_sup, std::abs(rows.rows[2][i]));
        if (tag.value == Case::VII) continue;

        double lhs1 = 0.0, rhs1 = 0.0, lhs2 = 0.0, rhs2 = 0.0;
        if (tag.value == Case::VI) {
            const double k = k1.v0, kp = k1.v1, kpp = k1.v2, kppp = k1.v3;
            lhs1 = rows.rows[0][i] * (-4.0 * k * k * k * k);
            rhs1 = 9.0 * kp * kp * kp + 4.0 * k * k * k * k * kp - 10.0 * k * kp * kpp +
                   2.0 * k * k * kppp;
            lhs2 = rows.rows[1][i] * (4.0 * k * k);
            rhs2 = 3.0 * kp * kp - 4.0 * k * k * k * k - 4.0 * k * k * k2.v0 * k2.v0 -
                   2.0 * k * kpp;
        } else {  // Case IV
            const double k = k2.v0, kp = k2.v1, kpp = k2.v2, kppp = k2.v3;
            lhs1 = rows.rows[0][i] * 32.0 * std::pow(k, 3.5);
            rhs1 = 32.0 * k1.v0 * k1.v0 * k * k * kp - 25.0 * kp * kp * kp +
                   32.0 * k * kp * kpp - 8.0 * k * k * kppp;
            lhs2 = rows.rows[1][i] * (-16.0 * std::pow(k, 2.5) / k1.v0);
            rhs2 = 16.0 * k1.v0 * k1.v0 * k * k + 16.0 * k * k * k * k - 17.0 * kp * kp +
                   12.0 * k * kpp;
        }
        out.row1_mismatch =
            std::max(out.row1_mismatch, std::abs(lhs1 - rhs1) / std::max(1.0, std::abs(rhs1)));
        out.row2_mismatch =
            std::max(out.row2_mismatch, std::abs(lhs2 - rhs2) / std::max(1.0, std::abs(rhs2)));
    }
    return out;
}

IntegratedSystem curvature_system_integrate(const CaseTag& tag, const CurvatureIvp& init,
                                            double s0, double s1, double h) {
    if (tag.value != CaseTag::Case::VI)
        throw ConfigError("curvature integration applies to the varying-k1 regime");
    if (!(h > 0.0) || h > 1e-3) throw ConfigError("step size must lie in (0, 1e-3]");
    if (!(init.k1_0 > 0.0)) throw ConfigError("initial k1 must be positive");
    if (!(s1 > s0)) throw ConfigError("empty integration span");

    const double K2 = init.k2_const;
    auto accel = [K2](double k, double p) {
        return (3.0 * p * p - 4.0 * k * k * k * k - 4.0 * k * k * K2 * K2) / (2.0 * k);
    };

    const int steps = static_cast<int>(std::llround((s1 - s0) / h));
    std::vector<double> ss, kk, monitor;
    ss.reserve(static_cast<std::size_t>(steps) + 1);
    double k = init.k1_0, p = init.k1p_0;
    for (int step = 0; step <= steps; ++step) {
        const double s = s0 + step * h;
        if (!(k > 1e-4)) throw SingularityReached("k1 dropped below 1e-4 at s=" + fmt(s));
        if (!std::isfinite(k) || !std::isfinite(p))
            throw StepRejected("state became non-finite at s=" + fmt(s));
        ss.push_back(s);
        kk.push_back(k);

        // companion third-order residual, with k1'' from the IVP relation and
        // k1''' from its total s-derivative
        const double kpp = accel(k, p);
        const double d_accel_dk = -8.0 * k * k - 4.0 * K2 * K2 - kpp / k;
        const double d_accel_dp = 3.0 * p / k;
        const double kppp = d_accel_dk * p + d_accel_dp * kpp;
        monitor.push_back(9.0 * p * p * p + 4.0 * k * k * k * k * p - 10.0 * k * p * kpp +
                          2.0 * k * k * kppp);

        if (step == steps) break;
        auto f2 = [&](double kc, double pc) { return std::pair{pc, accel(kc, pc)}; };
        auto [a1, b1] = f2(k, p);
        auto [a2, b2] = f2(k + 0.5 * h * a1, p + 0.5 * h * b1);
        auto [a3, b3] = f2(k + 0.5 * h * a2, p + 0.5 * h * b2);
        auto [a4, b4] = f2(k + h * a3, p + h * b3);
        k += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        p += (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    }

    IntegratedSystem out;
    out.profile.k1 = ScalarProfile::sampled(ss, kk);
    out.profile.k2 = K2 == 0.0 ? ScalarProfile::zero() : ScalarProfile::constant(K2);
    out.profile.s0 = s0;
    out.profile.s1 = ss.back();
    out.monitor.grid = ss;
    out.monitor.eq_residuals[0] = monitor;
    double sup = 0.0;
    for (double v : monitor) sup = std::max(sup, std::abs(v));
    out.monitor.sup_norms[0] = sup;
    out.monitor.verdict = sup <= out.monitor.tol ? Verdict::Satisfied : Verdict::Violated;
    out.monitor.diagnostics.push_back(
        "companion equation sup residual along the integrated trajectory: " + fmt(sup));
    return out;
}

Certificate nonexistence_certificate(double k1_const, double k2_const, double c) {
    if (!(k1_const > 0.0) || !(k2_const > 0.0))
        throw ConfigError("constant curvatures must be positive");
    Certificate cert;
    cert.case_name = "III";
    cert.forced_relations.push_back("f' = 0");
    cert.forced_relations.push_back("k1^2 + k2^2 = " + fmt(c));
    const double sum = k1_const * k1_const + k2_const * k2_const;
    if (c == 1.0 && std::abs(sum - 1.0) <= 1e-9) {
        cert.kind = Certificate::Kind::Candidate;
        cert.forced_relations.push_back("k3 = 0");
        cert.diagnostics.push_back("constant weight with k1^2 + k2^2 = 1 on the unit sphere");
        return cert;
    }
    cert.kind = Certificate::Kind::Nonexistence;
    if (c <= 0.0)
        cert.diagnostics.push_back(
            "sum of squares of positive constants cannot equal " + fmt(c));
    else
        cert.diagnostics.push_back("k1^2 + k2^2 = " + fmt(sum) + " does not equal " + fmt(c));
    return cert;
}

ClassifyOutcome classify_report(const CurvatureProfile& profile, const WeightFn& f, double c,
                                double tol) {
    ClassifyOutcome out;
    out.tag = detect_regime(profile, tol, 128, c);
    out.report = system_residual(profile, f, c, tol);
    out.certificate.case_name = to_string(out.tag.value);

    using Case = CaseTag::Case;
    if (out.tag.value == Case::III) {
        out.certificate = nonexistence_certificate(midpoint_value(profile.k1, profile),
                                                   midpoint_value(profile.k2, profile), c);
        return out;
    }

    std::vector<WeightFn> candidates;
    try {
        candidates = candidate_weight(out.tag, profile, c);
    } catch (const NoCandidates& e) {
        out.certificate.kind = Certificate::Kind::Nonexistence;
        out.certificate.diagnostics.push_back(e.what());
    }
    for (const WeightFn& cand : candidates) {
        try {
            const ResidualReport r = system_residual(profile, cand, c, tol);
            double sup = 0.0;
            for (double v : r.sup_norms) sup = std::max(sup, v);
            out.report.diagnostics.push_back("candidate '" + print(cand.ast) +
                                             "' back-substitution sup residual: " + fmt(sup));
        } catch (const DomainError&) {
            out.report.diagnostics.push_back("candidate '" + print(cand.ast) +
                                             "' is not positive on the working grid");
        }
    }

    if (out.tag.value == Case::I) {
        const GeodesicCondition g = geodesic_condition(f, profile.grid(128), tol);
        if (g.holds)
            out.report.diagnostics.push_back("f*f'' is constant: " + fmt(g.value));
    }
    if (out.tag.value == Case::II) {
        // first-order reduction of the constant-k1 system for the supplied f
        const double k1 = midpoint_value(profile.k1, profile);
        double reduced_sup = 0.0;
        for (double s : profile.grid(128)) {
            const Jet3 fj = f.jet(s);
            reduced_sup = std::max(
                reduced_sup,
                std::abs(fj.v1 * (5.0 * k1 * k1 * fj.v0 + 2.0 * fj.v2)));
        }
        if (reduced_sup <= tol && out.report.verdict == Verdict::Violated)
            out.report.diagnostics.push_back(
                "the first-order reduced condition holds to " + fmt(reduced_sup) +
                " but the full second equation fails");
    }

    if (out.certificate.kind != Certificate::Kind::Nonexistence)
        out.certificate.kind = out.report.verdict == Verdict::Satisfied
                                   ? Certificate::Kind::Candidate
                                   : Certificate::Kind::Inconclusive;
    return out;
}

}  // namespace bifh
