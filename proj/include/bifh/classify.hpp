#pragma once

#include <vector>

#include "bifh/report.hpp"
#include "bifh/tension.hpp"

namespace bifh {

// Regime of a curvature profile: the seven combinations of k1/k2 being zero,
// a nonzero constant, or varying (nowhere zero), plus the ambient curvature.
struct CaseTag {
    enum class Case { I, II, III, IV, V, VI, VII };
    Case value = Case::I;
    double space_c = 0.0;
};

const char* to_string(CaseTag::Case c);

// Classify k1/k2 as zero (sup < tol), nonzero constant (relative variation
// < tol), or varying; varying curvatures must stay bounded away from zero.
CaseTag detect_regime(const CurvatureProfile& profile, double tol = 1e-6, int n = 128,
                      double space_c = 0.0);

// The closed-form weight families associated with each regime, with free
// constants instantiated to their defaults (multiplier 1, trig/affine pair
// (1, 0)). Case V has no closed form and yields an empty list; Case III has
// candidates only for space_c = 1.
std::vector<WeightFn> candidate_weight(const CaseTag& tag, const CurvatureProfile& profile,
                                       double c);

// Exact identity linking the two constant-k1 system equations to the reduced
// first-order condition f'(5 k1² f + 2 f'') for arbitrary smooth f; returns
// the sup of the residual, which must vanish to rounding.
double reduction_identity_check(const WeightFn& f, double k1_const,
                                const std::vector<double>& grid);

// Substitute the regime's candidate weight into the raw system rows and check
// proportionality to the reduced curvature-only systems.
struct FactorReport {
    double row1_mismatch = 0.0;   // sup relative mismatch after scaling row 1
    double row2_mismatch = 0.0;   // sup relative mismatch after scaling row 2
    double third_row_sup = 0.0;   // the third row must cancel identically
};
FactorReport substitution_equivalence(const CaseTag& tag, const CurvatureProfile& profile,
                                      const std::vector<double>& grid);

// Integrate the varying-k1 / constant-k2 curvature relation
//   k1'' = (3 k1'^2 - 4 k1^4 - 4 k1^2 k2^2) / (2 k1)
// as an IVP and monitor the companion third-order equation along the way.
struct CurvatureIvp {
    double k1_0 = 1.0;
    double k1p_0 = 0.0;
    double k2_const = 0.0;
};
struct IntegratedSystem {
    CurvatureProfile profile;
    ResidualReport monitor;  // eq_residuals[0] holds the companion residual
};
IntegratedSystem curvature_system_integrate(const CaseTag& tag, const CurvatureIvp& init,
                                            double s0, double s1, double h);

// Constant-curvature analysis: the third system row forces f' = 0, and the
// second then forces k1² + k2² = c, which no positive constants satisfy for
// c <= 0.
Certificate nonexistence_certificate(double k1_const, double k2_const, double c);

// Orchestrator: regime detection, candidate weights, residual evaluation for
// the supplied weight, and diagnostics from the reduction checks.
struct ClassifyOutcome {
    CaseTag tag;
    Certificate certificate;
    ResidualReport report;
};
ClassifyOutcome classify_report(const CurvatureProfile& profile, const WeightFn& f, double c,
                                double tol = 1e-6);

}  // namespace bifh
