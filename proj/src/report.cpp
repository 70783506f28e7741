#include "bifh/report.hpp"

namespace bifh {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return "satisfied";
        case Verdict::Violated: return "violated";
        case Verdict::InconsistentCase: return "inconsistent-case";
    }
    return "violated";
}

std::string to_string(Certificate::Kind k) {
    switch (k) {
        case Certificate::Kind::Nonexistence: return "nonexistence";
        case Certificate::Kind::Candidate: return "candidate";
        case Certificate::Kind::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

void to_json(nlohmann::json& j, const ResidualReport& r) {
    j = nlohmann::json{{"grid", r.grid},
                       {"eq_residuals", r.eq_residuals},
                       {"sup_norms", r.sup_norms},
                       {"tol", r.tol},
                       {"verdict", to_string(r.verdict)},
                       {"diagnostics", r.diagnostics}};
}

void to_json(nlohmann::json& j, const Certificate& c) {
    j = nlohmann::json{{"kind", to_string(c.kind)},
                       {"forced_relations", c.forced_relations},
                       {"case", c.case_name},
                       {"diagnostics", c.diagnostics}};
}

}  // namespace bifh
