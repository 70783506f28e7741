#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

namespace bifh {

enum class Verdict { Satisfied, Violated, InconsistentCase };

std::string to_string(Verdict v);

// Per-equation residuals of a four-equation curve system on an interior grid.
struct ResidualReport {
    std::vector<double> grid;
    std::array<std::vector<double>, 4> eq_residuals;
    std::array<double, 4> sup_norms{};
    double tol = 1e-6;
    Verdict verdict = Verdict::Violated;
    std::vector<std::string> diagnostics;
};

// Outcome of a classification run: either a family of candidate weights, a
// proof that none can exist, or neither.
struct Certificate {
    enum class Kind { Nonexistence, Candidate, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::vector<std::string> forced_relations;
    std::string case_name;
    std::vector<std::string> diagnostics;
};

std::string to_string(Certificate::Kind k);

void to_json(nlohmann::json& j, const ResidualReport& r);
void to_json(nlohmann::json& j, const Certificate& c);

}  // namespace bifh
