// Command-line front end: evaluate bi-f-harmonic residuals for curvature
// profiles and chart surfaces, and run the built-in verification suites.
//
// Exit codes: 0 satisfied / all checks pass, 3 violated, 4 nonexistence
// certificate, 10 configuration error, 11 numerical error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bifh/classify.hpp"
#include "bifh/errors.hpp"
#include "bifh/hypersurface.hpp"
#include "bifh/tension.hpp"

using nlohmann::ordered_json;

namespace {

constexpr int kExitSatisfied = 0;
constexpr int kExitViolated = 3;
constexpr int kExitNonexistence = 4;
constexpr int kExitConfig = 10;
constexpr int kExitNumerical = 11;

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int read_threads_env() {
    const char* raw = std::getenv("BIFH_THREADS");
    if (!raw) return 1;
    try {
        const int n = std::stoi(raw);
        if (n < 1) throw bifh::ConfigError("BIFH_THREADS must be a positive integer");
        return n;
    } catch (const bifh::ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw bifh::ConfigError("BIFH_THREADS must be a positive integer");
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw bifh::ConfigError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw bifh::ConfigError("failed writing output file '" + path + "'");
}

void write_report(const std::string& path, ordered_json j) {
    j["timestamp"] = timestamp_utc();
    write_text(path, j.dump(2) + "\n");
}

double space_c_of(const std::string& space, bool space_set, double c, bool c_set) {
    if (space_set) {
        const double derived = space == "euclidean" ? 0.0 : space == "sphere" ? 1.0 : -1.0;
        if (c_set && c != derived)
            throw bifh::ConfigError("--c conflicts with --space " + space);
        return derived;
    }
    return c_set ? c : 0.0;
}

// ---------------------------------------------------------------------------
// curve
// ---------------------------------------------------------------------------

// A curvature flag parses to the zero profile when its expression is
// identically zero on the evaluation interval (checked on the 3-jet).
bifh::ScalarProfile parse_curvature(const std::string& text, double s0, double s1) {
    if (text.empty()) return bifh::ScalarProfile::zero();
    const bifh::ExprAst ast = bifh::parse(text);
    bool all_zero = true;
    for (int i = 0; i < 7 && all_zero; ++i) {
        const double s = s0 + (s1 - s0) * i / 6.0;
        const bifh::Jet3 j = bifh::eval_jet(ast, s);
        all_zero = j.v0 == 0.0 && j.v1 == 0.0 && j.v2 == 0.0 && j.v3 == 0.0;
    }
    return all_zero ? bifh::ScalarProfile::zero() : bifh::ScalarProfile::expression(ast);
}

struct CurveOptions {
    std::string space;
    bool space_set = false;
    double c = 0.0;
    bool c_set = false;
    std::string k1, k2, k3;
    std::string f = "1";
    std::vector<double> range = {0.0, 1.0};
    int n = 128;
    double tol = 1e-6;
    std::string json_path = "bifh_curve.json";
    std::string csv_path = "bifh_curve.csv";
};

int run_curve(const CurveOptions& opt, int threads) {
    if (opt.n < 16) throw bifh::ConfigError("--n must be at least 16");
    if (!(opt.tol > 0.0)) throw bifh::ConfigError("--tol must be positive");
    if (opt.range.size() != 2 || !(opt.range[1] > opt.range[0]))
        throw bifh::ConfigError("--range needs s0 < s1");
    const double c = space_c_of(opt.space, opt.space_set, opt.c, opt.c_set);

    bifh::CurvatureProfile profile;
    profile.s0 = opt.range[0];
    profile.s1 = opt.range[1];
    try {
        profile.k1 = parse_curvature(opt.k1, profile.s0, profile.s1);
        profile.k2 = parse_curvature(opt.k2, profile.s0, profile.s1);
        profile.k3 = parse_curvature(opt.k3, profile.s0, profile.s1);
    } catch (const bifh::SyntaxError& e) {
        throw bifh::ConfigError(std::string("bad curvature expression: ") + e.what());
    } catch (const bifh::UnknownIdentifier& e) {
        throw bifh::ConfigError(std::string("bad curvature expression: ") + e.what());
    }
    bifh::WeightFn f;
    try {
        f = bifh::WeightFn::from_expression(opt.f);
    } catch (const bifh::Error& e) {
        throw bifh::ConfigError(std::string("bad weight expression: ") + e.what());
    }

    auto outcome = bifh::classify_report(profile, f, c, opt.tol);
    // re-evaluate on the requested grid size for the residual series
    auto report = bifh::system_residual(profile, f, c, opt.tol, opt.n);

    ordered_json j;
    j["schema"] = "bifh/1";
    j["spec"] = {{"command", "curve"},
                 {"c", c},
                 {"k1", opt.k1},
                 {"k2", opt.k2},
                 {"k3", opt.k3},
                 {"f", opt.f},
                 {"range", opt.range},
                 {"n", opt.n},
                 {"tol", opt.tol},
                 {"threads", threads}};
    j["case"] = bifh::to_string(outcome.tag.value);
    j["verdict"] = bifh::to_string(report.verdict);
    j["sup_norms"] = report.sup_norms;
    nlohmann::json cert;
    bifh::to_json(cert, outcome.certificate);
    j["certificate"] = cert;
    std::vector<std::string> diagnostics = outcome.report.diagnostics;
    j["diagnostics"] = diagnostics;
    write_report(opt.json_path, j);

    std::string csv = "s,eq1,eq2,eq3,eq4\n";
    char line[160];
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", report.grid[i],
                      report.eq_residuals[0][i], report.eq_residuals[1][i],
                      report.eq_residuals[2][i], report.eq_residuals[3][i]);
        csv += line;
    }
    write_text(opt.csv_path, csv);

    std::cout << "case " << bifh::to_string(outcome.tag.value) << ", verdict "
              << bifh::to_string(report.verdict) << ", certificate "
              << bifh::to_string(outcome.certificate.kind) << "\n";
    if (outcome.certificate.kind == bifh::Certificate::Kind::Nonexistence)
        return kExitNonexistence;
    return report.verdict == bifh::Verdict::Satisfied ? kExitSatisfied : kExitViolated;
}

// ---------------------------------------------------------------------------
// surface
// ---------------------------------------------------------------------------

bifh::SurfaceChart load_chart(const std::string& path, int scale = 1) {
    std::ifstream in(path);
    if (!in) throw bifh::ConfigError("cannot open chart file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw bifh::ConfigError("chart file '" + path + "' is not valid JSON: " + e.what());
    }
    try {
        const auto comps = j.at("components").get<std::vector<std::string>>();
        const auto domain = j.at("domain").get<std::vector<std::vector<double>>>();
        const auto grid = j.at("grid").get<std::vector<int>>();
        if (domain.size() != 2 || domain[0].size() != 2 || domain[1].size() != 2)
            throw bifh::ConfigError("chart domain must be [[u0,u1],[v0,v1]]");
        if (grid.size() != 2) throw bifh::ConfigError("chart grid must be [nu,nv]");
        auto chart = bifh::SurfaceChart::from_expressions(
            comps, domain[0][0], domain[0][1], domain[1][0], domain[1][1],
            (grid[0] - 1) * scale + 1, (grid[1] - 1) * scale + 1);
        if (j.contains("orientation")) chart.orientation = j["orientation"].get<double>();
        return chart;
    } catch (const bifh::Error&) {
        throw;
    } catch (const std::exception& e) {
        throw bifh::ConfigError("chart file '" + path + "': " + e.what());
    }
}

struct SurfaceOptions {
    std::string chart_path;
    std::string f = "1";
    std::string space;
    bool space_set = false;
    std::string mode = "general";
    double einstein_r = 0.0;
    double tol = 1e-6;
    bool oracle = false;
    std::string json_path = "bifh_surface.json";
    std::string csv_path = "bifh_surface.csv";
};

bifh::SurfaceMode parse_mode(const std::string& mode) {
    if (mode == "general") return bifh::SurfaceMode::General;
    if (mode == "cmc") return bifh::SurfaceMode::Cmc;
    if (mode == "ricci-flat") return bifh::SurfaceMode::RicciFlat;
    if (mode == "einstein") return bifh::SurfaceMode::Einstein;
    if (mode == "constant-c") return bifh::SurfaceMode::ConstantC;
    throw bifh::ConfigError("unknown --mode '" + mode + "'");
}

// sup gaps between the direct oracle and the closed-form residual pair
std::pair<double, double> oracle_gap(const bifh::HypersurfaceGeometry& geom,
                                     const bifh::ScalarGrid& f, const bifh::SpaceForm& space) {
    auto tan = bifh::residual_tangential(geom, f, space);
    auto nor = bifh::residual_normal(geom, f, space);
    auto split = bifh::split_ambient_field(
        geom, bifh::direct_bi_f_tension_oracle(geom, f, space, /*richardson=*/true));
    const int margin = std::max({tan.margin, nor.margin, split.normal.margin});
    double sup_t = 0.0, sup_n = 0.0;
    for (std::size_t i = 0; i < tan.nu; ++i)
        for (std::size_t j = 0; j < tan.nv; ++j) {
            const auto m = static_cast<std::size_t>(margin);
            if (i < m || i + m >= tan.nu || j < m || j + m >= tan.nv) continue;
            const std::size_t n = tan.idx(i, j);
            const double d0 = split.tangential.v[n][0] - tan.v[n][0];
            const double d1 = split.tangential.v[n][1] - tan.v[n][1];
            const double q = geom.g11.v[n] * d0 * d0 + 2.0 * geom.g12.v[n] * d0 * d1 +
                             geom.g22.v[n] * d1 * d1;
            sup_t = std::max(sup_t, std::sqrt(std::max(q, 0.0)));
            sup_n = std::max(sup_n, std::abs(split.normal.v[n] - nor.v[n]));
        }
    return {sup_t, sup_n};
}

// order under h-halving; gaps at roundoff scale count as converged
double halving_order(double coarse, double fine) {
    if (fine < 1e-9) return 4.0;
    return std::log2(coarse / fine);
}

int run_surface(const SurfaceOptions& opt, int threads) {
    if (!(opt.tol > 0.0)) throw bifh::ConfigError("--tol must be positive");
    const bifh::SpaceForm space = !opt.space_set || opt.space == "euclidean"
                                      ? bifh::SpaceForm::euclidean(3)
                                  : opt.space == "sphere" ? bifh::SpaceForm::sphere(3)
                                                          : bifh::SpaceForm::hyperbolic(3);
    auto chart = load_chart(opt.chart_path);
    auto geom = bifh::chart_geometry(chart, space);

    bifh::ExprAst f_ast;
    try {
        f_ast = bifh::parse(opt.f, bifh::chart_variables());
    } catch (const bifh::Error& e) {
        throw bifh::ConfigError(std::string("bad weight expression: ") + e.what());
    }
    auto f = bifh::sample_expression(geom, f_ast, chart);
    auto residual = bifh::corollary_residual(geom, f, parse_mode(opt.mode), opt.einstein_r);

    double h_min = 0.0, h_max = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < geom.H.nu; ++i)
        for (std::size_t j = 0; j < geom.H.nv; ++j) {
            if (!geom.shape.valid(i, j)) continue;
            const double H = geom.H.at(i, j);
            h_min = first ? H : std::min(h_min, H);
            h_max = first ? H : std::max(h_max, H);
            first = false;
        }

    ordered_json j;
    j["schema"] = "bifh/1";
    j["spec"] = {{"command", "surface"},
                 {"chart", opt.chart_path},
                 {"f", opt.f},
                 {"space", opt.space_set ? opt.space : "euclidean"},
                 {"c", space.curvature()},
                 {"mode", opt.mode},
                 {"einstein_r", opt.einstein_r},
                 {"tol", opt.tol},
                 {"oracle", opt.oracle},
                 {"threads", threads}};
    const bool ok = residual.sup_tangential <= opt.tol && residual.sup_normal <= opt.tol;
    j["verdict"] = ok ? "satisfied" : "violated";
    j["sup_norms"] = ordered_json{{"tangential", residual.sup_tangential},
                                  {"normal", residual.sup_normal}};
    // mean curvature is reported signed, per the chart orientation
    j["mean_curvature"] = ordered_json{{"min", h_min}, {"max", h_max}};
    j["diagnostics"] = std::vector<std::string>{};

    if (opt.oracle) {
        auto fine_chart = load_chart(opt.chart_path, 2);
        auto fine_geom = bifh::chart_geometry(fine_chart, space);
        auto fine_f = bifh::sample_expression(fine_geom, f_ast, fine_chart);
        auto [t1, n1] = oracle_gap(geom, f, space);
        auto [t2, n2] = oracle_gap(fine_geom, fine_f, space);
        const double order_t = halving_order(t1, t2);
        const double order_n = halving_order(n1, n2);
        j["oracle"] = {{"gap_tangential", {t1, t2}},
                       {"gap_normal", {n1, n2}},
                       {"order_tangential", order_t},
                       {"order_normal", order_n},
                       {"pass", order_t >= 1.8 && order_n >= 1.8}};
    }
    write_report(opt.json_path, j);

    std::string csv = "u,v,res_u,res_v,res_tangential_norm,res_normal\n";
    const int margin = std::max(residual.tangential.margin, residual.normal.margin);
    char line[200];
    for (std::size_t i = 0; i < residual.tangential.nu; ++i)
        for (std::size_t jx = 0; jx < residual.tangential.nv; ++jx) {
            const auto m = static_cast<std::size_t>(margin);
            if (i < m || i + m >= residual.tangential.nu || jx < m ||
                jx + m >= residual.tangential.nv)
                continue;
            const std::size_t n = residual.tangential.idx(i, jx);
            const auto& t = residual.tangential.v[n];
            const double q = geom.g11.v[n] * t[0] * t[0] + 2.0 * geom.g12.v[n] * t[0] * t[1] +
                             geom.g22.v[n] * t[1] * t[1];
            std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          chart.u_at(i), chart.v_at(jx), t[0], t[1],
                          std::sqrt(std::max(q, 0.0)), residual.normal.v[n]);
            csv += line;
        }
    write_text(opt.csv_path, csv);

    std::cout << "verdict " << (ok ? "satisfied" : "violated") << ", sup tangential "
              << residual.sup_tangential << ", sup normal " << residual.sup_normal << "\n";
    return ok ? kExitSatisfied : kExitViolated;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct SuiteRow {
    std::string name;
    bool pass;
    double value;
};

bifh::CurvatureProfile expr_profile(const char* k1, const char* k2) {
    bifh::CurvatureProfile p;
    if (k1) p.k1 = bifh::ScalarProfile::expression(bifh::parse(k1));
    if (k2) p.k2 = bifh::ScalarProfile::expression(bifh::parse(k2));
    return p;
}

std::vector<double> uniform_grid(double a, double b, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return g;
}

// random expression in s for the identity sweep: positive smooth combinations
bifh::WeightFn random_weight(std::mt19937& rng) {
    std::uniform_real_distribution<double> coef(0.2, 1.5);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.6f + %.6f*sin(%.6f*s) + %.6f*exp(%.6f*s)", 2.0 + coef(rng),
                  coef(rng) * 0.5, coef(rng), coef(rng) * 0.3, coef(rng) * 0.5);
    return bifh::WeightFn::from_expression(buf);
}

std::vector<SuiteRow> verify_curves() {
    std::vector<SuiteRow> rows;
    auto grid = uniform_grid(0.0, 1.0, 33);

    double red = 0.0;
    std::mt19937 rng(7);
    for (int i = 0; i < 20; ++i)
        red = std::max(red, bifh::reduction_identity_check(random_weight(rng), 1.0 + 0.1 * i, grid));
    rows.push_back({"reduction-identity", red < 1e-9, red});

    bifh::CaseTag tag4{bifh::CaseTag::Case::IV, 0.0};
    auto r4 = bifh::substitution_equivalence(tag4, expr_profile("1", "1+0.1*cos(s)"), grid);
    const double m4 = std::max({r4.row1_mismatch, r4.row2_mismatch, r4.third_row_sup});
    rows.push_back({"substitution-case-iv", m4 < 1e-9, m4});

    bifh::CaseTag tag6{bifh::CaseTag::Case::VI, 0.0};
    auto r6 = bifh::substitution_equivalence(tag6, expr_profile("1+0.1*sin(s)", "1"), grid);
    const double m6 = std::max({r6.row1_mismatch, r6.row2_mismatch, r6.third_row_sup});
    rows.push_back({"substitution-case-vi", m6 < 1e-9, m6});

    bifh::CaseTag tag7{bifh::CaseTag::Case::VII, 0.0};
    auto r7 = bifh::substitution_equivalence(
        tag7, expr_profile("1.2+0.2*sin(s)", "0.9+0.15*cos(2*s)"), grid);
    rows.push_back({"substitution-case-vii", r7.third_row_sup < 1e-9, r7.third_row_sup});

    // energies sanity: unit circle, f = 1 -> E = E2 = Ef = E2f = Ef2 = L/2
    {
        bifh::CurvatureProfile circle;
        circle.k1 = bifh::ScalarProfile::constant(1.0);
        circle.s0 = 0.0;
        circle.s1 = 3.0;
        const auto space = bifh::SpaceForm::euclidean(2);
        bifh::AmbientVector p0 = bifh::AmbientVector::Zero(2);
        std::vector<bifh::AmbientVector> frame0 = {bifh::AmbientVector::Zero(2),
                                                   bifh::AmbientVector::Zero(2)};
        frame0[0][0] = 1.0;
        frame0[1][1] = 1.0;
        auto samples = bifh::reconstruct_curve(space, circle, p0, frame0, 1e-3);
        auto e = bifh::energies(space, samples, bifh::WeightFn::one());
        // all five coincide for a unit-speed unit circle with f = 1; the
        // common value is half the integrated interior arclength
        const double L = samples.s.back() - samples.s.front();
        const double err = std::max({std::abs(e.E2 - e.E), std::abs(e.Ef - e.E),
                                     std::abs(e.E2f - e.E), std::abs(e.Ef2 - e.E)});
        const bool scale_ok = std::abs(e.E - L / 2) < 0.01;
        rows.push_back({"energies-unit-circle", err < 1e-6 && scale_ok, err});
    }
    return rows;
}

std::vector<SuiteRow> verify_hypersurface() {
    std::vector<SuiteRow> rows;
    auto run = [](int n) {
        auto chart = bifh::SurfaceChart::from_expressions({"u", "v", "0.1*(u^2-v^2)"}, 0.0, 1.0,
                                                          0.0, 1.0, n, n);
        auto geom = bifh::chart_geometry(chart, bifh::SpaceForm::euclidean(3));
        auto f = bifh::sample_field(
            geom, [](const bifh::AmbientVector& p, double, double) { return 1.0 + 0.1 * p[0]; },
            chart);
        return bifh::identity_suite(geom, f);
    };
    const auto r1 = run(33);
    const auto r2 = run(65);
    auto order = [](double a, double b) { return b < 1e-10 ? 4.0 : std::log2(a / b); };
    const double oa = order(r1.gradf_tangential, r2.gradf_tangential);
    const double ob = order(r1.xi_normal, r2.xi_normal);
    const double oc = order(r1.xi_tangential, r2.xi_tangential);
    const double od = order(r1.codazzi, r2.codazzi);
    rows.push_back({"identity-gradf-laplacian-order", oa >= 1.8, oa});
    rows.push_back({"identity-normal-laplacian-order", ob >= 1.8, ob});
    rows.push_back({"identity-tangential-laplacian-order", oc >= 1.8, oc});
    rows.push_back({"identity-codazzi-order", od >= 1.8, od});
    return rows;
}

int run_verify(const std::string& suite, int threads) {
    std::vector<SuiteRow> rows;
    if (suite == "curves" || suite == "all") {
        auto r = verify_curves();
        rows.insert(rows.end(), r.begin(), r.end());
    }
    if (suite == "hypersurface" || suite == "all") {
        auto r = verify_hypersurface();
        rows.insert(rows.end(), r.begin(), r.end());
    }
    if (rows.empty()) throw bifh::ConfigError("unknown verify suite '" + suite + "'");
    (void)threads;
    bool all = true;
    for (const auto& row : rows) {
        std::printf("%-38s %s  %.3e\n", row.name.c_str(), row.pass ? "pass" : "FAIL", row.value);
        all = all && row.pass;
    }
    std::printf("%s\n", all ? "all checks pass" : "some checks FAILED");
    return all ? kExitSatisfied : kExitViolated;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bi-f-harmonic curve and hypersurface residual toolkit"};
    app.require_subcommand(1);

    CurveOptions curve;
    auto* cmd_curve = app.add_subcommand("curve", "evaluate the curve system for a profile");
    cmd_curve->add_option("--space", curve.space, "ambient model")
        ->check(CLI::IsMember({"euclidean", "sphere", "hyperbolic"}));
    cmd_curve->add_option("--c", curve.c, "ambient sectional curvature");
    cmd_curve->add_option("--k1", curve.k1, "first curvature expression in s");
    cmd_curve->add_option("--k2", curve.k2, "second curvature expression in s");
    cmd_curve->add_option("--k3", curve.k3, "third curvature expression in s");
    cmd_curve->add_option("--f", curve.f, "weight expression in s (and k1,k2,k3)");
    cmd_curve->add_option("--range", curve.range, "arclength interval s0 s1")->expected(2);
    cmd_curve->add_option("--n", curve.n, "grid size");
    cmd_curve->add_option("--tol", curve.tol, "verdict tolerance");
    cmd_curve->add_option("--json", curve.json_path, "JSON report path");
    cmd_curve->add_option("--csv", curve.csv_path, "CSV residual series path");

    SurfaceOptions surface;
    auto* cmd_surface = app.add_subcommand("surface", "evaluate the hypersurface residuals");
    cmd_surface->add_option("--chart", surface.chart_path, "chart spec JSON file")->required();
    cmd_surface->add_option("--f", surface.f, "weight expression in u, v");
    cmd_surface->add_option("--space", surface.space, "ambient model")
        ->check(CLI::IsMember({"euclidean", "sphere", "hyperbolic"}));
    cmd_surface->add_option("--mode", surface.mode,
                            "general|cmc|ricci-flat|einstein|constant-c");
    cmd_surface->add_option("--einstein-r", surface.einstein_r, "scalar curvature for einstein mode");
    cmd_surface->add_option("--tol", surface.tol, "verdict tolerance");
    cmd_surface->add_flag("--oracle", surface.oracle, "add oracle convergence study");
    cmd_surface->add_option("--json", surface.json_path, "JSON report path");
    cmd_surface->add_option("--csv", surface.csv_path, "CSV per-node residual path");

    std::string suite = "all";
    auto* cmd_verify = app.add_subcommand("verify", "run the built-in identity suites");
    cmd_verify->add_option("suite", suite, "curves|hypersurface|all")
        ->check(CLI::IsMember({"curves", "hypersurface", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    }

    try {
        const int threads = read_threads_env();
        if (cmd_curve->parsed()) {
            curve.space_set = cmd_curve->count("--space") > 0;
            curve.c_set = cmd_curve->count("--c") > 0;
            return run_curve(curve, threads);
        }
        if (cmd_surface->parsed()) {
            surface.space_set = cmd_surface->count("--space") > 0;
            return run_surface(surface, threads);
        }
        return run_verify(suite, threads);
    } catch (const bifh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const bifh::Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
