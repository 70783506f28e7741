#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bifh/curve.hpp"

using namespace bifh;
using std::numbers::pi;

namespace {

AmbientVector vec(std::initializer_list<double> v) {
    AmbientVector out(static_cast<long>(v.size()));
    long i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

// analytically arclength-parametrized samples
CurveSamples sample_curve(const SpaceForm& space, double s0, double s1, int n,
                          const std::function<AmbientVector(double)>& gamma) {
    CurveSamples out;
    out.space = space;
    for (int i = 0; i < n; ++i) {
        double s = s0 + (s1 - s0) * i / (n - 1);
        out.s.push_back(s);
        out.points.push_back(gamma(s));
    }
    return out;
}

}  // namespace

TEST_CASE("resample_arclength: circle arc at unit speed") {
    // three quarters of the unit circle, deliberately non-uniform in angle
    auto E2 = SpaceForm::euclidean(2);
    std::vector<AmbientVector> raw;
    for (int i = 0; i < 100; ++i) {
        double u = static_cast<double>(i) / 99.0;
        double theta = 1.5 * pi * (u + 0.08 * u * (1.0 - u));
        raw.push_back(vec({std::cos(theta), std::sin(theta)}));
    }
    CurveSamples out = resample_arclength(raw, E2, 64);
    REQUIRE(out.size() == 64);
    const double h = out.h();
    CHECK(h == doctest::Approx(1.5 * pi / 63.0).epsilon(1e-8));
    for (std::size_t i = 1; i < out.size(); ++i) {
        double chord = (out.points[i] - out.points[i - 1]).norm();
        double arc = 2.0 * std::asin(chord / 2.0);  // chord back to arclength
        CHECK(std::abs(arc - h) < 1e-6 * h);
    }
}

TEST_CASE("resample_arclength: quadratically sampled segment becomes uniform") {
    auto E3 = SpaceForm::euclidean(3);
    std::vector<AmbientVector> raw;
    for (int i = 0; i < 40; ++i) {
        double t = static_cast<double>(i) / 39.0;
        raw.push_back(vec({t * t, 0, 0}));
    }
    CurveSamples out = resample_arclength(raw, E3, 16);
    const double h = out.h();
    CHECK(h == doctest::Approx(1.0 / 15.0));
    for (std::size_t i = 1; i < out.size(); ++i)
        CHECK((out.points[i] - out.points[i - 1]).norm() == doctest::Approx(h).epsilon(1e-9));
}

TEST_CASE("resample_arclength: helix total length") {
    auto E3 = SpaceForm::euclidean(3);
    std::vector<AmbientVector> raw;
    for (int i = 0; i < 200; ++i) {
        double t = 2.0 * pi * i / 199.0;
        raw.push_back(vec({std::cos(t), std::sin(t), t}));
    }
    CurveSamples out = resample_arclength(raw, E3, 128);
    CHECK(std::abs(out.s.back() - 2.0 * pi * std::sqrt(2.0)) < 1e-6);
}

TEST_CASE("resample_arclength input validation") {
    auto E2 = SpaceForm::euclidean(2);
    std::vector<AmbientVector> few{vec({0, 0}), vec({1, 0}), vec({2, 0})};
    CHECK_THROWS_AS(resample_arclength(few, E2, 16), DegenerateInput);
    std::vector<AmbientVector> repeated{vec({0, 0}), vec({1, 0}), vec({1, 0}), vec({2, 0})};
    CHECK_THROWS_AS(resample_arclength(repeated, E2, 16), DegenerateInput);
}

TEST_CASE("covariant derivative of T on model curves") {
    const int n = 201;
    const double h = pi / (n - 1);

    SUBCASE("great circle on the sphere is a geodesic") {
        auto S2 = SpaceForm::sphere(2);
        auto samples = sample_curve(S2, 0.0, pi, n, [](double s) {
            return vec({std::cos(s), std::sin(s), 0.0});
        });
        std::vector<AmbientVector> T(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            T[i] = vec({-std::sin(samples.s[i]), std::cos(samples.s[i]), 0.0});
        auto D = covariant_derivative_along(S2, samples, T);
        for (std::size_t i = covariant_margin; i + covariant_margin < samples.size(); ++i)
            CHECK(D[i].norm() < 10.0 * h * h * h * h);
    }

    SUBCASE("plane unit circle has curvature vector toward the center") {
        auto E2 = SpaceForm::euclidean(2);
        auto samples = sample_curve(E2, 0.0, pi, n, [](double s) {
            return vec({std::cos(s), std::sin(s)});
        });
        std::vector<AmbientVector> T(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            T[i] = vec({-std::sin(samples.s[i]), std::cos(samples.s[i])});
        auto D = covariant_derivative_along(E2, samples, T);
        for (std::size_t i = covariant_margin; i + covariant_margin < samples.size(); ++i) {
            AmbientVector inward = -samples.points[i];
            CHECK((D[i] - inward).norm() < 10.0 * h * h * h * h);
            CHECK(D[i].norm() == doctest::Approx(1.0).epsilon(10.0 * h * h * h * h));
        }
    }

    SUBCASE("straight line is flat") {
        auto E3 = SpaceForm::euclidean(3);
        auto samples = sample_curve(E3, 0.0, 1.0, 41, [](double s) -> AmbientVector {
            return vec({s, 2.0 * s, -s}) / std::sqrt(6.0);
        });
        std::vector<AmbientVector> T(samples.size(),
                                     vec({1.0, 2.0, -1.0}) / std::sqrt(6.0));
        auto D = covariant_derivative_along(E3, samples, T);
        for (std::size_t i = covariant_margin; i + covariant_margin < samples.size(); ++i)
            CHECK(D[i].norm() < 1e-12);
    }
}

TEST_CASE("covariant derivative converges at 4th order") {
    auto E2 = SpaceForm::euclidean(2);
    auto worst_error = [&](int n) {
        auto samples = sample_curve(E2, 0.0, pi, n, [](double s) {
            return vec({std::cos(s), std::sin(s)});
        });
        std::vector<AmbientVector> T(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            T[i] = vec({-std::sin(samples.s[i]), std::cos(samples.s[i])});
        auto D = covariant_derivative_along(E2, samples, T);
        double worst = 0.0;
        for (std::size_t i = covariant_margin; i + covariant_margin < samples.size(); ++i)
            worst = std::max(worst, (D[i] + samples.points[i]).norm());
        return worst;
    };
    double coarse = worst_error(101);
    double fine = worst_error(201);
    double order = std::log2(coarse / fine);
    CHECK(order >= 3.8);
}

TEST_CASE("frenet apparatus on model curves") {
    SUBCASE("unit circle in E^3: rank 2, k1 = 1") {
        auto E3 = SpaceForm::euclidean(3);
        auto samples = sample_curve(E3, 0.0, pi, 301, [](double s) {
            return vec({std::cos(s), std::sin(s), 0.0});
        });
        auto app = frenet_apparatus(E3, samples);
        CHECK(app.rank == 2);
        for (std::size_t i = app.margin; i + app.margin < samples.size(); ++i) {
            CHECK(app.curvatures[i][0] == doctest::Approx(1.0).epsilon(1e-6));
            // orthonormal frame
            for (std::size_t a = 0; a < app.frames[i].size(); ++a)
                for (std::size_t b = 0; b <= a; ++b) {
                    double want = a == b ? 1.0 : 0.0;
                    CHECK(std::abs(app.frames[i][a].dot(app.frames[i][b]) - want) < 1e-8);
                }
        }
    }

    SUBCASE("unit-speed helix: k1 = k2 = 1/2") {
        auto E3 = SpaceForm::euclidean(3);
        auto samples = sample_curve(E3, 0.0, 4.0, 801, [](double s) {
            double t = s / std::sqrt(2.0);
            return vec({std::cos(t), std::sin(t), t});
        });
        auto app = frenet_apparatus(E3, samples);
        CHECK(app.rank == 3);
        for (std::size_t i = app.margin; i + app.margin < samples.size(); ++i) {
            CHECK(app.curvatures[i][0] == doctest::Approx(0.5).epsilon(1e-6));
            CHECK(app.curvatures[i][1] == doctest::Approx(0.5).epsilon(1e-6));
        }
    }

    SUBCASE("straight line: rank 1") {
        auto E3 = SpaceForm::euclidean(3);
        auto samples = sample_curve(E3, 0.0, 1.0, 41, [](double s) {
            return vec({s, 0.0, 0.0});
        });
        auto app = frenet_apparatus(E3, samples);
        CHECK(app.rank == 1);
        CHECK(app.degenerate_at.empty());
    }
}

TEST_CASE("reconstruct_curve closes the unit circle") {
    auto E2 = SpaceForm::euclidean(2);
    CurvatureProfile profile;
    profile.k1 = ScalarProfile::constant(1.0);
    profile.s0 = 0.0;
    profile.s1 = 2.0 * pi;
    auto samples = reconstruct_curve(E2, profile, vec({1, 0}),
                                     {vec({0, 1}), vec({-1, 0})}, 2.0 * pi / 1024.0);
    CHECK((samples.points.back() - vec({1, 0})).norm() < 1e-6);
}

TEST_CASE("round trip: helix profile through reconstruct and frenet") {
    auto E3 = SpaceForm::euclidean(3);
    CurvatureProfile profile;
    profile.k1 = ScalarProfile::constant(0.5);
    profile.k2 = ScalarProfile::constant(0.5);
    profile.s0 = 0.0;
    profile.s1 = 4.0;
    auto samples = reconstruct_curve(
        E3, profile, vec({0, 0, 0}),
        {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}, 1e-3);
    auto app = frenet_apparatus(E3, samples);
    REQUIRE(app.rank == 3);
    for (std::size_t i = app.margin; i + app.margin < samples.size(); ++i) {
        CHECK(std::abs(app.curvatures[i][0] - 0.5) < 1e-5);
        CHECK(std::abs(app.curvatures[i][1] - 0.5) < 1e-5);
    }
}

TEST_CASE("round trip on the 3-sphere with constant curvatures") {
    auto S3 = SpaceForm::sphere(3);
    CurvatureProfile profile;
    profile.k1 = ScalarProfile::constant(0.6);
    profile.k2 = ScalarProfile::constant(0.8);
    profile.s0 = 0.0;
    profile.s1 = 3.0;
    AmbientVector p0 = vec({1, 0, 0, 0});
    auto samples = reconstruct_curve(
        S3, profile, p0,
        {vec({0, 1, 0, 0}), vec({0, 0, 1, 0}), vec({0, 0, 0, 1})}, 1e-3);
    for (const auto& p : samples.points) CHECK(S3.on_manifold(p, 1e-8));
    auto app = frenet_apparatus(S3, samples);
    REQUIRE(app.rank == 3);
    for (std::size_t i = app.margin; i + app.margin < samples.size(); ++i) {
        CHECK(std::abs(app.curvatures[i][0] - 0.6) < 1e-5);
        CHECK(std::abs(app.curvatures[i][1] - 0.8) < 1e-5);
    }
}

TEST_CASE("round trip with a smooth non-constant profile") {
    auto E3 = SpaceForm::euclidean(3);
    CurvatureProfile profile;
    profile.k1 = ScalarProfile::expression(parse("1+0.3*sin(s)"));
    profile.k2 = ScalarProfile::constant(0.4);
    profile.s0 = 0.0;
    profile.s1 = 3.0;
    auto samples = reconstruct_curve(
        E3, profile, vec({0, 0, 0}),
        {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}, 1e-3);
    auto app = frenet_apparatus(E3, samples);
    REQUIRE(app.rank == 3);
    for (std::size_t i = app.margin; i + app.margin < samples.size(); ++i) {
        double want = 1.0 + 0.3 * std::sin(samples.s[i]);
        CHECK(std::abs(app.curvatures[i][0] - want) < 1e-5);
        CHECK(std::abs(app.curvatures[i][1] - 0.4) < 1e-5);
    }
}

TEST_CASE("reconstruct_curve validation") {
    auto E2 = SpaceForm::euclidean(2);
    CurvatureProfile profile;
    profile.k1 = ScalarProfile::constant(1.0);
    CHECK_THROWS_AS(
        reconstruct_curve(E2, profile, vec({0, 0}), {vec({1, 0}), vec({0, 1})}, 0.5),
        ConfigError);
    CHECK_THROWS_AS(
        reconstruct_curve(E2, profile, vec({0, 0}), {vec({1, 0}), vec({1, 0})}, 1e-3),
        DegenerateInput);
}
