#include <doctest.h>

#include "folia/foliation.hpp"
#include "folia/models.hpp"
#include "helpers.hpp"

using namespace folia;

TEST_CASE("flat split: every predicate vanishes") {
    Scene s = flat_c2();
    PointEval pe = point_eval(s.chart, s.dist, {0.4, -0.7, 0.2, 0.9});
    FoliationPointResiduals r = foliation_residuals(pe);
    CHECK(r.frobenius < 1e-12);
    CHECK(r.frobenius_e < 1e-12);
    CHECK(r.theorem1 < 1e-12);
    CHECK(r.totally_geodesic < 1e-12);
    CHECK(r.holomorphic < 1e-12);
    CHECK(r.quasi_holomorphic < 1e-12);
    CHECK(r.conformal < 1e-12);
    CHECK(r.star_identity < 1e-12);
    CHECK(r.corollary1 < 1e-12);
    CHECK(r.lemma < 1e-12);
    CHECK(r.dtheta < 1e-12);
    CHECK(r.nijenhuis_i < 1e-12);
    CHECK(r.ker_nabla_i < 1e-12);
    CHECK(r.d_omega_i < 1e-12);
    CHECK(std::abs(r.alpha_v) < 1e-12);
}

TEST_CASE("punctured model satisfies the radial-foliation identities") {
    Scene s = punctured_c2_radial();
    for (const Vec4d& p : sample_plan(s, 30, 16)) {
        CAPTURE(p[0]);
        PointEval pe = point_eval(s.chart, s.dist, p);
        FoliationPointResiduals r = foliation_residuals(pe);
        CHECK(r.frobenius < 1e-10);
        CHECK(r.totally_geodesic < 1e-9);
        CHECK(r.holomorphic < 1e-9);
        CHECK(r.quasi_holomorphic < 1e-9);
        CHECK(r.conformal < 1e-9);
        CHECK(r.star_identity < 1e-8);
        CHECK(r.corollary1 < 1e-8);
        CHECK(r.theorem1 < 1e-9);
        CHECK(r.lemma < 1e-9);
        CHECK(r.dtheta_split < 1e-8);
        CHECK(r.ker_nabla_i < 1e-8);
    }
    // conformal constant: L_xi g = 2 g for the Euler section, theta(xi) = 2
    PointEval pe = point_eval(s.chart, s.dist, {1, 0, 0, 0});
    ConformalFit cf = conformal_fit(pe);
    CHECK(cf.alpha_v == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(cf.theta_v == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(cf.alpha_jv) < 1e-9);
    CHECK(std::abs(cf.theta_jv) < 1e-9);
}

TEST_CASE("calabi model: star identity, corollary 1 and the lemma") {
    Scene s = calabi_type(1.0);
    for (const Vec4d& p : sample_plan(s, 30, 17)) {
        CAPTURE(p[2]);
        PointEval pe = point_eval(s.chart, s.dist, p);
        FoliationPointResiduals r = foliation_residuals(pe);
        CHECK(r.frobenius < 1e-9);
        CHECK(r.totally_geodesic < 1e-8);
        CHECK(r.holomorphic < 1e-8);
        CHECK(r.conformal < 1e-8);
        CHECK(r.star_identity < 1e-8);
        CHECK(r.corollary1 < 1e-8);
        CHECK(r.lemma < 1e-9);
        CHECK(r.dtheta_split < 1e-8);
    }
}

TEST_CASE("skewed model fails the predicates at the probe point") {
    Scene s = skewed_flat(1.0);
    PointEval pe = point_eval(s.chart, s.dist, {0, 0, 0, 1});
    FoliationPointResiduals r = foliation_residuals(pe);
    CHECK(r.nijenhuis_i > 0.01);
    CHECK(r.conformal > 0.01);
    CHECK(std::max(r.totally_geodesic, r.holomorphic) > 0.01);
}

TEST_CASE("theorem audits find no counterexamples across the zoo") {
    for (const char* name :
         {"flat_c2", "punctured_c2_radial", "product_surfaces(1,0)",
          "calabi_type(1,flat)", "skewed_flat(1)"}) {
        CAPTURE(name);
        Scene s = builtin_scene(name);
        std::vector<Vec4d> pts = sample_plan(s, 40, 18);
        std::vector<FoliationPointResiduals> rs;
        for (const Vec4d& p : pts) rs.push_back(foliation_residuals(point_eval(s.chart, s.dist, p)));
        FoliationVerdict v = theorem_verdicts(rs, pts, 1e-6);
        for (const auto& a : v.audits) {
            CAPTURE(a.id);
            CHECK(!a.counterexample);
        }
        CHECK(!v.any_counterexample());
    }
}

TEST_CASE("skewed zoo member exercises the failing side consistently") {
    Scene s = skewed_flat(1.0);
    std::vector<Vec4d> pts = sample_plan(s, 40, 19);
    std::vector<FoliationPointResiduals> rs;
    for (const Vec4d& p : pts) rs.push_back(foliation_residuals(point_eval(s.chart, s.dist, p)));
    FoliationVerdict v = theorem_verdicts(rs, pts, 1e-6);
    // Theorem 2 must have at least one both-sides-fail point
    for (const auto& a : v.audits) {
        if (a.id != "thm2") continue;
        CHECK(!a.counterexample);
        CHECK(a.agreements > 0);
    }
}
