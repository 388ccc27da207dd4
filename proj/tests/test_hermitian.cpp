#include <doctest.h>

#include "folia/models.hpp"
#include "helpers.hpp"

using namespace folia;

TEST_CASE("kahler form conventions") {
    Scene flat = flat_c2();
    Vec4d p{0.2, 0.4, -0.3, 0.8};
    MetricValue m = metric_at(flat.chart, p);
    JetMat J = complex_structure_jets_at(flat.chart, m, p);
    Form2Jet w = kahler_form(m, J);
    CHECK(w.val(0, 1) == doctest::Approx(1.0));
    CHECK(w.val(2, 3) == doctest::Approx(1.0));
    CHECK(std::abs(w.val(0, 2)) < 1e-14);

    // omega(X, JX) = |X|^2
    Vec4d x{0.5, -1.2, 0.7, 0.3};
    Vec4d jx{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) jx[i] += J[i][j].v * x[j];
    double wxy = 0.0, xx = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            wxy += w.val(i, j) * x[i] * jx[j];
            xx += m.gval[i][j] * x[i] * x[j];
        }
    CHECK(wxy == doctest::Approx(xx));
}

TEST_CASE("calabi kahler form matches the defining 2-form") {
    Scene cal = calabi_type(1.0);
    for (const Vec4d& p : sample_plan(cal, 15, 9)) {
        MetricValue m = metric_at(cal.chart, p);
        JetMat J = complex_structure_jets_at(cal.chart, m, p);
        Form2Jet w = kahler_form(m, J);
        CHECK(std::abs(w.val(0, 1) - p[2]) < 1e-10);          // z dx^dy
        CHECK(std::abs(w.val(1, 2) - (-p[0])) < 1e-10);       // x dz^dy
        CHECK(std::abs(w.val(2, 3) - 1.0) < 1e-10);           // dz^dt
    }
}

TEST_CASE("opposite structure on the flat split model") {
    Scene flat = flat_c2();
    PointEval pe = point_eval(flat.chart, flat.dist, {0.3, 0.1, 0.5, -0.2});
    // I = J on span{d1,d2}, -J on span{d3,d4}
    CHECK(pe.os.I[1][0].v == doctest::Approx(1.0));
    CHECK(pe.os.I[0][1].v == doctest::Approx(-1.0));
    CHECK(pe.os.I[3][2].v == doctest::Approx(-1.0));
    CHECK(pe.os.I[2][3].v == doctest::Approx(1.0));
}

TEST_CASE("Omega_I wedge identity across models") {
    for (const char* name :
         {"punctured_c2_radial", "calabi_type(1,flat)", "skewed_flat(0.7)"}) {
        CAPTURE(name);
        Scene s = builtin_scene(name);
        for (const Vec4d& p : sample_plan(s, 15, 10)) {
            PointEval pe = point_eval(s.chart, s.dist, p);
            double jj = wedge_2_2(pe.os.omega_j, pe.os.omega_j);
            double ii = wedge_2_2(pe.os.omega_i, pe.os.omega_i);
            CHECK(std::abs(jj + ii) < 1e-10 * (1.0 + std::abs(jj)));
            // I^2 = -Id and g(I.,I.) = g
            JCompatibility jc = j_compatibility(pe.m, pe.os.I);
            CHECK(jc.j_squared_residual < 1e-10);
            CHECK(jc.metric_residual < 1e-10);
        }
    }
}

TEST_CASE("omega_1 on the punctured model at a radial point") {
    Scene s = punctured_c2_radial();
    PointEval pe = point_eval(s.chart, s.dist, {1, 0, 0, 0});
    CHECK(pe.os.omega_1.val(0, 1) == doctest::Approx(1.0));
    CHECK(std::abs(pe.os.omega_1.val(2, 3)) < 1e-12);
    CHECK(pe.os.omega_2.val(2, 3) == doctest::Approx(1.0));
}

TEST_CASE("nijenhuis: J flat zero, I hermitian on punctured, skewed fails") {
    Scene flat = flat_c2();
    PointEval pf = point_eval(flat.chart, flat.dist, {0.1, 0.2, 0.3, 0.4});
    CHECK(nijenhuis_max(pf.J) < 1e-12);

    Scene punct = punctured_c2_radial();
    for (const Vec4d& p : sample_plan(punct, 20, 11)) {
        PointEval pe = point_eval(punct.chart, punct.dist, p);
        CHECK(nijenhuis_max(pe.os.I) < 1e-9);
    }

    Scene skew = skewed_flat(1.0);
    PointEval ps = point_eval(skew.chart, skew.dist, {0, 0, 0, 1});
    CHECK(nijenhuis_max(ps.os.I) > 0.01);
}

TEST_CASE("lee form on the punctured model") {
    Scene s = punctured_c2_radial();
    PointEval pe = point_eval(s.chart, s.dist, {1, 0, 0, 0});
    CHECK(pe.lee.theta[0].v == doctest::Approx(2.0));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(pe.lee.theta[i].v) < 1e-10);
    CHECK(pe.lee.wedge_residual < 1e-10);

    for (const Vec4d& p : sample_plan(s, 20, 12)) {
        PointEval q = point_eval(s.chart, s.dist, p);
        double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(q.lee.theta[i].v - 2.0 * p[i] / r2) < 1e-8);
        // theta lies in Delta^*
        CHECK(lee_e_component_residual(q.lee, q.frame) < 1e-8);
        // d omega_2 = theta ^ omega_2
        Form3Value dw2 = exterior_derivative_2form(q.os.omega_2);
        Vec4d th;
        for (int i = 0; i < 4; ++i) th[i] = q.lee.theta[i].v;
        Form3Value wedge = wedge_1_2(th, q.os.omega_2);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    CHECK(std::abs(dw2.c[i][j][k] - wedge.c[i][j][k]) < 1e-8);
    }
}

TEST_CASE("lee form jets agree with finite differences") {
    Scene s = punctured_c2_radial();
    Vec4d p{0.9, 0.3, -0.4, 0.2};
    PointEval pe = point_eval(s.chart, s.dist, p);
    double h = 1e-5;
    for (int comp = 0; comp < 4; ++comp) {
        for (int dir = 0; dir < 4; ++dir) {
            Vec4d a = p, b = p;
            a[dir] += h;
            b[dir] -= h;
            double fd = (point_eval(s.chart, s.dist, a).lee.theta[comp].v -
                         point_eval(s.chart, s.dist, b).lee.theta[comp].v) /
                        (2 * h);
            CHECK(std::abs(pe.lee.theta[comp].d[dir] - fd) < 1e-6);
        }
    }
}

TEST_CASE("calabi lee form: theta = dz/z and d theta = 0") {
    Scene s = calabi_type(1.0);
    for (const Vec4d& p : sample_plan(s, 20, 13)) {
        PointEval pe = point_eval(s.chart, s.dist, p);
        CHECK(std::abs(pe.lee.theta[2].v - 1.0 / p[2]) < 1e-8);
        Mat4d dt = exterior_derivative_1form(pe.lee.theta);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(std::abs(dt[i][j]) < 1e-7);
    }
}

TEST_CASE("kahler residual accepts kahler scenes and rejects broken ones") {
    Scene flat = flat_c2();
    PointEval pf = point_eval(flat.chart, flat.dist, {0.3, 0.3, 0.3, 0.3});
    KahlerResidual kf = kahler_residual_at(pf.m, pf.J, pf.gamma);
    CHECK(kf.nabla_j < 1e-12);
    CHECK(kf.d_omega_j < 1e-12);

    Scene cal = calabi_type(1.0);
    for (const Vec4d& p : sample_plan(cal, 15, 14)) {
        PointEval pe = point_eval(cal.chart, cal.dist, p);
        KahlerResidual kr = kahler_residual_at(pe.m, pe.J, pe.gamma);
        CHECK(kr.nabla_j < 1e-8);
        CHECK(kr.d_omega_j < 1e-8);
    }

    // alpha = 0 variant: drop the g_yt coupling and the x dz^dy form term
    Scene broken = calabi_type(1.0);
    std::vector<std::string> pn = {"C"};
    broken.chart.metric[sym_index(1, 3)] = parse("0", broken.chart.coords, pn);
    broken.chart.metric[sym_index(1, 1)] = parse("z", broken.chart.coords, pn);
    broken.chart.form[form2_pair_index(1, 2)] = parse("0", broken.chart.coords, pn);
    Vec4d q{0.4, 0.2, 1.2, 0.1};
    PointEval pb = point_eval(broken.chart, broken.dist, q);
    KahlerResidual kb = kahler_residual_at(pb.m, pb.J, pb.gamma);
    CHECK(kb.d_omega_j > 0.1);
}

TEST_CASE("gray condition (G2) for I on calabi and punctured models") {
    for (const char* name : {"calabi_type(1,flat)", "punctured_c2_radial"}) {
        CAPTURE(name);
        Scene s = builtin_scene(name);
        for (const Vec4d& p : sample_plan(s, 15, 15)) {
            PointEval pe = point_eval(s.chart, s.dist, p);
            Mat4d ival, jval;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    ival[i][j] = pe.os.I[i][j].v;
                    jval[i][j] = pe.J[i][j].v;
                }
            CHECK(gray_g2_residual(pe.curv, ival, jval, pe.frame, G2Variant::Symmetric) <
                  1e-7);
        }
    }
    // flat: both variants vanish trivially
    Scene flat = flat_c2();
    PointEval pf = point_eval(flat.chart, flat.dist, {0.5, 0.5, 0.5, 0.5});
    Mat4d ival, jval;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            ival[i][j] = pf.os.I[i][j].v;
            jval[i][j] = pf.J[i][j].v;
        }
    CHECK(gray_g2_residual(pf.curv, ival, jval, pf.frame, G2Variant::Printed) < 1e-12);
}
