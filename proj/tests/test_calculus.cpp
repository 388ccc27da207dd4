#include <doctest.h>

#include "folia/models.hpp"
#include "helpers.hpp"

using namespace folia;

namespace {

Chart sphere_plane_chart() {
    // unit round sphere (coords u = polar, v = azimuth) times a flat plane
    Chart c;
    c.coords = {"u", "v", "x", "y"};
    std::vector<std::string> none;
    auto E = [&](const std::string& t) { return parse(t, c.coords, none); };
    c.metric = {E("1"), E("0"), E("0"), E("0"), E("sin(u)^2"),
                E("0"), E("0"), E("1"), E("0"), E("1")};
    c.jspec = JSpecKind::Standard;  // not used by the curvature checks here
    return c;
}

JetVec field_jets(const std::array<const char*, 4>& comps,
                  const std::array<std::string, 4>& coords, const Vec4d& p) {
    JetVec f;
    for (int i = 0; i < 4; ++i) f[i] = eval_jet2(parse(comps[i], coords, {}), p, {});
    return f;
}

}  // namespace

TEST_CASE("christoffel: flat zero, calabi and sphere hand values") {
    Scene flat = flat_c2();
    Christoffel g0 = christoffel_at(flat.chart, {0.5, 0.5, 0.5, 0.5});
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(std::abs(g0.G[k][i][j]) < 1e-14);

    Scene cal = calabi_type(1.0);
    Christoffel gc = christoffel_at(cal.chart, {0, 0, 1, 0});
    CHECK(gc.G[2][0][0] == doctest::Approx(-0.5));

    Chart sp = sphere_plane_chart();
    Christoffel gs = christoffel_at(sp, {M_PI / 4, 0.3, 0, 0});
    CHECK(gs.G[0][1][1] == doctest::Approx(-0.5));
}

TEST_CASE("christoffel agrees with finite differences of the metric") {
    Scene cal = calabi_type(1.0);
    Vec4d p{0.2, -0.3, 1.3, 0.4};
    MetricValue m = metric_at(cal.chart, p);
    Christoffel gamma = christoffel_at(m);
    auto gat = [&](const Vec4d& q, int i, int j) {
        return metric_at(cal.chart, q).gval[i][j];
    };
    double h = 1e-6;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                double expect = 0.0;
                for (int l = 0; l < 4; ++l) {
                    Vec4d pi = p, mi = p, pj = p, mj = p, pl = p, ml = p;
                    pi[i] += h; mi[i] -= h;
                    pj[j] += h; mj[j] -= h;
                    pl[l] += h; ml[l] -= h;
                    double dgi = (gat(pi, j, l) - gat(mi, j, l)) / (2 * h);
                    double dgj = (gat(pj, i, l) - gat(mj, i, l)) / (2 * h);
                    double dgl = (gat(pl, i, j) - gat(ml, i, j)) / (2 * h);
                    expect += 0.5 * m.ginvval[k][l] * (dgi + dgj - dgl);
                }
                CHECK(std::abs(gamma.G[k][i][j] - expect) < 1e-7);
            }
}

TEST_CASE("riemann: flat zero, sphere sectional curvature +1") {
    Scene flat = flat_c2();
    CurvatureValue rf = riemann_at(flat.chart, {0.1, 0.2, 0.3, 0.4});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) CHECK(std::abs(rf.R[i][j][k][l]) < 1e-12);

    Chart sp = sphere_plane_chart();
    Vec4d p{M_PI / 3, 0.2, 0.0, 0.0};
    MetricValue m = metric_at(sp, p);
    CurvatureValue r = riemann_at(sp, p);
    // K(span du,dv) = R(du,dv,dv,du) / (|du|^2 |dv|^2 - g(du,dv)^2)
    double denom = m.gval[0][0] * m.gval[1][1] - m.gval[0][1] * m.gval[0][1];
    CHECK(r.R[0][1][1][0] / denom == doctest::Approx(1.0).epsilon(1e-8));
    // mixed planes flat
    CHECK(std::abs(r.R[0][2][2][0]) < 1e-10);
    CHECK(std::abs(r.R[1][3][3][1]) < 1e-10);
    CHECK(r.symmetry_residual() < 1e-9);
}

TEST_CASE("riemann symmetries on perturbed metric") {
    Scene s = perturbed(flat_c2(), 1e-3, 42);
    for (const Vec4d& p : sample_plan(s, 20, 4)) {
        CurvatureValue r = riemann_at(s.chart, p);
        CHECK(r.symmetry_residual() < 1e-9);
    }
}

TEST_CASE("metric compatibility nabla g = 0") {
    for (const char* name :
         {"calabi_type(1,flat)", "calabi_type(1,sphere)", "product_surfaces(1,-1)",
          "perturbed(flat_c2,0.001,5)"}) {
        CAPTURE(name);
        Scene s = builtin_scene(name);
        for (const Vec4d& p : sample_plan(s, 15, 5)) {
            MetricValue m = metric_at(s.chart, p);
            CHECK(nabla_g_residual(m, christoffel_at(m)) < 1e-9);
        }
    }
}

TEST_CASE("covariant derivative: euler fields and calabi") {
    Scene flat = flat_c2();
    Vec4d p{0.7, -0.2, 0.4, 1.1};
    Christoffel gamma = christoffel_at(flat.chart, p);
    JetVec euler = field_jets({"x1", "y1", "x2", "y2"}, flat.chart.coords, p);
    Mat4d ne = covariant_derivative(gamma, euler);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(ne[i][j] == doctest::Approx(i == j ? 1.0 : 0.0));

    JetVec jeuler = field_jets({"-y1", "x1", "-y2", "x2"}, flat.chart.coords, p);
    Mat4d nj = covariant_derivative(gamma, jeuler);
    CHECK(nj[0][1] == doctest::Approx(-1.0));
    CHECK(nj[1][0] == doctest::Approx(1.0));
    CHECK(nj[2][3] == doctest::Approx(-1.0));
    CHECK(nj[3][2] == doctest::Approx(1.0));

    Scene cal = calabi_type(1.0);
    Vec4d q{0.1, 0.2, 1.4, -0.3};
    Christoffel gc = christoffel_at(cal.chart, q);
    JetVec zdz = field_jets({"0", "0", "z", "0"}, cal.chart.coords, q);
    Mat4d nz = covariant_derivative(gc, zdz);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(nz[i][j] - (i == j ? 0.5 : 0.0)) < 1e-8);
}

TEST_CASE("calabi curvature kills the distribution: R(X,Y) xi = 0") {
    Scene cal = calabi_type(1.0);
    for (const Vec4d& p : sample_plan(cal, 15, 6)) {
        CurvatureValue r = riemann_at(cal.chart, p);
        // xi = z d_z: contract the third slot with (0,0,z,0)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int l = 0; l < 4; ++l)
                    CHECK(std::abs(r.R[i][j][2][l] * p[2]) < 1e-8);
    }
}

TEST_CASE("lie brackets") {
    Scene flat = flat_c2();
    Vec4d p{0.3, 0.6, -0.4, 0.2};
    JetVec a = field_jets({"1", "0", "0", "0"}, flat.chart.coords, p);
    JetVec b = field_jets({"0", "0", "1", "0"}, flat.chart.coords, p);
    Vec4d ab = lie_bracket(a, b);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ab[i]) < 1e-14);

    // [x d_y, d_x] = -d_y
    JetVec xy = field_jets({"0", "x1", "0", "0"}, flat.chart.coords, p);
    Vec4d c = lie_bracket(xy, a);
    CHECK(c[1] == doctest::Approx(-1.0));

    JetVec euler = field_jets({"x1", "y1", "x2", "y2"}, flat.chart.coords, p);
    JetVec jeuler = field_jets({"-y1", "x1", "-y2", "x2"}, flat.chart.coords, p);
    Vec4d ej = lie_bracket(euler, jeuler);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ej[i]) < 1e-13);
}

TEST_CASE("lie derivatives of the metric and of J") {
    Scene flat = flat_c2();
    Vec4d p{0.5, -0.1, 0.8, 0.3};
    MetricValue m = metric_at(flat.chart, p);
    JetVec rot = field_jets({"-y1", "x1", "0", "0"}, flat.chart.coords, p);
    Mat4d lg = lie_derivative_metric(m, rot);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(lg[i][j]) < 1e-13);

    JetVec euler = field_jets({"x1", "y1", "x2", "y2"}, flat.chart.coords, p);
    Mat4d le = lie_derivative_metric(m, euler);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(le[i][j] == doctest::Approx(2.0 * m.gval[i][j]));

    JetMat J = complex_structure_jets_at(flat.chart, m, p);
    Mat4d lj = lie_derivative_endo(euler, J);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(lj[i][j]) < 1e-13);
}

TEST_CASE("exterior derivative basics and d∘d") {
    Scene flat = flat_c2();
    Vec4d p{0.2, 0.9, -0.5, 0.1};
    // omega = x1 dy1
    JetVec omega;
    omega[1] = Jet2::variable(p[0], 0);
    Mat4d d = exterior_derivative_1form(omega);
    CHECK(d[0][1] == doctest::Approx(1.0));
    CHECK(d[1][0] == doctest::Approx(-1.0));
    CHECK(std::abs(d[2][3]) < 1e-14);

    // calabi Omega is closed
    Scene cal = calabi_type(1.0);
    for (const Vec4d& q : sample_plan(cal, 15, 7)) {
        MetricValue m = metric_at(cal.chart, q);
        JetMat J = complex_structure_jets_at(cal.chart, m, q);
        Form2Jet om = kahler_form(m, J);
        CHECK(exterior_derivative_2form(om).max_abs() < 1e-10);
    }
}

TEST_CASE("hessian: flat potential, calabi potential, constant") {
    Scene flat = flat_c2();
    Vec4d p{0.4, 0.1, -0.9, 0.6};
    Christoffel gamma = christoffel_at(flat.chart, p);
    Jet2 phi = eval_jet2(flat.potential, p, flat.chart.params);
    Mat4d h = hessian(gamma, phi);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(h[i][j] == doctest::Approx(i == j ? 1.0 : 0.0));

    Scene cal = calabi_type(1.0);
    Vec4d q{0.3, -0.2, 1.1, 0.5};
    MetricValue m = metric_at(cal.chart, q);
    Christoffel gc = christoffel_at(m);
    Jet2 z = eval_jet2(cal.potential, q, cal.chart.params);
    Mat4d hc = hessian(gc, z);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(hc[i][j] - 0.5 * m.gval[i][j]) < 1e-8);

    Jet2 c0 = Jet2::constant(3.0);
    Mat4d hz = hessian(gamma, c0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(hz[i][j]) < 1e-14);
}

TEST_CASE("hodge star on 2-forms") {
    Scene flat = flat_c2();
    Vec4d p{0, 0, 0, 0};
    MetricValue m = metric_at(flat.chart, p);
    Mat4d beta = mat4_zero<double>();
    beta[0][1] = 1.0;
    beta[1][0] = -1.0;  // dx1 ^ dy1
    Mat4d star = hodge_star_2form(m, beta, +1);
    CHECK(star[2][3] == doctest::Approx(1.0));
    CHECK(star[3][2] == doctest::Approx(-1.0));
    Mat4d star2 = hodge_star_2form(m, star, +1);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(star2[i][j] == doctest::Approx(beta[i][j]));

    // Omega_I is self-dual in the I-orientation
    Scene punct = punctured_c2_radial();
    for (const Vec4d& q : sample_plan(punct, 10, 8)) {
        PointEval pe = point_eval(punct.chart, punct.dist, q);
        Mat4d oi = mat4_zero<double>();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) oi[i][j] = pe.os.omega_i.val(i, j);
        int sign = orientation_sign(pe.os.omega_i);
        CHECK(sign == -orientation_sign(pe.os.omega_j));
        Mat4d soi = hodge_star_2form(pe.m, oi, sign);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(std::abs(soi[i][j] - oi[i][j]) < 1e-10);
    }
}

TEST_CASE("divergence") {
    Scene flat = flat_c2();
    Vec4d p{0.9, 0.1, 0.2, -0.7};
    Christoffel gamma = christoffel_at(flat.chart, p);
    JetVec cst = field_jets({"1", "2", "3", "4"}, flat.chart.coords, p);
    CHECK(std::abs(divergence(gamma, cst)) < 1e-14);
    JetVec euler = field_jets({"x1", "y1", "x2", "y2"}, flat.chart.coords, p);
    CHECK(divergence(gamma, euler) == doctest::Approx(4.0));
}

TEST_CASE("d∘d vanishes on random 1-forms") {
    folia::testing::RandomExprGen gen(99);
    Scene flat = flat_c2();
    for (int n = 0; n < 10; ++n) {
        Vec4d p = gen.point();
        // d of a random exact 1-form df must vanish
        ExprPtr f = gen.gen(3);
        Jet2 fj;
        try {
            fj = eval_jet2(f, p, {});
        } catch (const EvalDomainError&) {
            continue;
        }
        JetVec df;
        for (int i = 0; i < 4; ++i) {
            df[i].v = fj.d[i];
            for (int j = 0; j < 4; ++j) df[i].d[j] = fj.hess(i, j);
        }
        Mat4d ddf = exterior_derivative_1form(df);
        double scale = 1.0;
        for (int i = 0; i < kSymSize; ++i) scale = std::max(scale, std::abs(fj.h[i]));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(std::abs(ddf[i][j]) / scale < 1e-8);
    }
}
