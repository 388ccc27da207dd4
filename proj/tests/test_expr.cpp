#include <doctest.h>

#include "folia/expr.hpp"
#include "helpers.hpp"

using namespace folia;
using folia::testing::RandomExprGen;
using folia::testing::fd_grad;
using folia::testing::fd_hess;

namespace {

const std::array<std::string, 4> kXYZT = {"x", "y", "z", "t"};

}  // namespace

TEST_CASE("parse basics") {
    ExprPtr e = parse("z", kXYZT, {});
    CHECK(e->kind == Expr::Kind::Coord);
    CHECK(e->coord_index == 2);

    ExprPtr q = parse("1/(C*z)", kXYZT, {"C"});
    CHECK(q->kind == Expr::Kind::Div);

    CHECK_THROWS_AS((void)parse("x +* y", kXYZT, {}), ParseError);
    try {
        (void)parse("x +* y", kXYZT, {});
    } catch (const ParseError& pe) {
        CHECK(pe.offset == 3);
    }
    CHECK_THROWS_AS((void)parse("foo + 1", kXYZT, {}), ParseError);
    CHECK_THROWS_AS((void)parse("sin(x, y)", kXYZT, {}), ParseError);
    CHECK_THROWS_AS((void)parse("", kXYZT, {}), ParseError);
}

TEST_CASE("eval_jet2 spec values") {
    Params cp{{"C", 1.0}};
    Jet2 j = eval_jet2(parse("C*z^2", kXYZT, {"C"}), {0, 0, 3, 0}, cp);
    CHECK(j.v == doctest::Approx(9.0));
    CHECK(j.d[2] == doctest::Approx(6.0));
    CHECK(j.hess(2, 2) == doctest::Approx(2.0));

    Jet2 q = eval_jet2(parse("1/(C*z)", kXYZT, {"C"}), {0, 0, 2, 0}, cp);
    CHECK(q.v == doctest::Approx(0.5));
    CHECK(q.d[2] == doctest::Approx(-0.25));

    Jet2 s = eval_jet2(parse("sin(x)*exp(y)", kXYZT, {}), {0, 1, 0, 0}, {});
    CHECK(s.v == doctest::Approx(0.0));
    CHECK(s.d[0] == doctest::Approx(std::exp(1.0)));
    CHECK(s.hess(0, 1) == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("domain errors abort evaluation with context") {
    ExprPtr e = parse("ln(z)", kXYZT, {});
    CHECK_THROWS_AS((void)eval_jet2(e, {0, 0, -1, 0}, {}), EvalDomainError);
    ExprPtr d = parse("1/x", kXYZT, {});
    CHECK_THROWS_AS((void)eval_jet2(d, {0, 0, 0, 0}, {}), EvalDomainError);
}

TEST_CASE("render round-trips structurally") {
    RandomExprGen gen(20240517);
    for (int n = 0; n < 200; ++n) {
        ExprPtr e = gen.gen(4);
        std::string text = render(e, gen.coords);
        ExprPtr back = parse(text, gen.coords, {});
        CHECK(structurally_equal(e, back));
    }
    // named parameters survive too
    ExprPtr e = parse("C*sin(x) - 2*t^3", kXYZT, {"C"});
    CHECK(structurally_equal(e, parse(render(e, kXYZT), kXYZT, {"C"})));
}

TEST_CASE("200 random expressions agree with finite differences") {
    RandomExprGen gen(7);
    int checked = 0;
    while (checked < 200) {
        ExprPtr e = gen.gen(4);
        Vec4d p = gen.point();
        auto f = [&](const Vec4d& q) { return eval_value(e, q, {}); };
        Jet2 j;
        try {
            j = eval_jet2(e, p, {});
        } catch (const EvalDomainError&) {
            continue;
        }
        if (std::abs(j.v) > 1e6) continue;  // runaway powers make FD meaningless
        Vec4d g = fd_grad(f, p);
        double gscale = 1.0;
        for (int i = 0; i < 4; ++i) gscale = std::max(gscale, std::abs(j.d[i]));
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(j.d[i] - g[i]) / gscale < 1e-6);
        double hscale = 1.0;
        for (int i = 0; i < kSymSize; ++i) hscale = std::max(hscale, std::abs(j.h[i]));
        for (int i = 0; i < 4; ++i)
            for (int k = i; k < 4; ++k)
                CHECK(std::abs(j.hess(i, k) - fd_hess(f, p, i, k)) / hscale < 2e-5);
        ++checked;
    }
}
