#include <doctest.h>

#include "folia/jet.hpp"
#include "helpers.hpp"

using namespace folia;
using folia::testing::fd_grad;
using folia::testing::fd_hess;

namespace {

Jet2 x_at(const Vec4d& p, int i) { return Jet2::variable(p[i], i); }

}  // namespace

TEST_CASE("jet arithmetic matches analytic derivatives") {
    Vec4d p{0.3, -0.7, 1.1, 0.4};
    // f = sin(x0) * exp(x1) + x2^3 / (2 + cos(x3))
    auto f = [](const Vec4d& q) {
        return std::sin(q[0]) * std::exp(q[1]) + q[2] * q[2] * q[2] / (2.0 + std::cos(q[3]));
    };
    Jet2 j = sin(x_at(p, 0)) * exp(x_at(p, 1)) +
             pow_int(x_at(p, 2), 3) / (Jet2::constant(2.0) + cos(x_at(p, 3)));
    CHECK(j.v == doctest::Approx(f(p)).epsilon(1e-12));
    Vec4d g = fd_grad(f, p);
    for (int i = 0; i < 4; ++i) CHECK(j.d[i] == doctest::Approx(g[i]).epsilon(1e-6));
    for (int i = 0; i < 4; ++i)
        for (int k = i; k < 4; ++k)
            CHECK(j.hess(i, k) == doctest::Approx(fd_hess(f, p, i, k)).epsilon(1e-4));
}

TEST_CASE("jet ring laws hold exactly") {
    Vec4d p{0.2, 0.5, -0.3, 0.9};
    Jet2 a = sin(x_at(p, 0)) + pow_int(x_at(p, 1), 2);
    Jet2 b = exp(x_at(p, 2)) - x_at(p, 3);
    Jet2 c = cos(x_at(p, 1));

    Jet2 lhs = a * (b + c);
    Jet2 rhs = a * b + a * c;
    CHECK(lhs.v == doctest::Approx(rhs.v).epsilon(1e-15));
    for (int i = 0; i < 4; ++i) CHECK(lhs.d[i] == doctest::Approx(rhs.d[i]).epsilon(1e-14));
    for (int i = 0; i < kSymSize; ++i)
        CHECK(lhs.h[i] == doctest::Approx(rhs.h[i]).epsilon(1e-14));

    Jet2 q = (a * b) / b;  // cancels back to a
    CHECK(q.v == doctest::Approx(a.v).epsilon(1e-13));
    for (int i = 0; i < 4; ++i) CHECK(q.d[i] == doctest::Approx(a.d[i]).epsilon(1e-12));
}

TEST_CASE("sqrt and log propagate chain rule") {
    Vec4d p{1.3, 0.0, 0.0, 0.0};
    auto f = [](const Vec4d& q) { return std::sqrt(std::log(2.0 + q[0] * q[0])); };
    Jet2 j = sqrt(log(Jet2::constant(2.0) + pow_int(x_at(p, 0), 2)));
    CHECK(j.v == doctest::Approx(f(p)).epsilon(1e-12));
    Vec4d g = fd_grad(f, p);
    CHECK(j.d[0] == doctest::Approx(g[0]).epsilon(1e-6));
    CHECK(j.hess(0, 0) == doctest::Approx(fd_hess(f, p, 0, 0)).epsilon(1e-4));
}

TEST_CASE("negative integer powers") {
    Vec4d p{0.0, 0.0, 2.0, 0.0};
    Jet2 j = pow_int(x_at(p, 2), -2);
    CHECK(j.v == doctest::Approx(0.25));
    CHECK(j.d[2] == doctest::Approx(-2.0 / 8.0));
    CHECK(j.hess(2, 2) == doctest::Approx(6.0 / 16.0));
}

TEST_CASE("domain violations throw") {
    CHECK_THROWS_AS((void)log(Jet2::constant(-1.0)), JetDomainError);
    CHECK_THROWS_AS((void)sqrt(Jet2::constant(-0.5)), JetDomainError);
    CHECK_THROWS_AS((void)(Jet2::constant(1.0) / Jet2::constant(0.0)), JetDomainError);
    CHECK_THROWS_AS((void)pow_int(Jet2::constant(0.0), -1), JetDomainError);
}
