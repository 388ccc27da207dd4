#pragma once

#include <functional>
#include <random>

#include "folia/models.hpp"
#include "folia/point_eval.hpp"

namespace folia::testing {

/// Central finite-difference gradient of a scalar function of the point.
inline Vec4d fd_grad(const std::function<double(const Vec4d&)>& f, const Vec4d& p,
                     double h = 1e-5) {
    Vec4d g{};
    for (int i = 0; i < 4; ++i) {
        Vec4d a = p, b = p;
        a[i] += h;
        b[i] -= h;
        g[i] = (f(a) - f(b)) / (2.0 * h);
    }
    return g;
}

inline double fd_hess(const std::function<double(const Vec4d&)>& f, const Vec4d& p, int i,
                      int j, double h = 1e-4) {
    if (i == j) {
        Vec4d a = p, b = p;
        a[i] += h;
        b[i] -= h;
        return (f(a) - 2.0 * f(p) + f(b)) / (h * h);
    }
    Vec4d pp = p, pm = p, mp = p, mm = p;
    pp[i] += h;
    pp[j] += h;
    pm[i] += h;
    pm[j] -= h;
    mp[i] -= h;
    mp[j] += h;
    mm[i] -= h;
    mm[j] -= h;
    return (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
}

/// Random expression trees over safe operations (no poles, logs of
/// positive-definite arguments only), paired with a random point.
struct RandomExprGen {
    std::mt19937 rng;
    std::array<std::string, 4> coords = {"x1", "y1", "x2", "y2"};

    explicit RandomExprGen(unsigned seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    ExprPtr gen(int depth) {
        if (depth <= 0) {
            switch (pick(3)) {
                case 0: return Expr::make_number(uniform(-2.0, 2.0));
                default: return Expr::make_coord(pick(4));
            }
        }
        switch (pick(8)) {
            case 0:
                return Expr::make_binary(Expr::Kind::Add, gen(depth - 1), gen(depth - 1));
            case 1:
                return Expr::make_binary(Expr::Kind::Sub, gen(depth - 1), gen(depth - 1));
            case 2:
                return Expr::make_binary(Expr::Kind::Mul, gen(depth - 1), gen(depth - 1));
            case 3:
                return Expr::make_unary(Expr::Kind::Sin, gen(depth - 1));
            case 4:
                return Expr::make_unary(Expr::Kind::Cos, gen(depth - 1));
            case 5: {
                // keep exp arguments bounded via sin
                return Expr::make_unary(Expr::Kind::Exp,
                                        Expr::make_unary(Expr::Kind::Sin, gen(depth - 1)));
            }
            case 6:
                return Expr::make_pow(gen(depth - 1), 1 + pick(3));
            default: {
                // 1 / (3 + sin(u)^2) stays away from zero
                ExprPtr denom = Expr::make_binary(
                    Expr::Kind::Add, Expr::make_number(3.0),
                    Expr::make_pow(Expr::make_unary(Expr::Kind::Sin, gen(depth - 1)), 2));
                return Expr::make_binary(Expr::Kind::Div, gen(depth - 1), denom);
            }
        }
    }

    Vec4d point() {
        return {uniform(-1.5, 1.5), uniform(-1.5, 1.5), uniform(-1.5, 1.5),
                uniform(-1.5, 1.5)};
    }
};

}  // namespace folia::testing
