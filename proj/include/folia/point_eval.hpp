#pragma once

#include "folia/hermitian.hpp"

namespace folia {

/// Everything the residual checks need at one sample point, computed once.
/// Construction is pure; instances are safe to share read-only.
struct PointEval {
    Vec4d p;
    MetricValue m;
    JetMat J;
    Christoffel gamma;
    CurvatureValue curv;
    JetVec v, jv;
    AdaptedFrame frame;
    OppositeStructure os;
    LeeForm lee;

    double theta(const Vec4d& x) const {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += lee.theta[i].v * x[i];
        return s;
    }

    /// (J theta)(X) := -theta(JX), so that (J theta)^sharp = J(theta^sharp).
    double j_theta(const Vec4d& x) const {
        Vec4d jx{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) jx[i] += J[i][j].v * x[j];
        return -theta(jx);
    }

    Vec4d theta_sharp() const {
        Vec4d t{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) t[i] += m.ginvval[i][j] * lee.theta[j].v;
        return t;
    }

    double g(const Vec4d& x, const Vec4d& y) const {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += m.gval[i][j] * x[i] * y[j];
        return s;
    }

    double omega(const Vec4d& x, const Vec4d& y) const {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += os.omega_j.val(i, j) * x[i] * y[j];
        return s;
    }

    Vec4d apply_j(const Vec4d& x) const {
        Vec4d r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r[i] += J[i][j].v * x[j];
        return r;
    }

    Vec4d project_e(const Vec4d& x) const {
        Vec4d r = x;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r[i] -= os.proj_delta[i][j].v * x[j];
        return r;
    }

    Vec4d project_delta(const Vec4d& x) const {
        Vec4d r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r[i] += os.proj_delta[i][j].v * x[j];
        return r;
    }

    /// nabla_X F for a field given by jets, X a plain vector.
    Vec4d covariant_along(const Vec4d& x, const JetVec& f) const {
        Mat4d nf = covariant_derivative(gamma, f);
        Vec4d r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r[i] += nf[i][j] * x[j];
        return r;
    }
};

PointEval point_eval(const Chart& c, const Distribution& d, const Vec4d& p);

}  // namespace folia
