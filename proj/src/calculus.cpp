#include "folia/calculus.hpp"

#include <cmath>

namespace folia {

Christoffel christoffel_at(const MetricValue& m) {
    Christoffel ch{};
    // first-kind symbols and their first derivatives
    double first[4][4][4];      // first[l][i][j] = (d_i g_jl + d_j g_il - d_l g_ij)/2
    double dfirst[4][4][4][4];  // dfirst[m][l][i][j]
    for (int l = 0; l < 4; ++l)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                first[l][i][j] =
                    0.5 * (m.g[j][l].d[i] + m.g[i][l].d[j] - m.g[i][j].d[l]);
                for (int mm = 0; mm < 4; ++mm)
                    dfirst[mm][l][i][j] = 0.5 * (m.g[j][l].hess(mm, i) +
                                                 m.g[i][l].hess(mm, j) -
                                                 m.g[i][j].hess(mm, l));
            }
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double v = 0.0;
                for (int l = 0; l < 4; ++l) v += m.ginv[k][l].v * first[l][i][j];
                ch.G[k][i][j] = v;
                for (int mm = 0; mm < 4; ++mm) {
                    double dv = 0.0;
                    for (int l = 0; l < 4; ++l)
                        dv += m.ginv[k][l].d[mm] * first[l][i][j] +
                              m.ginv[k][l].v * dfirst[mm][l][i][j];
                    ch.dG[mm][k][i][j] = dv;
                }
            }
    return ch;
}

Christoffel christoffel_at(const Chart& c, const Vec4d& p) {
    return christoffel_at(metric_at(c, p));
}

CurvatureValue riemann_at(const MetricValue& m, const Christoffel& gamma) {
    CurvatureValue cv{};
    for (int l = 0; l < 4; ++l)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) {
                    double v = gamma.dG[i][l][j][k] - gamma.dG[j][l][i][k];
                    for (int mm = 0; mm < 4; ++mm)
                        v += gamma.G[l][i][mm] * gamma.G[mm][j][k] -
                             gamma.G[l][j][mm] * gamma.G[mm][i][k];
                    cv.Rup[l][i][j][k] = v;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double v = 0.0;
                    for (int mm = 0; mm < 4; ++mm)
                        v += m.gval[mm][l] * cv.Rup[mm][i][j][k];
                    cv.R[i][j][k][l] = v;
                }
    return cv;
}

CurvatureValue riemann_at(const Chart& c, const Vec4d& p) {
    MetricValue m = metric_at(c, p);
    return riemann_at(m, christoffel_at(m));
}

double CurvatureValue::symmetry_residual() const {
    double r = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    r = std::max(r, std::abs(R[i][j][k][l] + R[j][i][k][l]));
                    r = std::max(r, std::abs(R[i][j][k][l] + R[i][j][l][k]));
                    r = std::max(r, std::abs(R[i][j][k][l] - R[k][l][i][j]));
                    r = std::max(r, std::abs(R[i][j][k][l] + R[j][k][i][l] +
                                             R[k][i][j][l]));
                }
    return r;
}

Mat4d covariant_derivative(const Christoffel& gamma, const JetVec& f) {
    Mat4d nf{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double v = f[i].d[j];
            for (int k = 0; k < 4; ++k) v += gamma.G[i][j][k] * f[k].v;
            nf[i][j] = v;
        }
    return nf;
}

void covariant_derivative_endo(const Christoffel& gamma, const JetMat& a,
                               double out[4][4][4]) {
    for (int mm = 0; mm < 4; ++mm)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double v = a[i][j].d[mm];
                for (int k = 0; k < 4; ++k)
                    v += gamma.G[i][mm][k] * a[k][j].v - gamma.G[k][mm][j] * a[i][k].v;
                out[mm][i][j] = v;
            }
}

Vec4d lie_bracket(const JetVec& x, const JetVec& y) {
    Vec4d r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r[i] += x[j].v * y[i].d[j] - y[j].v * x[i].d[j];
    return r;
}

Mat4d lie_derivative_metric(const MetricValue& m, const JetVec& v) {
    Mat4d r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k)
                s += v[k].v * m.g[i][j].d[k] + m.g[k][j].v * v[k].d[i] +
                     m.g[i][k].v * v[k].d[j];
            r[i][j] = s;
        }
    return r;
}

Mat4d lie_derivative_endo(const JetVec& v, const JetMat& a) {
    Mat4d r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int mm = 0; mm < 4; ++mm)
                s += v[mm].v * a[i][j].d[mm] - a[mm][j].v * v[i].d[mm] +
                     a[i][mm].v * v[mm].d[j];
            r[i][j] = s;
        }
    return r;
}

double Form3Value::max_abs() const {
    double r = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) r = std::max(r, std::abs(c[i][j][k]));
    return r;
}

Mat4d exterior_derivative_1form(const JetVec& theta) {
    Mat4d d{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) d[i][j] = theta[j].d[i] - theta[i].d[j];
    return d;
}

Form3Value exterior_derivative_2form(const Form2Jet& w) {
    Form3Value d;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                d.c[i][j][k] = w.c[j][k].d[i] - w.c[i][k].d[j] + w.c[i][j].d[k];
    return d;
}

Form3Value wedge_1_2(const Vec4d& phi, const Form2Jet& w) {
    Form3Value r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                r.c[i][j][k] = phi[i] * w.val(j, k) - phi[j] * w.val(i, k) +
                               phi[k] * w.val(i, j);
    return r;
}

double wedge_2_2(const Form2Jet& a, const Form2Jet& b) {
    return a.val(0, 1) * b.val(2, 3) - a.val(0, 2) * b.val(1, 3) +
           a.val(0, 3) * b.val(1, 2) + a.val(1, 2) * b.val(0, 3) -
           a.val(1, 3) * b.val(0, 2) + a.val(2, 3) * b.val(0, 1);
}

Mat4d hessian(const Christoffel& gamma, const Jet2& phi) {
    Mat4d h{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double v = phi.hess(i, j);
            for (int k = 0; k < 4; ++k) v -= gamma.G[k][i][j] * phi.d[k];
            h[i][j] = v;
        }
    return h;
}

namespace {
constexpr int levi_civita(int i, int j, int k, int l) {
    int perm[4] = {i, j, k, l};
    int sign = 1;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            if (perm[a] == perm[b]) return 0;
            if (perm[a] > perm[b]) sign = -sign;
        }
    return sign;
}
}  // namespace

Mat4d hodge_star_2form(const MetricValue& m, const Mat4d& beta, int orientation_sign) {
    double sqrt_det = std::sqrt(m.det);
    // raise both indices
    Mat4d up{};
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            double s = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    s += m.ginvval[k][a] * m.ginvval[l][b] * beta[a][b];
            up[k][l] = s;
        }
    Mat4d star{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += levi_civita(i, j, k, l) * up[k][l];
            star[i][j] = 0.5 * orientation_sign * sqrt_det * s;
        }
    return star;
}

int orientation_sign(const Form2Jet& omega) {
    return wedge_2_2(omega, omega) >= 0.0 ? 1 : -1;
}

double divergence(const Christoffel& gamma, const JetVec& v) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        s += v[i].d[i];
        for (int k = 0; k < 4; ++k) s += gamma.G[i][i][k] * v[k].v;
    }
    return s;
}

double nabla_g_residual(const MetricValue& m, const Christoffel& gamma) {
    double r = 0.0;
    for (int mm = 0; mm < 4; ++mm)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double v = m.g[i][j].d[mm];
                for (int k = 0; k < 4; ++k)
                    v -= gamma.G[k][mm][i] * m.gval[k][j] + gamma.G[k][mm][j] * m.gval[i][k];
                r = std::max(r, std::abs(v));
            }
    return r;
}

}  // namespace folia
