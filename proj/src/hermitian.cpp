#include "folia/hermitian.hpp"

#include <cmath>

namespace folia {

Form2Jet kahler_form(const MetricValue& m, const JetMat& J) {
    Form2Jet w;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Jet2 s;
            for (int k = 0; k < 4; ++k) s += J[k][i] * m.g[k][j];
            w.c[i][j] = s;
        }
    return w;
}

OppositeStructure opposite_structure(const MetricValue& m, const JetMat& J, const JetVec& v) {
    OppositeStructure os;
    os.proj_delta = delta_projector(m, v, J);
    os.omega_j = kahler_form(m, J);

    // I = J (2 P_Delta - Id)
    JetMat two_p_minus_id = os.proj_delta;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            two_p_minus_id[i][j] = two_p_minus_id[i][j] * 2.0;
            if (i == j) two_p_minus_id[i][j] -= Jet2::constant(1.0);
        }
    os.I = mat_mul(J, two_p_minus_id);

    // omega_1(X,Y) = Omega_J(P X, P Y)
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Jet2 s;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    s += os.proj_delta[k][i] * os.proj_delta[l][j] * os.omega_j.c[k][l];
            os.omega_1.c[i][j] = s;
        }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            os.omega_2.c[i][j] = os.omega_j.c[i][j] - os.omega_1.c[i][j];
            os.omega_i.c[i][j] = os.omega_1.c[i][j] - os.omega_2.c[i][j];
        }
    return os;
}

void nijenhuis(const JetMat& a, double out[4][4][4]) {
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int mm = 0; mm < 4; ++mm)
                    s += a[mm][i].v * a[k][j].d[mm] - a[mm][j].v * a[k][i].d[mm] +
                         a[k][mm].v * a[mm][i].d[j] - a[k][mm].v * a[mm][j].d[i];
                out[k][i][j] = s;
            }
}

double nijenhuis_max(const JetMat& a) {
    double n[4][4][4];
    nijenhuis(a, n);
    double r = 0.0;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r = std::max(r, std::abs(n[k][i][j]));
    return r;
}

namespace {

constexpr int kTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

// d of a 2-form as jets valid to first order (value from the gradient of
// the components, gradient from their Hessians).
Jet2 d2_component(const Form2Jet& w, int i, int j, int k) {
    Jet2 r;
    r.v = w.c[j][k].d[i] - w.c[i][k].d[j] + w.c[i][j].d[k];
    for (int mm = 0; mm < 4; ++mm)
        r.d[mm] = w.c[j][k].hess(mm, i) - w.c[i][k].hess(mm, j) + w.c[i][j].hess(mm, k);
    return r;
}

}  // namespace

LeeForm lee_form(const OppositeStructure& os) {
    // (lambda ^ Omega_I)_{jkl} = lambda_j W_kl - lambda_k W_jl + lambda_l W_jk
    JetMat m = mat4_zero<Jet2>();
    JetVec rhs;
    for (int t = 0; t < 4; ++t) {
        int j = kTriples[t][0], k = kTriples[t][1], l = kTriples[t][2];
        m[t][j] += os.omega_i.c[k][l];
        m[t][k] -= os.omega_i.c[j][l];
        m[t][l] += os.omega_i.c[j][k];
        rhs[t] = d2_component(os.omega_i, j, k, l);
    }
    JetVec lambda = lu_solve(lu_factor(m), rhs);
    LeeForm lee;
    for (int i = 0; i < 4; ++i) lee.theta[i] = lambda[i] / 2.0;

    double resid = 0.0;
    for (int t = 0; t < 4; ++t) {
        int j = kTriples[t][0], k = kTriples[t][1], l = kTriples[t][2];
        double lhs = rhs[t].v;
        double wedge = lambda[j].v * os.omega_i.val(k, l) - lambda[k].v * os.omega_i.val(j, l) +
                       lambda[l].v * os.omega_i.val(j, k);
        resid = std::max(resid, std::abs(lhs - wedge));
    }
    lee.wedge_residual = resid;
    return lee;
}

double lee_e_component_residual(const LeeForm& lee, const AdaptedFrame& frame) {
    double tnorm = 0.0;
    for (int i = 0; i < 4; ++i) tnorm += lee.theta[i].v * lee.theta[i].v;
    tnorm = std::sqrt(tnorm);
    double r = 0.0;
    for (int a = 2; a < 4; ++a) {
        Vec4d ea = frame.value(a);
        double t = 0.0;
        for (int i = 0; i < 4; ++i) t += lee.theta[i].v * ea[i];
        r = std::max(r, std::abs(t));
    }
    return r / (1.0 + tnorm);
}

namespace {

double curv(const CurvatureValue& cv, const Vec4d& x, const Vec4d& y, const Vec4d& z,
            const Vec4d& w) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < 4; ++j) {
            if (y[j] == 0.0) continue;
            for (int k = 0; k < 4; ++k) {
                if (z[k] == 0.0) continue;
                for (int l = 0; l < 4; ++l)
                    s += cv.R[i][j][k][l] * x[i] * y[j] * z[k] * w[l];
            }
        }
    }
    return s;
}

Vec4d apply_val(const Mat4d& a, const Vec4d& x) {
    Vec4d r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += a[i][j] * x[j];
    return r;
}

}  // namespace

double gray_g2_residual(const CurvatureValue& cv, const Mat4d& a, const Mat4d& j,
                        const AdaptedFrame& frame, G2Variant variant) {
    double r = 0.0;
    std::array<Vec4d, 4> e;
    std::array<Vec4d, 4> ae;
    std::array<Vec4d, 4> je;
    for (int q = 0; q < 4; ++q) {
        e[q] = frame.value(q);
        ae[q] = apply_val(a, e[q]);
        je[q] = apply_val(j, e[q]);
    }
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int z = 0; z < 4; ++z)
                for (int w = 0; w < 4; ++w) {
                    double lhs = curv(cv, e[x], e[y], e[z], e[w]) -
                                 curv(cv, ae[x], ae[y], e[z], e[w]);
                    const Vec4d& last =
                        variant == G2Variant::Symmetric ? ae[w] : je[w];
                    double rhs = curv(cv, ae[x], e[y], ae[z], e[w]) +
                                 curv(cv, ae[x], e[y], e[z], last);
                    r = std::max(r, std::abs(lhs - rhs));
                }
    return r;
}

KahlerResidual kahler_residual_at(const MetricValue& m, const JetMat& J,
                                  const Christoffel& gamma) {
    KahlerResidual kr{0.0, 0.0};
    double nj[4][4][4];
    covariant_derivative_endo(gamma, J, nj);
    for (int mm = 0; mm < 4; ++mm)
        for (int i = 0; i < 4; ++i)
            for (int jj = 0; jj < 4; ++jj)
                kr.nabla_j = std::max(kr.nabla_j, std::abs(nj[mm][i][jj]));
    Form2Jet omega = kahler_form(m, J);
    kr.d_omega_j = exterior_derivative_2form(omega).max_abs();
    return kr;
}

}  // namespace folia
