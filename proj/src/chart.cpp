#include "folia/chart.hpp"

#include <cmath>
#include <sstream>

namespace folia {

MetricValue metric_at(const Chart& c, const Vec4d& p) {
    MetricValue m;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            Jet2 gij = eval_jet2(c.metric[sym_index(i, j)], p, c.params);
            m.g[i][j] = gij;
            m.g[j][i] = gij;
        }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.gval[i][j] = m.g[i][j].v;

    Lu4<Jet2> lu;
    try {
        lu = lu_factor(m.g);
    } catch (const SingularMatrixError&) {
        throw GeometryError("singular metric at sampled point");
    }
    m.det = lu_det(lu).v;
    if (std::abs(m.det) < 1e-12) throw GeometryError("singular metric (|det| < 1e-12)");
    int pivot = cholesky_fail_pivot(m.gval, 1e-12);
    if (pivot >= 0) {
        std::ostringstream msg;
        msg << "metric not positive definite (failing pivot " << pivot << ")";
        throw GeometryError(msg.str());
    }
    m.ginv = lu_inverse(lu);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.ginvval[i][j] = m.ginv[i][j].v;
    return m;
}

JetMat complex_structure_jets_at(const Chart& c, const MetricValue& m, const Vec4d& p,
                                 double tol) {
    JetMat J = mat4_zero<Jet2>();
    switch (c.jspec) {
        case JSpecKind::Standard:
            J[1][0] = Jet2::constant(1.0);
            J[0][1] = Jet2::constant(-1.0);
            J[3][2] = Jet2::constant(1.0);
            J[2][3] = Jet2::constant(-1.0);
            break;
        case JSpecKind::Explicit:
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    J[i][j] = eval_jet2(c.jcomp[i * 4 + j], p, c.params);
            break;
        case JSpecKind::FromForm: {
            JetMat omega = mat4_zero<Jet2>();
            double maxabs = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    ExprPtr comp = c.form[form2_pair_index(i, j)];
                    Jet2 w = comp ? eval_jet2(comp, p, c.params) : Jet2::constant(0.0);
                    omega[i][j] = w;
                    omega[j][i] = -w;
                    maxabs = std::max(maxabs, std::abs(w.v));
                }
            if (maxabs < 1e-12) throw GeometryError("degenerate 2-form in jspec=from-form");
            // J^i_j = g^{ik} Omega_{jk}; the sign makes omega(X,Y)=g(JX,Y)
            // reproduce Omega.
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    Jet2 s;
                    for (int k = 0; k < 4; ++k) s += m.ginv[i][k] * omega[j][k];
                    J[i][j] = s;
                }
            // degenerate forms that pass the max test still fail J^2 = -Id below
            break;
        }
    }
    JCompatibility comp = j_compatibility(m, J);
    if (comp.j_squared_residual > tol) {
        std::ostringstream msg;
        msg << "J^2 + Id residual " << comp.j_squared_residual
            << " exceeds tolerance (misconfigured complex structure)";
        throw GeometryError(msg.str());
    }
    return J;
}

Mat4d complex_structure_at(const Chart& c, const Vec4d& p) {
    MetricValue m = metric_at(c, p);
    JetMat J = complex_structure_jets_at(c, m, p);
    Mat4d out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = J[i][j].v;
    return out;
}

JCompatibility j_compatibility(const MetricValue& m, const JetMat& J) {
    JCompatibility r{0.0, 0.0};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double jj = 0.0;
            for (int k = 0; k < 4; ++k) jj += J[i][k].v * J[k][j].v;
            r.j_squared_residual = std::max(r.j_squared_residual,
                                            std::abs(jj + (i == j ? 1.0 : 0.0)));
            // g(J di, J dj) - g(di, dj)
            double gj = 0.0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) gj += m.gval[k][l] * J[k][i].v * J[l][j].v;
            r.metric_residual = std::max(r.metric_residual, std::abs(gj - m.gval[i][j]));
        }
    return r;
}

JetVec distribution_vector_jets(const Chart& c, const Distribution& d, const Vec4d& p) {
    JetVec v;
    for (int i = 0; i < 4; ++i) v[i] = eval_jet2(d.v[i], p, c.params);
    return v;
}

static JetVec apply_mat(const JetMat& a, const JetVec& x) { return mat_vec(a, x); }

static JetVec scale(const JetVec& x, const Jet2& s) {
    JetVec r;
    for (int i = 0; i < 4; ++i) r[i] = x[i] * s;
    return r;
}

static JetVec sub(JetVec a, const JetVec& b) {
    for (int i = 0; i < 4; ++i) a[i] -= b[i];
    return a;
}

AdaptedFrame adapted_frame(const MetricValue& m, const JetMat& J, const JetVec& v) {
    double vnorm2 = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) vnorm2 += m.gval[i][j] * v[i].v * v[j].v;
    if (vnorm2 < 1e-16) throw GeometryError("zero spanning vector for the distribution");

    AdaptedFrame f;
    Jet2 nv = sqrt(metric_dot(m.g, v, v));
    f.e[0] = scale(v, inv(nv));
    f.e[1] = apply_mat(J, f.e[0]);

    // seed: lowest-index coordinate vector with E-projection norm > 1e-8
    int seed = -1;
    JetVec w{};
    for (int cand = 0; cand < 4 && seed < 0; ++cand) {
        JetVec basis{};
        basis[cand] = Jet2::constant(1.0);
        JetVec rem = basis;
        for (int a = 0; a < 2; ++a) rem = sub(rem, scale(f.e[a], metric_dot(m.g, basis, f.e[a])));
        double n2 = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) n2 += m.gval[i][j] * rem[i].v * rem[j].v;
        if (n2 > 1e-8 * 1e-8) {
            seed = cand;
            w = rem;
        }
    }
    if (seed < 0) throw GeometryError("could not find a seed vector outside Delta");
    f.e[2] = scale(w, inv(sqrt(metric_dot(m.g, w, w))));
    f.e[3] = apply_mat(J, f.e[2]);

    // The construction assumes g is J-Hermitian (so J e is unit and
    // orthogonal to e).  If it is not, the "frame" silently degenerates,
    // so verify g-orthonormality and fail loudly instead.
    double ortho = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            double dot = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) dot += m.gval[i][j] * f.e[a][i].v * f.e[b][j].v;
            ortho = std::max(ortho, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
    if (ortho > 1e-6)
        throw GeometryError("adapted frame failed orthonormality (residual " +
                            std::to_string(ortho) + "); metric is not compatible with J");
    return f;
}

AdaptedFrame adapted_frame(const Chart& c, const Distribution& d, const Vec4d& p) {
    MetricValue m = metric_at(c, p);
    JetMat J = complex_structure_jets_at(c, m, p);
    JetVec v = distribution_vector_jets(c, d, p);
    return adapted_frame(m, J, v);
}

JetMat delta_projector(const MetricValue& m, const JetVec& v, const JetMat& J) {
    JetVec jv = mat_vec(J, v);
    JetVec vflat = mat_vec(m.g, v);
    JetVec jvflat = mat_vec(m.g, jv);
    Jet2 inv_v2 = inv(metric_dot(m.g, v, v));
    Jet2 inv_jv2 = inv(metric_dot(m.g, jv, jv));
    JetMat proj = mat4_zero<Jet2>();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            proj[i][j] = v[i] * vflat[j] * inv_v2 + jv[i] * jvflat[j] * inv_jv2;
    return proj;
}

Vec4d project(const Chart& c, const Distribution& d, const Vec4d& p, const Vec4d& x,
              PlanePart part) {
    MetricValue m = metric_at(c, p);
    JetMat J = complex_structure_jets_at(c, m, p);
    JetVec v = distribution_vector_jets(c, d, p);
    JetMat proj = delta_projector(m, v, J);
    Vec4d xd{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) xd[i] += proj[i][j].v * x[j];
    if (part == PlanePart::Delta) return xd;
    Vec4d xe;
    for (int i = 0; i < 4; ++i) xe[i] = x[i] - xd[i];
    return xe;
}

}  // namespace folia
