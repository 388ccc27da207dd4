#include "folia/foliation.hpp"

#include <cmath>

namespace folia {

namespace {

double gnorm(const PointEval& pe, const Vec4d& x) {
    return std::sqrt(std::max(0.0, pe.g(x, x)));
}

// Sign conventions for Corollary 1 with the canonical theta
// (d omega_2 = theta ^ omega_2). Locked by requiring zero residual on the
// Calabi model, where the right-hand sides are nonzero.
constexpr double kCor1SkewSign = 1.0;
constexpr double kCor1BracketSign = 1.0;

constexpr int kTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

}  // namespace

double frobenius_residual(const PointEval& pe) {
    Vec4d b = lie_bracket(pe.v, pe.jv);
    Vec4d be = pe.project_e(b);
    return gnorm(pe, be) / (1.0 + gnorm(pe, b));
}

double frobenius_e_residual(const PointEval& pe) {
    Vec4d b = lie_bracket(pe.frame.e[2], pe.frame.e[3]);
    Vec4d bd = pe.project_delta(b);
    return gnorm(pe, bd) / (1.0 + gnorm(pe, b));
}

Theorem1Fit theorem1_fit(const PointEval& pe) {
    Mat4d m = mat4_zero<double>();
    Vec4d rhs{};
    Form3Value d2 = exterior_derivative_2form(pe.os.omega_2);
    for (int t = 0; t < 4; ++t) {
        int j = kTriples[t][0], k = kTriples[t][1], l = kTriples[t][2];
        m[t][j] += pe.os.omega_2.val(k, l);
        m[t][k] -= pe.os.omega_2.val(j, l);
        m[t][l] += pe.os.omega_2.val(j, k);
        rhs[t] = d2.c[j][k][l];
    }
    Theorem1Fit fit;
    fit.phi = least_squares_4x4(m, rhs);
    double resid = 0.0, bnorm = 0.0;
    for (int t = 0; t < 4; ++t) {
        double pred = 0.0;
        for (int i = 0; i < 4; ++i) pred += m[t][i] * fit.phi[i];
        resid = std::max(resid, std::abs(pred - rhs[t]));
        bnorm = std::max(bnorm, std::abs(rhs[t]));
    }
    fit.residual = resid / (1.0 + bnorm);
    return fit;
}

double totally_geodesic_residual(const PointEval& pe) {
    double r = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Vec4d nab = pe.covariant_along(pe.frame.value(a), pe.frame.e[b]);
            r = std::max(r, gnorm(pe, pe.project_e(nab)));
        }
    return r;
}

namespace {

double lie_j_e_residual(const PointEval& pe, int first_frame_index) {
    double r = 0.0;
    for (int s = 0; s < 2; ++s) {
        Mat4d lj = lie_derivative_endo(pe.frame.e[s], pe.J);
        for (int a = first_frame_index; a < 4; ++a) {
            Vec4d x = pe.frame.value(a);
            Vec4d lx{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) lx[i] += lj[i][j] * x[j];
            r = std::max(r, gnorm(pe, pe.project_e(lx)));
        }
    }
    return r;
}

}  // namespace

double holomorphic_residual(const PointEval& pe) { return lie_j_e_residual(pe, 0); }

double quasi_holomorphic_residual(const PointEval& pe) { return lie_j_e_residual(pe, 2); }

ConformalFit conformal_fit(const PointEval& pe) {
    ConformalFit fit{};
    const JetVec* sections[2] = {&pe.v, &pe.jv};
    double alphas[2];
    double worst = 0.0;
    for (int s = 0; s < 2; ++s) {
        Mat4d lg = lie_derivative_metric(pe.m, *sections[s]);
        // restrict to the E-frame
        double m22 = 0.0, m23 = 0.0, m33 = 0.0;
        Vec4d e3 = pe.frame.value(2), e4 = pe.frame.value(3);
        auto eval2 = [&](const Vec4d& x, const Vec4d& y) {
            double acc = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) acc += lg[i][j] * x[i] * y[j];
            return acc;
        };
        m22 = eval2(e3, e3);
        m33 = eval2(e4, e4);
        m23 = eval2(e3, e4);
        double alpha = 0.5 * (m22 + m33);
        double resid = std::max({std::abs(m22 - alpha), std::abs(m33 - alpha), std::abs(m23)});
        double scale = 1.0 + std::max({std::abs(m22), std::abs(m33), std::abs(m23)});
        worst = std::max(worst, resid / scale);
        alphas[s] = alpha;
    }
    fit.residual = worst;
    fit.alpha_v = alphas[0];
    fit.alpha_jv = alphas[1];
    Vec4d vval{pe.v[0].v, pe.v[1].v, pe.v[2].v, pe.v[3].v};
    Vec4d jvval{pe.jv[0].v, pe.jv[1].v, pe.jv[2].v, pe.jv[3].v};
    fit.theta_v = pe.theta(vval);
    fit.theta_jv = pe.theta(jvval);
    return fit;
}

double star_identity_residual(const PointEval& pe) {
    double r = 0.0;
    double vnorm = gnorm(pe, {pe.v[0].v, pe.v[1].v, pe.v[2].v, pe.v[3].v});
    const JetVec* sections[2] = {&pe.v, &pe.jv};
    for (int s = 0; s < 2; ++s) {
        Vec4d xi{(*sections[s])[0].v, (*sections[s])[1].v, (*sections[s])[2].v,
                 (*sections[s])[3].v};
        double th = pe.theta(xi);
        double jth = pe.j_theta(xi);
        for (int a = 2; a < 4; ++a)
            for (int b = 2; b < 4; ++b) {
                Vec4d x = pe.frame.value(a), y = pe.frame.value(b);
                Vec4d nxxi = pe.covariant_along(x, *sections[s]);
                double lhs = 2.0 * pe.g(nxxi, y);
                double rhs = th * pe.g(x, y) + jth * pe.omega(x, y);
                r = std::max(r, std::abs(lhs - rhs));
            }
    }
    return r / (1.0 + vnorm);
}

double corollary1_residual(const PointEval& pe) {
    double r = 0.0;
    double vnorm = gnorm(pe, {pe.v[0].v, pe.v[1].v, pe.v[2].v, pe.v[3].v});
    const JetVec* sections[2] = {&pe.v, &pe.jv};
    // skew identity g(nabla_X xi, Y) - g(nabla_Y xi, X) = J theta(xi) g(JX,Y)
    for (int s = 0; s < 2; ++s) {
        Vec4d xi{(*sections[s])[0].v, (*sections[s])[1].v, (*sections[s])[2].v,
                 (*sections[s])[3].v};
        double jth = pe.j_theta(xi);
        for (int a = 2; a < 4; ++a)
            for (int b = 2; b < 4; ++b) {
                Vec4d x = pe.frame.value(a), y = pe.frame.value(b);
                double lhs = pe.g(pe.covariant_along(x, *sections[s]), y) -
                             pe.g(pe.covariant_along(y, *sections[s]), x);
                double rhs = kCor1SkewSign * jth * pe.g(pe.apply_j(x), y);
                r = std::max(r, std::abs(lhs - rhs) / (1.0 + vnorm));
            }
    }
    // (**): [X,Y]_Delta = -J theta^sharp omega(X,Y) for X,Y in E
    {
        Vec4d b = lie_bracket(pe.frame.e[2], pe.frame.e[3]);
        Vec4d bd = pe.project_delta(b);
        Vec4d jts = pe.apply_j(pe.theta_sharp());
        double w = pe.omega(pe.frame.value(2), pe.frame.value(3));
        double scale = 1.0 + gnorm(pe, jts);
        for (int i = 0; i < 4; ++i) {
            double rhs = kCor1BracketSign * (-jts[i]) * w;
            r = std::max(r, std::abs(bd[i] - rhs) / scale);
        }
    }
    return r;
}

double lemma_residual(const PointEval& pe) {
    // (nabla omega_2)_{m i j} = d_m w_ij - G^k_{mi} w_kj - G^k_{mj} w_ik
    double nw[4][4][4];
    for (int mm = 0; mm < 4; ++mm)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = pe.os.omega_2.c[i][j].d[mm];
                for (int k = 0; k < 4; ++k)
                    s -= pe.gamma.G[k][mm][i] * pe.os.omega_2.val(k, j) +
                         pe.gamma.G[k][mm][j] * pe.os.omega_2.val(i, k);
                nw[mm][i][j] = s;
            }
    double r = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 2; b < 4; ++b)
            for (int c = 2; c < 4; ++c) {
                Vec4d x = pe.frame.value(a), y = pe.frame.value(b), z = pe.frame.value(c);
                double s = 0.0;
                for (int mm = 0; mm < 4; ++mm)
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j)
                            s += nw[mm][i][j] * x[mm] * y[i] * z[j];
                r = std::max(r, std::abs(s));
            }
    return r;
}

double dtheta_split_residual(const PointEval& pe) {
    Mat4d dt = exterior_derivative_1form(pe.lee.theta);
    auto pairval = [&](int a, int b) {
        Vec4d x = pe.frame.value(a), y = pe.frame.value(b);
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += dt[i][j] * x[i] * y[j];
        return std::abs(s);
    };
    return std::max(pairval(0, 1), pairval(2, 3));
}

double ker_nabla_i_residual(const PointEval& pe) {
    double ni[4][4][4];
    covariant_derivative_endo(pe.gamma, pe.os.I, ni);
    double r = 0.0;
    for (int a = 0; a < 2; ++a) {
        Vec4d x = pe.frame.value(a);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int mm = 0; mm < 4; ++mm) s += ni[mm][i][j] * x[mm];
                r = std::max(r, std::abs(s));
            }
    }
    return r;
}

FoliationPointResiduals foliation_residuals(const PointEval& pe) {
    FoliationPointResiduals fr;
    fr.frobenius = frobenius_residual(pe);
    fr.frobenius_e = frobenius_e_residual(pe);
    fr.theorem1 = theorem1_fit(pe).residual;
    fr.totally_geodesic = totally_geodesic_residual(pe);
    fr.holomorphic = holomorphic_residual(pe);
    fr.quasi_holomorphic = quasi_holomorphic_residual(pe);
    ConformalFit cf = conformal_fit(pe);
    fr.conformal = cf.residual;
    fr.alpha_v = cf.alpha_v;
    fr.alpha_jv = cf.alpha_jv;
    fr.theta_v = cf.theta_v;
    fr.theta_jv = cf.theta_jv;
    fr.star_identity = star_identity_residual(pe);
    fr.corollary1 = corollary1_residual(pe);
    fr.lemma = lemma_residual(pe);
    fr.dtheta_split = dtheta_split_residual(pe);
    Mat4d dt = exterior_derivative_1form(pe.lee.theta);
    double dtmax = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) dtmax = std::max(dtmax, std::abs(dt[i][j]));
    fr.dtheta = dtmax;
    fr.nijenhuis_i = nijenhuis_max(pe.os.I);
    fr.ker_nabla_i = ker_nabla_i_residual(pe);
    fr.d_omega_i = exterior_derivative_2form(pe.os.omega_i).max_abs();
    fr.homothetic = std::max(fr.conformal, fr.dtheta);
    return fr;
}

namespace {

struct AuditSpec {
    const char* id;
    const char* anchor;
    bool implication;
    double (*lhs)(const FoliationPointResiduals&);
    double (*rhs)(const FoliationPointResiduals&);
};

const AuditSpec kAudits[] = {
    {"thm1", "Delta integrable <=> d omega_2 = phi ^ omega_2 solvable", false,
     [](const FoliationPointResiduals& r) { return r.frobenius; },
     [](const FoliationPointResiduals& r) { return r.theorem1; }},
    {"thm2", "I integrable and Delta integrable <=> totally geodesic and holomorphic", false,
     [](const FoliationPointResiduals& r) { return std::max(r.nijenhuis_i, r.frobenius); },
     [](const FoliationPointResiduals& r) { return std::max(r.totally_geodesic, r.holomorphic); }},
    {"thm4", "E integrable <=> I almost Kahler (d Omega_I = 0)", false,
     [](const FoliationPointResiduals& r) { return r.frobenius_e; },
     [](const FoliationPointResiduals& r) { return r.d_omega_i; }},
    {"thm5", "Delta in ker(nabla I) <=> Delta totally geodesic", false,
     [](const FoliationPointResiduals& r) { return r.ker_nabla_i; },
     [](const FoliationPointResiduals& r) { return r.totally_geodesic; }},
    {"thm6_ab", "conformal <=> quasi holomorphic", false,
     [](const FoliationPointResiduals& r) { return r.conformal; },
     [](const FoliationPointResiduals& r) { return r.quasi_holomorphic; }},
    {"thm6_bc", "quasi holomorphic <=> star identity", false,
     [](const FoliationPointResiduals& r) { return r.quasi_holomorphic; },
     [](const FoliationPointResiduals& r) { return r.star_identity; }},
    {"thm6_ac", "conformal <=> star identity", false,
     [](const FoliationPointResiduals& r) { return r.conformal; },
     [](const FoliationPointResiduals& r) { return r.star_identity; }},
    {"cor2", "conformal and totally geodesic => I Hermitian", true,
     [](const FoliationPointResiduals& r) { return std::max(r.conformal, r.totally_geodesic); },
     [](const FoliationPointResiduals& r) { return r.nijenhuis_i; }},
};

}  // namespace

FoliationVerdict theorem_verdicts(const std::vector<FoliationPointResiduals>& residuals,
                                  const std::vector<Vec4d>& points, double tol) {
    FoliationVerdict verdict;
    for (size_t i = 0; i < residuals.size(); ++i) {
        const auto& r = residuals[i];
        verdict.frobenius.add(r.frobenius);
        verdict.frobenius_e.add(r.frobenius_e);
        verdict.theorem1.add(r.theorem1);
        verdict.totally_geodesic.add(r.totally_geodesic);
        verdict.holomorphic.add(r.holomorphic);
        verdict.quasi_holomorphic.add(r.quasi_holomorphic);
        verdict.conformal.add(r.conformal);
        verdict.star_identity.add(r.star_identity);
        verdict.corollary1.add(r.corollary1);
        verdict.lemma.add(r.lemma);
        verdict.dtheta_split.add(r.dtheta_split);
        verdict.nijenhuis_i.add(r.nijenhuis_i);
        verdict.ker_nabla_i.add(r.ker_nabla_i);
        verdict.d_omega_i.add(r.d_omega_i);
        verdict.homothetic.add(r.homothetic);
        verdict.alpha_v.push_back(r.alpha_v);
        verdict.alpha_jv.push_back(r.alpha_jv);
        verdict.theta_v.push_back(r.theta_v);
        verdict.theta_jv.push_back(r.theta_jv);
    }
    for (const auto& spec : kAudits) {
        AuditRecord rec;
        rec.id = spec.id;
        rec.anchor = spec.anchor;
        rec.is_implication = spec.implication;
        for (size_t i = 0; i < residuals.size(); ++i) {
            double lhs = spec.lhs(residuals[i]);
            double rhs = spec.rhs(residuals[i]);
            Band bl = classify(lhs, tol);
            Band br = classify(rhs, tol);
            ++rec.points;
            if (bl == Band::Indeterminate || br == Band::Indeterminate) {
                ++rec.indeterminate;
                continue;
            }
            bool bad = spec.implication ? (bl == Band::Pass && br == Band::Fail)
                                        : (bl != br);
            if (bad) {
                if (!rec.counterexample) {
                    rec.counterexample = true;
                    rec.witness = points[i];
                    rec.witness_lhs = lhs;
                    rec.witness_rhs = rhs;
                }
            } else {
                ++rec.agreements;
            }
        }
        verdict.audits.push_back(rec);
    }
    return verdict;
}

}  // namespace folia
