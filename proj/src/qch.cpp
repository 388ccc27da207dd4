#include "folia/qch.hpp"

#include <cmath>

namespace folia {

namespace {

Vec4d jet_values(const JetVec& v) { return {v[0].v, v[1].v, v[2].v, v[3].v}; }

double curv4(const CurvatureValue& cv, const Vec4d& x, const Vec4d& y, const Vec4d& z,
             const Vec4d& w) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < 4; ++j) {
            if (y[j] == 0.0) continue;
            for (int k = 0; k < 4; ++k) {
                if (z[k] == 0.0) continue;
                for (int l = 0; l < 4; ++l) s += cv.R[i][j][k][l] * x[i] * y[j] * z[k] * w[l];
            }
        }
    }
    return s;
}

}  // namespace

Mat4d h_tensor(const PointEval& pe, HConvention conv) {
    // projector values for the chosen half
    Mat4d P;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double pd = pe.os.proj_delta[i][j].v;
            P[i][j] = conv == HConvention::Delta ? pd : (i == j ? 1.0 : 0.0) - pd;
        }
    Mat4d h;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += pe.m.gval[k][l] * P[k][i] * P[l][j];
            h[i][j] = s;
        }
    return h;
}

BasisTensors basis_tensors(const Mat4d& g, const Mat4d& J, const Mat4d& h) {
    // A_ij = g(J di, dj), hJ_ij = h(J di, dj)
    Mat4d A, hJ;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double a = 0.0, b = 0.0;
            for (int k = 0; k < 4; ++k) {
                a += J[k][i] * g[k][j];
                b += J[k][i] * h[k][j];
            }
            A[i][j] = a;
            hJ[i][j] = b;
        }
    BasisTensors t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    t.Pi[i][j][k][l] =
                        0.25 * (g[j][k] * g[i][l] - g[i][k] * g[j][l] + A[j][k] * A[i][l] -
                                A[i][k] * A[j][l] - 2.0 * A[i][j] * A[k][l]);
                    t.Phi[i][j][k][l] =
                        0.125 * (g[j][k] * h[i][l] - g[i][k] * h[j][l] + g[i][l] * h[j][k] -
                                 g[j][l] * h[i][k] + A[j][k] * hJ[i][l] - A[i][k] * hJ[j][l] +
                                 A[i][l] * hJ[j][k] - A[j][l] * hJ[i][k] -
                                 2.0 * A[i][j] * hJ[k][l] - 2.0 * A[k][l] * hJ[i][j]);
                    t.Psi[i][j][k][l] = -hJ[i][j] * hJ[k][l];
                }
    return t;
}

DecompositionFit fit_decomposition(const PointEval& pe, HConvention conv) {
    DecompositionFit fit;
    fit.convention = conv;
    double rnorm2 = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    rnorm2 += pe.curv.R[i][j][k][l] * pe.curv.R[i][j][k][l];
    if (std::sqrt(rnorm2) < 1e-12) {
        fit.flat_point = true;
        return fit;
    }
    Mat4d jval;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) jval[i][j] = pe.J[i][j].v;
    BasisTensors t = basis_tensors(pe.m.gval, jval, h_tensor(pe, conv));

    // normal equations over all 256 components, embedded in the 4x4
    // minimum-norm solver (fourth unknown pinned to zero)
    const double* basis[3] = {&t.Pi[0][0][0][0], &t.Phi[0][0][0][0], &t.Psi[0][0][0][0]};
    const double* r = &pe.curv.R[0][0][0][0];
    Mat4d gram = mat4_zero<double>();
    Vec4d rhs{};
    gram[3][3] = 1.0;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            double s = 0.0;
            for (int n = 0; n < 256; ++n) s += basis[a][n] * basis[b][n];
            gram[a][b] = s;
        }
        double s = 0.0;
        for (int n = 0; n < 256; ++n) s += basis[a][n] * r[n];
        rhs[a] = s;
    }
    Vec4d sol = least_squares_4x4(gram, rhs);
    fit.a = sol[0];
    fit.b = sol[1];
    fit.c = sol[2];
    double err2 = 0.0;
    for (int n = 0; n < 256; ++n) {
        double pred = fit.a * basis[0][n] + fit.b * basis[1][n] + fit.c * basis[2][n];
        err2 += (r[n] - pred) * (r[n] - pred);
    }
    fit.residual = std::sqrt(err2 / rnorm2);
    return fit;
}

DecompositionFit fit_decomposition(const PointEval& pe) {
    DecompositionFit e = fit_decomposition(pe, HConvention::E);
    if (e.flat_point) return e;
    DecompositionFit d = fit_decomposition(pe, HConvention::Delta);
    return e.residual <= d.residual ? e : d;
}

double qch_sampling_residual(const PointEval& pe, int phases) {
    const double classes[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
    double worst = 0.0;
    for (double s : classes) {
        double lo = 0.0, hi = 0.0;
        bool first = true;
        double ad = std::sqrt(s), ae = std::sqrt(1.0 - s);
        for (int b = 0; b < phases; ++b) {
            double beta = 2.0 * M_PI * b / phases;
            for (int c = 0; c < phases; ++c) {
                double gammap = 2.0 * M_PI * c / phases;
                Vec4d x{};
                for (int i = 0; i < 4; ++i)
                    x[i] = ad * (std::cos(beta) * pe.frame.value(0)[i] +
                                 std::sin(beta) * pe.frame.value(1)[i]) +
                           ae * (std::cos(gammap) * pe.frame.value(2)[i] +
                                 std::sin(gammap) * pe.frame.value(3)[i]);
                Vec4d jx = pe.apply_j(x);
                double k = curv4(pe.curv, x, jx, jx, x);
                if (first) {
                    lo = hi = k;
                    first = false;
                } else {
                    lo = std::min(lo, k);
                    hi = std::max(hi, k);
                }
                if (s == 0.0 || s == 1.0) break;  // no Delta (resp. E) phase
            }
            if (s == 0.0) break;
        }
        worst = std::max(worst, hi - lo);
    }
    return worst;
}

double semi_symmetry_residual(const PointEval& pe) {
    // everything in the orthonormal adapted frame
    double rf[4][4][4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    rf[a][b][c][d] = curv4(pe.curv, pe.frame.value(a), pe.frame.value(b),
                                           pe.frame.value(c), pe.frame.value(d));
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            // L^c_d = component of R(e_a,e_b) e_d along e_c
            double L[4][4];
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) L[c][d] = rf[a][b][d][c];
            for (int z = 0; z < 4; ++z)
                for (int u = 0; u < 4; ++u)
                    for (int v = 0; v < 4; ++v)
                        for (int w = 0; w < 4; ++w) {
                            double s = 0.0;
                            for (int mq = 0; mq < 4; ++mq)
                                s += L[mq][z] * rf[mq][u][v][w] + L[mq][u] * rf[z][mq][v][w] +
                                     L[mq][v] * rf[z][u][mq][w] + L[mq][w] * rf[z][u][v][mq];
                            worst = std::max(worst, std::abs(s));
                        }
        }
    return worst;
}

ScalarFit hessian_fit(const MetricValue& m, const Christoffel& gamma, const Jet2& phi) {
    Mat4d h = hessian(gamma, phi);
    // endomorphism form g^{-1} H is frame-invariant
    Mat4d endo = mat4_zero<double>();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) endo[i][j] += m.ginvval[i][k] * h[k][j];
    ScalarFit fit;
    fit.c = (endo[0][0] + endo[1][1] + endo[2][2] + endo[3][3]) / 4.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            fit.residual = std::max(fit.residual,
                                    std::abs(endo[i][j] - (i == j ? fit.c : 0.0)));
    return fit;
}

ScalarFit homothety_fit(const PointEval& pe, const JetVec& field, HomothetyMode mode) {
    Mat4d nf = covariant_derivative(pe.gamma, field);
    // frame components: nff[a][b] = g(nabla_{e_b} F, e_a)
    double nff[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Vec4d nb{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) nb[i] += nf[i][j] * pe.frame.value(b)[j];
            nff[a][b] = pe.g(nb, pe.frame.value(a));
        }
    double target[4][4] = {};
    if (mode == HomothetyMode::Identity) {
        for (int a = 0; a < 4; ++a) target[a][a] = 1.0;
    } else {
        target[1][0] = 1.0;
        target[0][1] = -1.0;
        target[3][2] = 1.0;
        target[2][3] = -1.0;
    }
    double num = 0.0, den = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            num += nff[a][b] * target[a][b];
            den += target[a][b] * target[a][b];
        }
    ScalarFit fit;
    fit.c = num / den;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            fit.residual = std::max(fit.residual, std::abs(nff[a][b] - fit.c * target[a][b]));
    return fit;
}

Theorem8Result theorem8_residual(const PointEval& pe) {
    Theorem8Result r;
    for (int xi = 0; xi < 2; ++xi)
        for (int z = 2; z < 4; ++z)
            for (int x = 2; x < 4; ++x)
                for (int y = 2; y < 4; ++y)
                    r.curvature = std::max(
                        r.curvature,
                        std::abs(curv4(pe.curv, pe.frame.value(z), pe.frame.value(x),
                                       pe.frame.value(xi), pe.frame.value(y))));
    Mat4d dt = exterior_derivative_1form(pe.lee.theta);
    auto dt_on = [&](const Vec4d& x, const Vec4d& y) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += dt[i][j] * x[i] * y[j];
        return s;
    };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Vec4d x = pe.frame.value(a), y = pe.frame.value(b);
            r.dtheta_anti = std::max(
                r.dtheta_anti,
                std::abs(dt_on(pe.apply_j(x), pe.apply_j(y)) + dt_on(x, y)));
        }
    int sign = orientation_sign(pe.os.omega_i);
    Mat4d star = hodge_star_2form(pe.m, dt, sign);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r.dtheta_asd = std::max(r.dtheta_asd, std::abs(0.5 * (dt[i][j] - star[i][j])));
    return r;
}

SemisymResiduals semisym_identities(const PointEval& pe) {
    SemisymResiduals out;
    // xi = theta^sharp with first-order-valid jets
    JetVec xi = mat_vec(pe.m.ginv, pe.lee.theta);
    Jet2 t2;
    for (int i = 0; i < 4; ++i) t2 += pe.lee.theta[i] * xi[i];
    if (t2.v < 1e-12) {
        out.vacuous = true;
        return out;
    }
    double tnorm = std::sqrt(t2.v);
    Vec4d xival = jet_values(xi);

    // (1) nabla_xi theta + |theta|^2 theta / 2 = 0
    {
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            double cov = 0.0;
            for (int mq = 0; mq < 4; ++mq) {
                double dtheta = pe.lee.theta[i].d[mq];
                for (int k = 0; k < 4; ++k) dtheta -= pe.gamma.G[k][mq][i] * pe.lee.theta[k].v;
                cov += xival[mq] * dtheta;
            }
            worst = std::max(worst, std::abs(cov + 0.5 * t2.v * pe.lee.theta[i].v));
        }
        out.nabla_theta = worst / (1.0 + tnorm * tnorm * tnorm);
    }

    // (2) xi |theta|^2 = -|theta|^4
    {
        double dir = 0.0;
        for (int i = 0; i < 4; ++i) dir += xival[i] * t2.d[i];
        out.xi_norm = std::abs(dir + t2.v * t2.v) / (1.0 + t2.v * t2.v);
    }

    // (3) [xi, J xi] = -|theta|^2 J xi
    {
        JetVec jxi = mat_vec(pe.J, xi);
        Vec4d br = lie_bracket(xi, jxi);
        double worst = 0.0;
        for (int i = 0; i < 4; ++i)
            worst = std::max(worst, std::abs(br[i] + t2.v * jxi[i].v));
        out.bracket = worst / (1.0 + tnorm * tnorm * tnorm);
    }

    // (4) eta = xi / |theta|^2 is holomorphic
    Mat4d jval;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) jval[i][j] = pe.J[i][j].v;
    auto holo_residual = [&](const JetVec& field) {
        Mat4d nf = covariant_derivative(pe.gamma, field);
        double scale = 1.0, worst = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) scale = std::max(scale, std::abs(nf[i][j]));
        for (int a = 0; a < 4; ++a) {
            Vec4d x = pe.frame.value(a);
            Vec4d jx = pe.apply_j(x);
            for (int i = 0; i < 4; ++i) {
                double njx = 0.0, jnx = 0.0;
                for (int j = 0; j < 4; ++j) {
                    njx += nf[i][j] * jx[j];
                    for (int k = 0; k < 4; ++k) jnx += jval[i][j] * nf[j][k] * x[k];
                }
                worst = std::max(worst, std::abs(njx - jnx));
            }
        }
        return worst / scale;
    };
    JetVec eta;
    Jet2 invt2 = inv(t2);
    for (int i = 0; i < 4; ++i) eta[i] = xi[i] * invt2;
    out.eta_holomorphic = holo_residual(eta);

    // (5) J eta is holomorphic and divergence free
    JetVec jeta = mat_vec(pe.J, eta);
    out.jeta = std::max(holo_residual(jeta), std::abs(divergence(pe.gamma, jeta)));
    return out;
}

JetVec grad_field_jets(const Chart& c, const ExprPtr& phi, const Vec4d& p) {
    auto val_grad = [&](const Vec4d& q, Vec4d& val, Mat4d& grad) {
        MetricValue m = metric_at(c, q);
        Jet2 f = eval_jet2(phi, q, c.params);
        for (int i = 0; i < 4; ++i) {
            val[i] = 0.0;
            for (int j = 0; j < 4; ++j) val[i] += m.ginvval[i][j] * f.d[j];
        }
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) {
                double s = 0.0;
                for (int j = 0; j < 4; ++j)
                    s += m.ginv[i][j].d[k] * f.d[j] + m.ginvval[i][j] * f.hess(j, k);
                grad[i][k] = s;
            }
    };
    Vec4d val;
    Mat4d grad;
    val_grad(p, val, grad);
    JetVec xi;
    for (int i = 0; i < 4; ++i) {
        xi[i].v = val[i];
        for (int k = 0; k < 4; ++k) xi[i].d[k] = grad[i][k];
    }
    // second derivatives by central differences of the exact gradient
    const double h = 1e-4;
    for (int l = 0; l < 4; ++l) {
        Vec4d vp, vm;
        Mat4d gp, gm;
        Vec4d qp = p, qm = p;
        qp[l] += h;
        qm[l] -= h;
        val_grad(qp, vp, gp);
        val_grad(qm, vm, gm);
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k) {
                double fd = (gp[i][k] - gm[i][k]) / (2.0 * h);
                if (k <= l)
                    xi[i].hess(k, l) = fd;
            }
    }
    return xi;
}

PointEval point_eval_with_field(const Chart& c, const JetVec& v, const Vec4d& p) {
    PointEval pe;
    pe.p = p;
    pe.m = metric_at(c, p);
    pe.J = complex_structure_jets_at(c, pe.m, p);
    pe.gamma = christoffel_at(pe.m);
    pe.curv = riemann_at(pe.m, pe.gamma);
    pe.v = v;
    pe.jv = mat_vec(pe.J, pe.v);
    pe.frame = adapted_frame(pe.m, pe.J, pe.v);
    pe.os = opposite_structure(pe.m, pe.J, pe.v);
    pe.lee = lee_form(pe.os);
    return pe;
}

Theorem9Verdict theorem9_suite(const Scene& scene, const std::vector<Vec4d>& points,
                               double tol) {
    Theorem9Verdict verdict;
    if (!scene.potential) {
        verdict.stages.push_back({"hessian", 0.0, false, "scene has no potential"});
        return verdict;
    }

    StageResult hess{"hessian", 0.0, false, ""};
    double cmin = 0.0, cmax = 0.0;
    bool first = true;
    std::vector<PointEval> evals;
    std::vector<JetVec> fields;
    evals.reserve(points.size());
    for (const Vec4d& p : points) {
        JetVec xi = grad_field_jets(scene.chart, scene.potential, p);
        PointEval pe = point_eval_with_field(scene.chart, xi, p);
        Jet2 phi = eval_jet2(scene.potential, p, scene.chart.params);
        ScalarFit fit = hessian_fit(pe.m, pe.gamma, phi);
        hess.residual = std::max(hess.residual, fit.residual);
        if (first) {
            cmin = cmax = fit.c;
            first = false;
        } else {
            cmin = std::min(cmin, fit.c);
            cmax = std::max(cmax, fit.c);
        }
        evals.push_back(std::move(pe));
        fields.push_back(xi);
    }
    verdict.hessian_c = 0.5 * (cmin + cmax);
    double spread = cmax - cmin;
    hess.pass = hess.residual < tol && spread < 10.0 * tol && std::abs(verdict.hessian_c) > tol;
    if (spread >= 10.0 * tol) hess.note = "c not constant across samples";
    if (std::abs(verdict.hessian_c) <= tol) hess.note = "c = 0";
    verdict.stages.push_back(hess);

    StageResult homothety{"parallel_homothety", 0.0, true, ""};
    for (size_t i = 0; i < evals.size(); ++i) {
        ScalarFit id_fit = homothety_fit(evals[i], fields[i], HomothetyMode::Identity);
        JetVec jxi = mat_vec(evals[i].J, fields[i]);
        ScalarFit j_fit = homothety_fit(evals[i], jxi, HomothetyMode::J);
        double r = std::max({id_fit.residual, j_fit.residual,
                             std::abs(id_fit.c - verdict.hessian_c),
                             std::abs(j_fit.c - verdict.hessian_c)});
        homothety.residual = std::max(homothety.residual, r);
    }
    homothety.pass = homothety.residual < 10.0 * tol;
    verdict.stages.push_back(homothety);

    StageResult fol{"foliation_audits", 0.0, true, ""};
    {
        std::vector<FoliationPointResiduals> rs;
        rs.reserve(evals.size());
        for (const auto& pe : evals) rs.push_back(foliation_residuals(pe));
        FoliationVerdict fv = theorem_verdicts(rs, points, tol);
        for (const auto& a : fv.audits)
            if (a.counterexample) {
                fol.pass = false;
                fol.note = "counterexample in " + a.id;
            }
        fol.residual = std::max({fv.totally_geodesic.max, fv.holomorphic.max,
                                 fv.conformal.max, fv.frobenius.max});
        fol.pass = fol.pass && fol.residual < 10.0 * tol;
    }
    verdict.stages.push_back(fol);

    StageResult decomp{"decomposition", 0.0, true, ""};
    StageResult semisym{"semi_symmetry", 0.0, true, ""};
    StageResult sampling{"qch_sampling", 0.0, true, ""};
    for (const auto& pe : evals) {
        DecompositionFit fit = fit_decomposition(pe, HConvention::E);
        if (!fit.flat_point) {
            decomp.residual = std::max(
                {decomp.residual, fit.residual, std::abs(fit.a), std::abs(fit.b)});
        }
        semisym.residual = std::max(semisym.residual, semi_symmetry_residual(pe));
        sampling.residual = std::max(sampling.residual, qch_sampling_residual(pe));
    }
    decomp.pass = decomp.residual < tol;
    semisym.pass = semisym.residual < tol;
    sampling.pass = sampling.residual < tol;
    verdict.stages.push_back(decomp);
    verdict.stages.push_back(semisym);
    verdict.stages.push_back(sampling);

    verdict.pass = true;
    for (const auto& st : verdict.stages) verdict.pass = verdict.pass && st.pass;
    return verdict;
}

}  // namespace folia
