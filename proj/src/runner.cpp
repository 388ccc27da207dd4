#include "folia/runner.hpp"

#include <atomic>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <thread>

#include "folia/foliation.hpp"

namespace folia {

std::vector<std::string> suite_names() {
    return {"calculus", "kahler", "foliation", "qch", "theorem9"};
}

Suite parse_suite(const std::string& name) {
    if (name == "calculus") return Suite::Calculus;
    if (name == "kahler") return Suite::Kahler;
    if (name == "foliation") return Suite::Foliation;
    if (name == "qch") return Suite::Qch;
    if (name == "theorem9") return Suite::Theorem9;
    throw std::invalid_argument("unknown suite '" + name +
                                "' (expected calculus, kahler, foliation, qch or theorem9)");
}

int effective_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FOLIA_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

namespace {

enum class TolClass { Algebraic, Derived };

struct CheckMeta {
    const char* anchor;
    TolClass tol;
};

const std::map<std::string, CheckMeta>& check_meta() {
    static const std::map<std::string, CheckMeta> table = {
        {"calculus/christoffel_symmetry", {"Levi-Civita: Gamma^k_ij = Gamma^k_ji", TolClass::Algebraic}},
        {"calculus/metric_compatibility", {"Levi-Civita: nabla g = 0", TolClass::Algebraic}},
        {"calculus/curvature_symmetries", {"Riemann symmetries and first Bianchi", TolClass::Algebraic}},
        {"calculus/curvature_lowering", {"R_ijkl = g_ml R^m_ijk", TolClass::Algebraic}},
        {"kahler/j_squared", {"J^2 = -Id", TolClass::Algebraic}},
        {"kahler/metric_hermitian", {"g(JX,JY) = g(X,Y)", TolClass::Algebraic}},
        {"kahler/nijenhuis_j", {"N_J = 0 (J integrable)", TolClass::Algebraic}},
        {"kahler/nabla_j", {"nabla J = 0 (Kahler)", TolClass::Algebraic}},
        {"kahler/d_omega_j", {"d Omega_J = 0 (Kahler)", TolClass::Algebraic}},
        {"kahler/nijenhuis_i", {"N_I = 0 (opposite structure integrable)", TolClass::Derived}},
        {"kahler/lee_wedge", {"d Omega_I = 2 theta ^ Omega_I (Lee form)", TolClass::Derived}},
        {"kahler/lee_e_component", {"theta vanishes on E", TolClass::Derived}},
        {"kahler/g2_i", {"second Gray condition G2 for I", TolClass::Derived}},
        {"kahler/g2_i_symmetric", {"second Gray condition G2 for I (symmetric variant)", TolClass::Derived}},
        {"foliation/frobenius", {"Theorem 1: [v,Jv] tangent to Delta", TolClass::Derived}},
        {"foliation/frobenius_e", {"[e3,e4] tangent to E", TolClass::Derived}},
        {"foliation/theorem1", {"Theorem 1: d omega_2 = phi ^ omega_2 solvable", TolClass::Derived}},
        {"foliation/totally_geodesic", {"Theorem 2/5: leaves totally geodesic", TolClass::Derived}},
        {"foliation/holomorphic", {"Theorem 4: L_X J preserves Delta sections", TolClass::Derived}},
        {"foliation/quasi_holomorphic", {"Theorem 5: quasi-holomorphic condition", TolClass::Derived}},
        {"foliation/conformal", {"Theorem 6 (b): E-conformal sections", TolClass::Derived}},
        {"foliation/star_identity", {"Theorem 6 (*): 2g(nabla_X xi, Y) on E", TolClass::Derived}},
        {"foliation/corollary1", {"Corollary 1: bracket and skew identities", TolClass::Derived}},
        {"foliation/lemma", {"Lemma: (nabla_X omega_2)(Y,Z) = 0, X in Delta, Y,Z in E", TolClass::Derived}},
        {"foliation/dtheta_split", {"Remark: d theta vanishes on Delta x Delta and E x E", TolClass::Derived}},
        {"foliation/dtheta", {"Theorem 6 (c): d theta = 0", TolClass::Derived}},
        {"foliation/ker_nabla_i", {"nabla_X I = 0 for X in Delta", TolClass::Derived}},
        {"foliation/d_omega_i", {"d Omega_I = 0 (I almost-Kahler)", TolClass::Derived}},
        {"foliation/homothetic", {"Theorem 6: homothetic foliation", TolClass::Derived}},
        {"qch/decomposition", {"QCH: R = a Pi + b Phi + c Psi", TolClass::Derived}},
        {"qch/sampling", {"QCH: K(X) depends only on |X_Delta|", TolClass::Derived}},
        {"qch/semi_symmetry", {"R . R = 0 (semi-symmetric)", TolClass::Derived}},
        {"qch/theorem8_curvature", {"Theorem 8: g(R(Z,X)xi,Y) = 0 mixed", TolClass::Derived}},
        {"qch/theorem8_dtheta_anti", {"Theorem 8: d theta J-anti-invariant", TolClass::Derived}},
        {"qch/theorem8_dtheta_asd", {"Theorem 8: d theta anti-self-dual", TolClass::Derived}},
        {"qch/semisym_block", {"semi-symmetric block: xi = theta-sharp identities", TolClass::Derived}},
    };
    return table;
}

struct PointOutcome {
    bool evaluated = false;
    bool skipped_domain = false;
    std::string hard_error;  // nonempty: GeometryError (exit-3 class)
    std::vector<std::pair<std::string, double>> residuals;
    FoliationPointResiduals fol{};
    bool has_fol = false;
    double d_omega_j_gate = 0.0;
};

bool has_suite(const std::vector<Suite>& suites, Suite s) {
    for (Suite x : suites)
        if (x == s) return true;
    return false;
}

Mat4d jet_values(const JetMat& a) {
    Mat4d r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j].v;
    return r;
}

PointOutcome eval_point(const Scene& scene, const RunOptions& opt, const Vec4d& p,
                        bool need_full, bool need_gate) {
    PointOutcome out;
    auto rec = [&out](const char* id, double r) { out.residuals.emplace_back(id, r); };
    try {
        MetricValue m = metric_at(scene.chart, p);
        Christoffel gamma = christoffel_at(m);
        CurvatureValue curv = riemann_at(m, gamma);

        if (has_suite(opt.suites, Suite::Calculus)) {
            double gsym = 0.0;
            for (int k = 0; k < 4; ++k)
                for (int i = 0; i < 4; ++i)
                    for (int j = 0; j < 4; ++j)
                        gsym = std::max(gsym, std::abs(gamma.G[k][i][j] - gamma.G[k][j][i]));
            rec("calculus/christoffel_symmetry", gsym);
            rec("calculus/metric_compatibility", nabla_g_residual(m, gamma));
            rec("calculus/curvature_symmetries", curv.symmetry_residual());
            double lower = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        for (int l = 0; l < 4; ++l) {
                            double s = 0.0;
                            for (int mm = 0; mm < 4; ++mm)
                                s += m.gval[mm][l] * curv.Rup[mm][i][j][k];
                            lower = std::max(lower, std::abs(curv.R[i][j][k][l] - s));
                        }
            rec("calculus/curvature_lowering", lower);
        }

        if (need_full) {
            PointEval pe = point_eval(scene.chart, scene.dist, p);
            if (need_gate) {
                KahlerResidual kr = kahler_residual_at(pe.m, pe.J, pe.gamma);
                out.d_omega_j_gate = std::max(kr.nabla_j, kr.d_omega_j);
                if (has_suite(opt.suites, Suite::Kahler)) {
                    JCompatibility jc = j_compatibility(pe.m, pe.J);
                    rec("kahler/j_squared", jc.j_squared_residual);
                    rec("kahler/metric_hermitian", jc.metric_residual);
                    rec("kahler/nijenhuis_j", nijenhuis_max(pe.J));
                    rec("kahler/nabla_j", kr.nabla_j);
                    rec("kahler/d_omega_j", kr.d_omega_j);
                    rec("kahler/nijenhuis_i", nijenhuis_max(pe.os.I));
                    rec("kahler/lee_wedge", pe.lee.wedge_residual);
                    rec("kahler/lee_e_component", lee_e_component_residual(pe.lee, pe.frame));
                    Mat4d iv = jet_values(pe.os.I);
                    Mat4d jv = jet_values(pe.J);
                    rec("kahler/g2_i",
                        gray_g2_residual(pe.curv, iv, jv, pe.frame, opt.g2_variant));
                    if (opt.g2_variant == G2Variant::Printed)
                        rec("kahler/g2_i_symmetric",
                            gray_g2_residual(pe.curv, iv, jv, pe.frame, G2Variant::Symmetric));
                }
            }
            if (has_suite(opt.suites, Suite::Foliation)) {
                out.fol = foliation_residuals(pe);
                out.has_fol = true;
                rec("foliation/frobenius", out.fol.frobenius);
                rec("foliation/frobenius_e", out.fol.frobenius_e);
                rec("foliation/theorem1", out.fol.theorem1);
                rec("foliation/totally_geodesic", out.fol.totally_geodesic);
                rec("foliation/holomorphic", out.fol.holomorphic);
                rec("foliation/quasi_holomorphic", out.fol.quasi_holomorphic);
                rec("foliation/conformal", out.fol.conformal);
                rec("foliation/star_identity", out.fol.star_identity);
                rec("foliation/corollary1", out.fol.corollary1);
                rec("foliation/lemma", out.fol.lemma);
                rec("foliation/dtheta_split", out.fol.dtheta_split);
                rec("foliation/dtheta", out.fol.dtheta);
                rec("foliation/ker_nabla_i", out.fol.ker_nabla_i);
                rec("foliation/d_omega_i", out.fol.d_omega_i);
                rec("foliation/homothetic", out.fol.homothetic);
            }
            if (has_suite(opt.suites, Suite::Qch)) {
                DecompositionFit fit = fit_decomposition(pe, opt.h_convention);
                rec("qch/decomposition", fit.flat_point ? 0.0 : fit.residual);
                rec("qch/sampling", qch_sampling_residual(pe));
                rec("qch/semi_symmetry", semi_symmetry_residual(pe));
                Theorem8Result t8 = theorem8_residual(pe);
                rec("qch/theorem8_curvature", t8.curvature);
                rec("qch/theorem8_dtheta_anti", t8.dtheta_anti);
                rec("qch/theorem8_dtheta_asd", t8.dtheta_asd);
                SemisymResiduals ss = semisym_identities(pe);
                rec("qch/semisym_block", ss.vacuous ? 0.0 : ss.max_residual());
            }
        }
        out.evaluated = true;
    } catch (const EvalDomainError&) {
        out.skipped_domain = true;
        out.residuals.clear();
    } catch (const GeometryError& err) {
        out.hard_error = err.what();
        out.residuals.clear();
    }
    return out;
}

std::string verdict_name(Band b) {
    switch (b) {
        case Band::Pass: return "pass";
        case Band::Fail: return "fail";
        default: return "indeterminate";
    }
}

Json audit_json(const AuditRecord& a) {
    Json j;
    j["id"] = a.id;
    j["anchor"] = a.anchor;
    j["is_implication"] = a.is_implication;
    j["points"] = static_cast<long long>(a.points);
    j["agreements"] = static_cast<long long>(a.agreements);
    j["indeterminate"] = static_cast<long long>(a.indeterminate);
    j["counterexample"] = a.counterexample;
    if (a.counterexample) {
        j["witness"] = Json::array({a.witness[0], a.witness[1], a.witness[2], a.witness[3]});
        j["witness_lhs"] = a.witness_lhs;
        j["witness_rhs"] = a.witness_rhs;
    }
    return j;
}

}  // namespace

RunResult run(const Scene& scene, const RunOptions& options) {
    RunResult result;
    Json& doc = result.report;

    char digest[32];
    std::snprintf(digest, sizeof(digest), "%016llx", scene_digest(scene));
    doc["engine"] = Json{{"name", "folia"}, {"version", kEngineVersion}};
    doc["scene"] = Json{{"name", scene.name}, {"digest", digest}};
    doc["tolerances"] =
        Json{{"algebraic", options.tol_algebraic}, {"derived", options.tol_derived}};
    doc["conventions"] = Json{
        {"lee_sign", "d Omega_I = +2 theta ^ Omega_I"},
        {"corollary1_signs", "+,+"},
        {"g2_variant", options.g2_variant == G2Variant::Printed ? "printed" : "symmetric"},
        {"h_convention", options.h_convention == HConvention::E ? "E" : "Delta"},
    };
    Json suites = Json::array();
    for (Suite s : options.suites) suites.push_back(suite_names()[static_cast<int>(s)]);
    doc["suites"] = suites;

    auto finish = [&](int code, const std::string& error) {
        doc["exit_code"] = code;
        if (!error.empty()) doc["error"] = error;
        result.exit_code = code;
        return result;
    };

    std::vector<Vec4d> points;
    try {
        points = sample_plan(scene, options.samples, options.seed);
    } catch (const std::exception& err) {
        doc["samples"] = Json{{"requested", options.samples},
                              {"seed", static_cast<unsigned long long>(options.seed)},
                              {"evaluated", 0},
                              {"skipped", 0}};
        doc["checks"] = Json::array();
        doc["audits"] = Json::array();
        return finish(2, std::string("sampling failed: ") + err.what());
    }

    const bool need_gate = has_suite(options.suites, Suite::Kahler) ||
                           has_suite(options.suites, Suite::Qch) ||
                           has_suite(options.suites, Suite::Theorem9);
    const bool need_full = need_gate || has_suite(options.suites, Suite::Foliation) ||
                           has_suite(options.suites, Suite::Qch);

    std::vector<PointOutcome> outcomes(points.size());
    const int workers =
        std::max(1, std::min<int>(effective_thread_count(options.threads),
                                  static_cast<int>(points.size() ? points.size() : 1)));
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            outcomes[i] = eval_point(scene, options, points[i], need_full, need_gate);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // deterministic ordered reduction keyed by sample index
    std::map<std::string, ResidualStats> stats;
    std::vector<FoliationPointResiduals> fol;
    std::vector<Vec4d> fol_points;
    long evaluated = 0, skipped = 0;
    double gate_residual = 0.0;
    std::string hard_error;
    for (size_t i = 0; i < outcomes.size(); ++i) {
        const PointOutcome& o = outcomes[i];
        if (!o.hard_error.empty() && hard_error.empty()) hard_error = o.hard_error;
        if (o.skipped_domain) {
            ++skipped;
            continue;
        }
        if (!o.evaluated) continue;
        ++evaluated;
        gate_residual = std::max(gate_residual, o.d_omega_j_gate);
        for (const auto& [id, r] : o.residuals) {
            stats[id].add(r);
            result.rows.push_back(CsvRow{points[i], id, r});
        }
        if (o.has_fol) {
            fol.push_back(o.fol);
            fol_points.push_back(points[i]);
        }
    }

    doc["samples"] = Json{{"requested", options.samples},
                          {"seed", static_cast<unsigned long long>(options.seed)},
                          {"evaluated", static_cast<long long>(evaluated)},
                          {"skipped", static_cast<long long>(skipped)}};

    Json checks = Json::array();
    for (const auto& [id, st] : stats) {
        auto meta = check_meta().find(id);
        double tol = meta != check_meta().end() && meta->second.tol == TolClass::Algebraic
                         ? options.tol_algebraic
                         : options.tol_derived;
        Json c;
        c["id"] = id;
        c["anchor"] = meta != check_meta().end() ? meta->second.anchor : "";
        c["n"] = static_cast<long long>(st.count);
        c["max"] = st.max;
        c["mean"] = st.mean();
        c["tolerance"] = tol;
        c["verdict"] = verdict_name(classify(st.max, tol));
        checks.push_back(c);
    }
    doc["checks"] = checks;
    doc["audits"] = Json::array();

    if (!hard_error.empty())
        return finish(3, std::string("geometry failure inside the region: ") + hard_error);
    if (evaluated == 0) return finish(3, "no sample point could be evaluated");
    if (skipped * 10 > static_cast<long>(points.size()))
        return finish(3, "jet domain errors on more than 10% of the samples");

    if (need_gate && gate_residual > 1e-4)
        return finish(2, "scene rejected as non-Kahler (nabla J / d Omega_J residual " +
                             std::to_string(gate_residual) + ") while a theorem suite was requested");

    bool counterexample = false;
    if (!fol.empty()) {
        FoliationVerdict fv = theorem_verdicts(fol, fol_points, options.tol_derived);
        Json audits = Json::array();
        for (const auto& a : fv.audits) audits.push_back(audit_json(a));
        doc["audits"] = audits;
        counterexample = fv.any_counterexample();
    }

    if (has_suite(options.suites, Suite::Theorem9)) {
        if (!scene.potential)
            return finish(2, "theorem9 suite requires a scene potential");
        Theorem9Verdict t9 = theorem9_suite(scene, points, options.tol_derived);
        Json stages = Json::array();
        for (const auto& s : t9.stages) {
            Json j;
            j["name"] = s.name;
            j["residual"] = s.residual;
            j["pass"] = s.pass;
            if (!s.note.empty()) j["note"] = s.note;
            stages.push_back(j);
        }
        doc["theorem9"] = Json{{"stages", stages}, {"hessian_c", t9.hessian_c}, {"pass", t9.pass}};
    }

    return finish(counterexample ? 1 : 0, "");
}

}  // namespace folia
