#pragma once

#include <string>
#include <vector>

#include "folia/point_eval.hpp"

namespace folia {

/// All per-point residuals for the foliation predicates. Residual values
/// are nonnegative; verdicts are residual/tolerance comparisons and
/// nothing else.
struct FoliationPointResiduals {
    double frobenius = 0.0;          // [v,Jv] has no E-component
    double frobenius_e = 0.0;        // [e3,e4] has no Delta-component
    double theorem1 = 0.0;           // d omega_2 = phi ^ omega_2 solvable
    double totally_geodesic = 0.0;
    double holomorphic = 0.0;
    double quasi_holomorphic = 0.0;
    double conformal = 0.0;
    double alpha_v = 0.0;            // fitted proportionality constants
    double alpha_jv = 0.0;
    double theta_v = 0.0;            // canonical theta on the same sections
    double theta_jv = 0.0;
    double star_identity = 0.0;
    double corollary1 = 0.0;
    double lemma = 0.0;              // (nabla_X omega_2)(Y,Z), X in Delta, Y,Z in E
    double dtheta_split = 0.0;       // d theta on Delta x Delta and E x E
    double dtheta = 0.0;             // full |d theta|
    double nijenhuis_i = 0.0;
    double ker_nabla_i = 0.0;        // |nabla_X I| for X in Delta
    double d_omega_i = 0.0;          // |d Omega_I| (almost-Kahler residual)
    double homothetic = 0.0;         // conformal + d(alpha) ~ d theta
};

double frobenius_residual(const PointEval& pe);
double frobenius_e_residual(const PointEval& pe);

struct Theorem1Fit {
    double residual;
    Vec4d phi;
};
Theorem1Fit theorem1_fit(const PointEval& pe);

double totally_geodesic_residual(const PointEval& pe);
double holomorphic_residual(const PointEval& pe);
double quasi_holomorphic_residual(const PointEval& pe);

struct ConformalFit {
    double residual;
    double alpha_v, alpha_jv;   // fitted constants for sections e1, e2
    double theta_v, theta_jv;   // canonical theta on the same sections
};
ConformalFit conformal_fit(const PointEval& pe);

double star_identity_residual(const PointEval& pe);
double corollary1_residual(const PointEval& pe);
double lemma_residual(const PointEval& pe);
double dtheta_split_residual(const PointEval& pe);
double ker_nabla_i_residual(const PointEval& pe);

FoliationPointResiduals foliation_residuals(const PointEval& pe);

struct ResidualStats {
    double max = 0.0;
    double sum = 0.0;
    long count = 0;
    void add(double r) {
        if (r > max) max = r;
        sum += r;
        ++count;
    }
    double mean() const { return count ? sum / count : 0.0; }
};

enum class Band { Pass, Indeterminate, Fail };

/// Two-band threshold: pass below tol, fail above 10x tol, indeterminate
/// in between (flagged for resampling rather than treated as evidence).
inline Band classify(double residual, double tol) {
    if (residual < tol) return Band::Pass;
    if (residual > 10.0 * tol) return Band::Fail;
    return Band::Indeterminate;
}

struct AuditRecord {
    std::string id;
    std::string anchor;        // human-readable statement of the equivalence
    bool is_implication;       // one-directional (premise => conclusion)
    long points = 0;
    long agreements = 0;
    long indeterminate = 0;
    bool counterexample = false;
    Vec4d witness{};
    double witness_lhs = 0.0;
    double witness_rhs = 0.0;
};

struct FoliationVerdict {
    ResidualStats frobenius, frobenius_e, theorem1, totally_geodesic, holomorphic,
        quasi_holomorphic, conformal, star_identity, corollary1, lemma,
        dtheta_split, nijenhuis_i, ker_nabla_i, d_omega_i, homothetic;
    std::vector<double> alpha_v, alpha_jv, theta_v, theta_jv;
    std::vector<AuditRecord> audits;
    bool any_counterexample() const {
        for (const auto& a : audits)
            if (a.counterexample) return true;
        return false;
    }
};

/// Evaluates the predicates at every point of the plan and audits the
/// equivalences of Theorems 1, 2, 4, 5, 6 and Corollary 2. An audit
/// failure (one side small, the other large at the same point) is
/// reported as a counterexample with the witness point.
FoliationVerdict theorem_verdicts(const std::vector<FoliationPointResiduals>& residuals,
                                  const std::vector<Vec4d>& points, double tol);

}  // namespace folia
