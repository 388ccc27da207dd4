#pragma once

#include "folia/foliation.hpp"
#include "folia/scene.hpp"

namespace folia {

enum class HConvention { E, Delta };

/// h(X,Y) = g(X_E, Y_E) (convention E) or g(X_Delta, Y_Delta) (Delta),
/// as a coordinate-basis bilinear value.
Mat4d h_tensor(const PointEval& pe, HConvention conv);

/// The three curvature-type basis tensors built from g, J and h.
struct BasisTensors {
    double Pi[4][4][4][4];
    double Phi[4][4][4][4];
    double Psi[4][4][4][4];
};

BasisTensors basis_tensors(const Mat4d& g, const Mat4d& J, const Mat4d& h);

struct DecompositionFit {
    double a = 0.0, b = 0.0, c = 0.0;
    double residual = 0.0;  // ||R - a Pi - b Phi - c Psi|| / ||R||
    HConvention convention = HConvention::E;
    bool flat_point = false;  // ||R|| below 1e-12: fit skipped, a=b=c=0
};

DecompositionFit fit_decomposition(const PointEval& pe, HConvention conv);
/// Tries both h-conventions, returns the better fit.
DecompositionFit fit_decomposition(const PointEval& pe);

/// Max spread of the holomorphic sectional curvature K(X) = R(X,JX,JX,X)
/// within each class of unit vectors with fixed |X_Delta|^2 in
/// {0, 1/4, 1/2, 3/4, 1}, phases swept inside Delta and E.
double qch_sampling_residual(const PointEval& pe, int phases = 8);

/// Max over frame 6-tuples of |(R(X,Y).R)(Z,U,V,W)| with the derivation
/// action (R(X,Y).R)(Z,U,V,W) = -R(R(X,Y)Z,U,V,W) - ... - R(Z,U,V,R(X,Y)W).
double semi_symmetry_residual(const PointEval& pe);

struct ScalarFit {
    double c = 0.0;
    double residual = 0.0;
};

/// Best-fit scalar with H^phi = c g; computed in endomorphism form so the
/// fit is frame-invariant.
ScalarFit hessian_fit(const MetricValue& m, const Christoffel& gamma, const Jet2& phi);

enum class HomothetyMode { Identity, J };

/// Fit nabla F against c Id or c J in the adapted frame.
ScalarFit homothety_fit(const PointEval& pe, const JetVec& field, HomothetyMode mode);

struct Theorem8Result {
    double curvature = 0.0;    // max |g(R(Z,X)xi,Y)|, xi in Delta, X,Z,Y in E
    double dtheta_anti = 0.0;  // max |dtheta(JX,JY) + dtheta(X,Y)|
    double dtheta_asd = 0.0;   // anti-self-dual part of dtheta, I-orientation
};

Theorem8Result theorem8_residual(const PointEval& pe);

/// Residuals of the five identities of the semi-symmetric block, with
/// xi := theta^sharp. `vacuous` marks points where theta = 0.
struct SemisymResiduals {
    double nabla_theta = 0.0;   // nabla_xi theta + |theta|^2 theta / 2
    double xi_norm = 0.0;       // xi|theta|^2 + |theta|^4
    double bracket = 0.0;       // [xi, Jxi] + |theta|^2 Jxi
    double eta_holomorphic = 0.0;
    double jeta = 0.0;          // J eta holomorphic and divergence free
    bool vacuous = false;

    double max_residual() const {
        return std::max({nabla_theta, xi_norm, bracket, eta_holomorphic, jeta});
    }
};

SemisymResiduals semisym_identities(const PointEval& pe);

/// Jets of grad(phi): value and gradient are exact (from the metric and
/// potential jets); the Hessian entries are completed by central finite
/// differences of the exact gradient, since they would need third
/// derivatives of phi.
JetVec grad_field_jets(const Chart& c, const ExprPtr& phi, const Vec4d& p);

/// Point evaluation with an externally supplied spanning field (used when
/// the distribution is derived, e.g. span{grad phi, J grad phi}).
PointEval point_eval_with_field(const Chart& c, const JetVec& v, const Vec4d& p);

struct StageResult {
    std::string name;
    double residual = 0.0;
    bool pass = false;
    std::string note;
};

struct Theorem9Verdict {
    std::vector<StageResult> stages;
    double hessian_c = 0.0;
    bool pass = false;
};

/// The pipeline of Theorem 9's constructive direction: Hessian
/// proportionality, parallel homothety of grad phi and J grad phi, the
/// foliation audits for Delta = span{grad phi, J grad phi}, the curvature
/// decomposition (expecting a = b = 0), semi-symmetry, and QCH sampling.
Theorem9Verdict theorem9_suite(const Scene& scene, const std::vector<Vec4d>& points,
                               double tol);

}  // namespace folia
