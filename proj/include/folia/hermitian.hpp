#pragma once

#include "folia/calculus.hpp"

namespace folia {

/// Kahler form omega(X,Y) = g(JX,Y) with jets.
Form2Jet kahler_form(const MetricValue& m, const JetMat& J);

/// The opposite almost-Hermitian structure induced by a distribution:
/// I = J on Delta, I = -J on E, together with the split Kahler forms.
struct OppositeStructure {
    JetMat I;          // I^i_j with jets
    JetMat proj_delta; // P_Delta with jets
    Form2Jet omega_j;  // Omega_J
    Form2Jet omega_1;  // Delta part
    Form2Jet omega_2;  // E part
    Form2Jet omega_i;  // Omega_I = omega_1 - omega_2
};

OppositeStructure opposite_structure(const MetricValue& m, const JetMat& J, const JetVec& v);

/// Nijenhuis tensor of an endomorphism field with A^2 = -Id, on coordinate
/// fields: out[k][i][j] = N(di,dj)^k.
void nijenhuis(const JetMat& a, double out[4][4][4]);

double nijenhuis_max(const JetMat& a);

/// Lee form solved from lambda ^ Omega_I = d Omega_I; theta = lambda / 2.
/// The jets of theta are valid to first order (value and gradient), which
/// is what d theta and nabla theta need.
struct LeeForm {
    JetVec theta;
    double wedge_residual;  // |d Omega_I - 2 theta ^ Omega_I| after the solve
};

LeeForm lee_form(const OppositeStructure& os);

/// Max |theta(e3)|, |theta(e4)| over the E-frame, normalized.
double lee_e_component_residual(const LeeForm& lee, const AdaptedFrame& frame);

enum class G2Variant { Symmetric, Printed };

/// Residual of the second Gray curvature condition for the endomorphism A:
///   R(X,Y,Z,W) - R(AX,AY,Z,W) = R(AX,Y,AZ,W) + R(AX,Y,Z,AW)
/// maxed over the adapted frame. `Printed` evaluates the last argument with
/// J instead of A, matching the identity as printed.
double gray_g2_residual(const CurvatureValue& cv, const Mat4d& a, const Mat4d& j,
                        const AdaptedFrame& frame, G2Variant variant);

/// Pointwise Kahler residuals of the input structure: (max |nabla J|,
/// max |d Omega_J|).
struct KahlerResidual {
    double nabla_j;
    double d_omega_j;
};

KahlerResidual kahler_residual_at(const MetricValue& m, const JetMat& J,
                                  const Christoffel& gamma);

}  // namespace folia
