#pragma once

#include "folia/chart.hpp"

namespace folia {

/// Levi-Civita connection coefficients at a point, with their first
/// derivatives (needed for curvature). Gamma^k_{ij} is symmetric in (i,j).
struct Christoffel {
    double G[4][4][4];       // G[k][i][j]
    double dG[4][4][4][4];   // dG[m][k][i][j] = d_m Gamma^k_{ij}
};

Christoffel christoffel_at(const MetricValue& m);
Christoffel christoffel_at(const Chart& c, const Vec4d& p);

/// Lowered curvature R[i][j][k][l] = R(di,dj,dk,dl) = g(R(di,dj)dk, dl)
/// for R(X,Y)Z = ([nabla_X,nabla_Y] - nabla_[X,Y])Z, plus the endomorphism
/// form Rup[l][i][j][k]: R(di,dj)dk = Rup[l][i][j][k] dl.
struct CurvatureValue {
    double R[4][4][4][4];
    double Rup[4][4][4][4];

    /// Largest violation of (1,2)/(3,4) antisymmetry, pair symmetry and the
    /// first Bianchi identity.
    double symmetry_residual() const;
};

CurvatureValue riemann_at(const MetricValue& m, const Christoffel& gamma);
CurvatureValue riemann_at(const Chart& c, const Vec4d& p);

/// (nabla F)^i_j = d_j F^i + Gamma^i_{jk} F^k for a vector field given by
/// its jets at the point.
Mat4d covariant_derivative(const Christoffel& gamma, const JetVec& f);

/// Covariant derivative of an endomorphism field:
/// (nabla A)^i_{m j} = d_m A^i_j + Gamma^i_{mk} A^k_j - Gamma^k_{mj} A^i_k,
/// returned as nabla[m][i][j].
void covariant_derivative_endo(const Christoffel& gamma, const JetMat& a,
                               double out[4][4][4]);

/// [X,Y]^i = X^j d_j Y^i - Y^j d_j X^i from component jets.
Vec4d lie_bracket(const JetVec& x, const JetVec& y);

/// (L_V g)_{ij} = V^m d_m g_{ij} + g_{mj} d_i V^m + g_{im} d_j V^m.
Mat4d lie_derivative_metric(const MetricValue& m, const JetVec& v);

/// (L_V A)^i_j for an endomorphism field A (e.g. the complex structure):
/// (L_V A)X = [V, AX] - A[V, X] on coordinate fields.
Mat4d lie_derivative_endo(const JetVec& v, const JetMat& a);

/// 2-form with jets, stored as the full antisymmetric component matrix.
struct Form2Jet {
    Jet2 c[4][4];

    double val(int i, int j) const { return c[i][j].v; }
};

/// 3-form value, full antisymmetric components.
struct Form3Value {
    double c[4][4][4] = {};
    double max_abs() const;
};

/// (d theta)_{ij} = d_i theta_j - d_j theta_i for a 1-form with jets.
Mat4d exterior_derivative_1form(const JetVec& theta);

/// (d w)_{ijk} = d_i w_jk - d_j w_ik + d_k w_ij.
Form3Value exterior_derivative_2form(const Form2Jet& w);

/// (phi ^ w)_{ijk} = phi_i w_jk - phi_j w_ik + phi_k w_ij.
Form3Value wedge_1_2(const Vec4d& phi, const Form2Jet& w);

/// Scalar coefficient of a^b against d1^d2^d3^d4.
double wedge_2_2(const Form2Jet& a, const Form2Jet& b);

/// Hessian H_{ij} = d_i d_j phi - Gamma^k_{ij} d_k phi of a scalar jet.
Mat4d hessian(const Christoffel& gamma, const Jet2& phi);

/// Hodge star on 2-forms; `orientation_sign` is +1 when the volume form of
/// the chosen structure agrees with sqrt(det g) d1^d2^d3^d4 and -1 otherwise
/// (the I-orientation is opposite to the J-orientation).
Mat4d hodge_star_2form(const MetricValue& m, const Mat4d& beta, int orientation_sign);

/// Orientation sign of a structure from its Kahler form: sign of
/// (Omega ^ Omega) against the coordinate 4-form.
int orientation_sign(const Form2Jet& omega);

/// Trace of nabla V.
double divergence(const Christoffel& gamma, const JetVec& v);

/// Componentwise max of |nabla g| (metric compatibility check).
double nabla_g_residual(const MetricValue& m, const Christoffel& gamma);

}  // namespace folia
