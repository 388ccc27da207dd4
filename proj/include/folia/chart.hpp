#pragma once

#include <map>
#include <string>
#include <vector>

#include "folia/expr.hpp"
#include "folia/linalg.hpp"

namespace folia {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// How the complex structure of a chart is specified.
enum class JSpecKind {
    Standard,  // J d1 = d2, J d3 = d4 on the coordinate frame
    Explicit,  // 16 expressions for J^i_j
    FromForm,  // 6 expressions for a 2-form; J^i_j = g^{ik} Omega_{jk}
};

/// Index of the 2-form component pair order (01,02,03,12,13,23).
constexpr int form2_pair_index(int i, int j) {
    static_assert(true);
    // pairs in lexicographic order for i<j
    constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return table[i][j];
}

/// A coordinate patch: metric components, complex-structure specification
/// and named parameters. Immutable after construction.
struct Chart {
    std::array<std::string, 4> coords;
    Params params;
    std::array<ExprPtr, kSymSize> metric;  // g_{ij}, packed upper triangle
    JSpecKind jspec = JSpecKind::Standard;
    std::array<ExprPtr, 16> jcomp{};   // Explicit: J^i_j at [i*4+j]
    std::array<ExprPtr, 6> form{};     // FromForm: Omega_{ij}, i<j

    std::vector<std::string> param_names() const {
        std::vector<std::string> names;
        for (const auto& [k, v] : params) names.push_back(k);
        return names;
    }
};

/// A J-invariant 2-plane field given by one spanning vector field v;
/// the plane is span{v, Jv}.
struct Distribution {
    std::array<ExprPtr, 4> v;
};

/// Metric data at a point: values, inverse and full second-order jets.
struct MetricValue {
    Mat4<Jet2> g;     // exact to second order
    Mat4<Jet2> ginv;  // exact to second order (jets through the LU solve)
    Mat4d gval;
    Mat4d ginvval;
    double det = 0.0;
};

MetricValue metric_at(const Chart& c, const Vec4d& p);

/// J^i_j with jets; throws on degenerate from-form input or when
/// J^2 + Id exceeds tol (misconfigured scene).
JetMat complex_structure_jets_at(const Chart& c, const MetricValue& m, const Vec4d& p,
                                 double tol = 1e-6);

Mat4d complex_structure_at(const Chart& c, const Vec4d& p);

/// ||J^2 + Id||_max and max |g(JX,JY) - g(X,Y)| over the coordinate frame.
struct JCompatibility {
    double j_squared_residual;
    double metric_residual;
};
JCompatibility j_compatibility(const MetricValue& m, const JetMat& J);

/// Orthonormal tangent frame (e1, e2 = J e1, e3, e4 = J e3) with
/// e1,e2 spanning Delta and e3,e4 spanning E = Delta-perp, carried with
/// jets so frame fields can be differentiated.
struct AdaptedFrame {
    std::array<JetVec, 4> e;

    Vec4d value(int a) const {
        return {e[a][0].v, e[a][1].v, e[a][2].v, e[a][3].v};
    }
};

JetVec distribution_vector_jets(const Chart& c, const Distribution& d, const Vec4d& p);

/// Gram-Schmidt on (v, Jv, w, Jw); w is the lowest-index coordinate vector
/// whose E-projection has norm above 1e-8, which makes the frame
/// deterministic and reproducible.
AdaptedFrame adapted_frame(const Chart& c, const Distribution& d, const Vec4d& p);
AdaptedFrame adapted_frame(const MetricValue& m, const JetMat& J, const JetVec& v);

enum class PlanePart { Delta, E };

/// g-orthogonal projection of X onto Delta or E at p.
Vec4d project(const Chart& c, const Distribution& d, const Vec4d& p, const Vec4d& x,
              PlanePart part);

/// Projector matrices with jets: P_Delta = v v^flat/|v|^2 + Jv (Jv)^flat/|Jv|^2.
JetMat delta_projector(const MetricValue& m, const JetVec& v, const JetMat& J);

}  // namespace folia
