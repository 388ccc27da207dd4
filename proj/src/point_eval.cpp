#include "folia/point_eval.hpp"

namespace folia {

PointEval point_eval(const Chart& c, const Distribution& d, const Vec4d& p) {
    PointEval pe;
    pe.p = p;
    pe.m = metric_at(c, p);
    pe.J = complex_structure_jets_at(c, pe.m, p);
    pe.gamma = christoffel_at(pe.m);
    pe.curv = riemann_at(pe.m, pe.gamma);
    pe.v = distribution_vector_jets(c, d, p);
    pe.jv = mat_vec(pe.J, pe.v);
    pe.frame = adapted_frame(pe.m, pe.J, pe.v);
    pe.os = opposite_structure(pe.m, pe.J, pe.v);
    pe.lee = lee_form(pe.os);
    return pe;
}

}  // namespace folia
