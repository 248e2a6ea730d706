// Cohomological degree machinery. Two related tools live here:
//
//  * degree_part: the part of a rational function with total degree i in the
//    equivariant variables (lambda/m/w). Fast path splits homogeneous
//    numerators against homogeneous denominator factors; the general path
//    rescales every graded variable by b and expands in b.
//
//  * graded_expand: substitute x ^ w -> exp(b * w * weight(x)) for every
//    multiplicative variable x and expand as a Laurent series in b. This is
//    how K-theoretic values acquire a cohomological degree filtration, e.g.
//    1/(1-t1) becomes -1/(b*l1) + 1/2 - b*l1/12 + ...
#pragma once

#include "qvx/series.hpp"

#include <map>

namespace qvx {

// weight map: variable code -> linear form in the cohomology variables
using WeightMap = std::map<std::uint16_t, MPoly>;

// t_i -> l_i, y_i -> m_i, v_j -> w_j for all indices present in f.
WeightMap default_weights(const RatFun& f);

// The linear form a monomial is graded by: sum over its variables of exponent
// times the variable's weight. Variables absent from the map contribute
// nothing, matching graded_expand's partial-grading rule.
MPoly monomial_weight(const Monomial& m, const WeightMap& weights);

// Expand under x^w -> exp(gvar * w * weight(x)) as a Laurent series in gvar.
// Only variables present in the weight map are graded; others stay symbolic
// inside the coefficients. Explicit powers of gvar already present in f shift
// the series directly, so limit computations can mix substituted
// gvar-dependent values with graded multiplicative variables.
TruncSeries graded_expand(const RatFun& f, const WeightMap& weights, int order,
                          VarId gvar = var_b());

// Degree-i part over the lambda/m/w grading (b-scaling definition).
RatFun degree_part(const RatFun& f, std::int64_t i);

// All nonzero degree parts in the window [lo, hi].
std::map<std::int64_t, RatFun> degree_parts(const RatFun& f, std::int64_t lo, std::int64_t hi);

}  // namespace qvx
