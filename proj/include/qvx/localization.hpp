// Torus localization over the fixed-point loci of Quot schemes of points.
//
// Every series here is a sum over N-colored (solid) partitions:
//
//   [q^n] series  =  sum over points Z of size n of  (sign) * insertion(Z) / e(Z)
//
// where e(Z) is the Euler class of the (square-root) virtual tangent space
// in the cohomological kinds and ch(Lambda_{-1} T^dual) in the K-theoretic
// ones. The surface case (dim 2) runs over colored partitions and carries no
// signs; the fourfold case (dim 4) runs over colored solid partitions, uses
// the square-root tangent character, and weights each point by
// (-1)^(size + diagonal count), or by a caller-supplied table.
//
// Insertions by kind, for alpha = (v_1 + ... + v_r) - (v_{r+1} + ... + v_{r+s}):
//   segre     s(alpha^[n])        = 1 / prod (1 + chern form)
//   chern     c(alpha^[n])        =     prod (1 + chern form)
//   verlinde  ch(det alpha^[n])   =     monomial of the tautological character
//   nekrasov  dim 2: prod over boxes and i of (1 - t1^-c t2^-r v_i y_j z)^(+-1)
//             dim 4: prod over boxes of (box)^-1/2 prod_i [v_i y_j box],
//                    [x] := x^1/2 - x^-1/2
//
// Numeric mode trades symbols for seeded rational sample values: the same
// products are evaluated directly in rational arithmetic, which is what the
// large consistency sweeps run on. A sample that happens to annihilate a
// factor raises (ZeroWeight / PoleAtMinusOne / DivisionByZero) so the caller
// can reseed.
#pragma once

#include "qvx/characters.hpp"
#include "qvx/grading.hpp"
#include "qvx/series.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qvx {

enum class GenusKind { Segre, Chern, Verlinde, Nekrasov };
enum class WeightMode { Symbolic, Numeric };
enum class SignRule { Canonical, Table };

std::string genus_kind_name(GenusKind k);

struct GenusSpec {
    int dim = 2;  // 2 or 4
    GenusKind kind = GenusKind::Segre;
    int N = 1;  // number of colors (rank of E)
    int r = 0;  // positive summands of alpha
    int s = 0;  // negative summands of alpha (v indices r+1 .. r+s)
    WeightMode mode = WeightMode::Symbolic;
    std::uint64_t seed = 0;  // numeric sample seed
    int order = 0;           // q-adic truncation
    SignRule sign_rule = SignRule::Canonical;  // dim 4 only
    // Table mode: parity exponent per fixed point. sign_table_flip() yields
    // the uniform alternative orientation (canonical parity plus size), which
    // differs from canonical by q -> -q on every series.
    std::function<int(const ColoredSolidPartition&)> sign_table;

    void validate() const;  // throws std::invalid_argument on bad field combos
};

std::function<int(const ColoredSolidPartition&)> sign_table_flip();

struct QSeries {
    GenusSpec spec;
    bool reduced = false;
    std::vector<RatFun> c;  // c[n] = [q^n], n = 0 .. spec.order

    const RatFun& coeff(int n) const;
    std::string json() const;
};

// ----- per-point classes -------------------------------------------------
//
// Characters are Laurent polynomials in t/y/v with integer coefficients
// (multiplicities). The cohomological weight of a monomial is the pairing
// with (lambda, m, w); dim enters only through which t's can appear.

// prod over monomials of (weight form)^multiplicity; negative multiplicities
// land in the denominator. Throws ZeroWeight on a trivial summand.
RatFun euler_class(const MPoly& chr);
// 1 / euler_class, kept in factored form so fixed-point sums cancel well.
RatFun inverse_euler(const MPoly& chr);

// Total Chern class: prod (1 + weight form)^multiplicity. Trivial summands
// contribute a factor 1. Negating the character computes the Segre class.
RatFun chern_contrib(const MPoly& chr);

// The same classes under a weight specialization: a K-theory variable named
// in the map contributes its mapped linear form instead of its default
// cohomological symbol, so collapsed or partially evaluated weights go in
// before any product is expanded. A summand whose specialized form vanishes
// identically is trivial: factor 1 for the Chern class, ZeroWeight for the
// Euler class.
RatFun euler_class(const MPoly& chr, const WeightMap& weights);
RatFun inverse_euler(const MPoly& chr, const WeightMap& weights);
RatFun chern_contrib(const MPoly& chr, const WeightMap& weights);

// Determinant monomial: prod of the character's monomials with multiplicity.
Monomial det_monomial(const MPoly& chr);

// ch(det) / ch(Lambda_{-1} tangent^dual) with the dual Koszul factor
// (1 - x^-1) per tangent weight x. K-variable rational function; the graded
// overload pushes it through the exponential degree filtration in b.
RatFun verlinde_contrib(const MPoly& tangent, const Monomial& det);
TruncSeries verlinde_contrib_graded(const MPoly& tangent, const Monomial& det, int order);

// Graded Koszul value under a weight specialization, computed in factored
// form: each factor 1 - e^(-b w) is (b w) times a unit series, so the
// product is b^shift * (prod w^mult) * exp(sum mult * log u(b w)) and the
// expansion never forms the K-variable product polynomial. Coefficients stay
// small; the weight forms sit in a factored prefactor. An empty map grades
// every variable by its default cohomological symbol.
TruncSeries verlinde_contrib_graded(const MPoly& tangent, const Monomial& det,
                                    const WeightMap& weights, int order);

// ----- series assembly ----------------------------------------------------

QSeries assemble_series(const GenusSpec& spec);

// Reduced surface series on the subtorus t1 t2 = 1 (variable t = t1, weight
// lambda = l1). n = 0 is excluded; c[0] stays zero. Numeric mode is not
// offered here: reduced runs are small.
QSeries reduced_series(GenusKind kind, int N, int r, int s, int order);

// ----- limits --------------------------------------------------------------
//
// The Chern and Verlinde series are limits of the Nekrasov genus:
//   chern:    q -> (-1)^N q e^(N-rank) (1+e)^rank, z -> (1+e)^-1,
//             t,y,v -> exp(-e * (lambda, m, w)), then the e^0 coefficient
//   verlinde: q -> (-1)^rank q e^rank, z -> e^-1, then the e^0 coefficient
// Surviving negative e-orders raise NegativeEpsilonOrderSurvives.
// rank means rank(alpha) = r - s. The same substitutions serve the reduced
// series (pass the reduced Nekrasov genus; it lives on the subtorus).
QSeries chern_limit(const QSeries& nek, int N, int rank, int order);
QSeries verlinde_limit(const QSeries& nek, int rank, int order);

// Specialization route to the reduced series: f is a nonreduced [q^n]
// value. Cohomological: divide by (l1 + l2), then set l2 = -l1. K-theoretic:
// divide by (1 - (t1 t2)^-1) and collapse t2 -> t1^-1 through a one-sided
// limit. Both throw NegativeEpsilonOrderSurvives when the value fails to
// vanish on the subtorus.
RatFun reduce_coh_value(const RatFun& f);
RatFun reduce_k_value(const RatFun& f);

// ----- numeric sampling ----------------------------------------------------

struct SamplePoint {
    std::map<std::uint16_t, Rat> coh;   // l/m/w values
    std::map<std::uint16_t, Rat> half;  // K-variable square roots; value = half^2

    // coh plus the squared halves: the full-value map RatFun::eval expects.
    std::map<std::uint16_t, Rat> values() const;
};

// Deterministic sample for the variables of a (dim, N, r+s) problem. Nonzero
// values only; collisions between derived weights are left to the guards.
SamplePoint sample_point(std::uint64_t seed, int dim, int N, int rs);

}  // namespace qvx
