// Closed forms for the universal combinations of surface Quot-scheme series.
//
// The log of each surface series expands over universal coefficient series
// indexed by partition triples (mu, nu, xi). Collapsing the alpha-weights to
// one symbol w and the color weights to one symbol m turns the degree-(k-1)
// slice into the weighted combination
//
//   comb(k1, k2) = k1! k2! sum_{|mu| = k1, |xi| = k2}
//                  binom(r, mu) binom(N, xi) log U_{mu,(0),xi}(q)
//
// and for nu = (0) these combinations have closed forms in two equivalent
// shapes:
//
//   * explicit binomial coefficients per q-power (deg_pos_*), and
//   * an operator calculus: with phi = log(1+t), psi = N/t + r/(1+t),
//     D_psi = (1/psi) d/dt, the combination is a rational function of t
//     summed over the Newton-Puiseux branches of H^N = q R(H), which the
//     Lagrange bracket  [q^n] = (1/n) [t^{nN-1}] phi'(t) R(t)^n  evaluates
//     without ever constructing the branches (sv_closed_eval, lagrange_sum).
//
// extract_combination recovers the same combination from an assembled
// symbolic series, which ties the localization engine to the closed forms.
// The degree -1 block (k1 = k2 = 0) has its own formulas valid for every
// integer rank, and the two reduced-series constants B1 and the conjectural
// B0/A0 ratios live here as well.
#pragma once

#include "qvx/localization.hpp"
#include "qvx/partitions.hpp"
#include "qvx/rat.hpp"

#include <string>
#include <vector>

namespace qvx {

// (a)_(n) = a (a-1) ... (a-n+1); n = 0 gives 1 and n = -1 gives 1/(a+1),
// which throws PoleAtMinusOne when a = -1. n < -1 is not defined.
Rat downward_factorial(const Rat& a, long n);

// prod_i binomial(a, mu_i)
Rat binom_partition(const Rat& a, const Partition& mu);

enum class UnivSide { Segre, Chern, Verlinde };

std::string univ_side_name(UnivSide side);

struct UniversalCombination {
    UnivSide side = UnivSide::Segre;
    int k1 = 0, k2 = 0, r = 0, N = 1, order = 0;
    std::vector<Rat> c;  // c[n] multiplies q^n, n = 0 .. order; c[0] = 0
    // Inputs outside the proven hypotheses are still computed, but marked.
    bool flagged = false;
    std::string note;

    const Rat& coeff(int n) const;
    std::string text() const;  // aligned "q^n  value" lines with a header
    std::string json() const;
};

// Explicit per-coefficient binomial formulas for k = k1 + k2 >= 1, r >= 0.
// r < 0 is computed from the same expressions and flagged. k = 0 throws
// OutOfStatedRange: the degree -1 block has its own formulas below.
UniversalCombination deg_pos_segre(int k1, int k2, int r, int N, int order);
UniversalCombination deg_pos_verlinde(int k1, int k2, int r, int N, int order);
UniversalCombination deg_pos_chern(int k1, int k2, int r, int N, int order);

// Degree -1 block (k1 = k2 = 0), valid for every integer r:
//   segre     [q^n] = binom(-nr, nN-1) / n^2
//   chern     [q^n] = binom(nr, nN-1) / n^2
//   verlinde  [q^n] = (-1)^(nN-1) binom(-nr-1, nN-1) / n^2
UniversalCombination degree_minus1_series(UnivSide side, int r, int N, int order);

// The (-1)^N q twisted degree-k Segre combination in the form that is
// manifestly symmetric under (r, N) exchange:
//   (-1)^(k-1) r N (n(r+N)+k-2)_(k-2) binom(n(r+N), nN)
Rat segre_combination_twisted(int k, int r, int N, int n);

// ----- univariate rational functions in the inversion variable t -----------

struct TPoly {
    std::vector<Rat> c;  // c[i] multiplies t^i; trailing zeros trimmed

    TPoly() = default;
    TPoly(std::initializer_list<long> v);
    static TPoly constant(const Rat& x);
    static TPoly t();
    static TPoly one_plus_t_pow(int k);  // (1+t)^k, k >= 0

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    Rat at0() const { return c.empty() ? Rat(0) : c[0]; }
    Rat eval(const Rat& x) const;
    void trim();

    TPoly operator-() const;
    friend TPoly operator+(const TPoly& a, const TPoly& b);
    friend TPoly operator-(const TPoly& a, const TPoly& b);
    friend TPoly operator*(const TPoly& a, const TPoly& b);
    TPoly scaled(const Rat& x) const;
    TPoly derivative() const;

    friend bool operator==(const TPoly& a, const TPoly& b) { return a.c == b.c; }
    friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a.c == b.c); }
    std::string str() const;
};

// monic gcd; gcd(0, 0) = 0
TPoly tpoly_gcd(TPoly a, TPoly b);

struct TRat {
    TPoly num;
    TPoly den = TPoly::constant(Rat(1));

    TRat() = default;
    TRat(TPoly n, TPoly d);  // reduces by the gcd; throws DivisionByZero on d = 0
    static TRat poly(TPoly p);
    static TRat constant(const Rat& x) { return poly(TPoly::constant(x)); }

    bool is_zero() const { return num.is_zero(); }
    Rat at0() const;  // num(0)/den(0); throws DivisionByZero when den(0) = 0

    TRat operator-() const;
    friend TRat operator+(const TRat& a, const TRat& b);
    friend TRat operator-(const TRat& a, const TRat& b);
    friend TRat operator*(const TRat& a, const TRat& b);
    friend TRat operator/(const TRat& a, const TRat& b);
    TRat scaled(const Rat& x) const;
    TRat derivative() const;

    // value equality through cross multiplication
    friend bool operator==(const TRat& a, const TRat& b);
    friend bool operator!=(const TRat& a, const TRat& b) { return !(a == b); }
    std::string str() const;
};

// Taylor coefficients c[0..order] of f at t = 0; den(0) must not vanish.
std::vector<Rat> trat_series(const TRat& f, int order);

// D_psi^k f with psi = N/t + r/(1+t), i.e. one application multiplies f' by
// t(1+t)/((N+r)t + N). k >= 0.
TRat d_psi_apply(const TRat& f, int k, int r, int N);

// D_psi^k log(1+t) for k >= 1 (the k = 0 value is not rational).
TRat d_psi_phi(int k, int r, int N);

// sum_i phi(H_i) over the N branches of H^N = q R(H) through the bracket
//   [q^0] = N phi(0),  [q^n] = (1/n) [t^{nN-1}] phi'(t) R(t)^n.
// R(0) must not vanish. The second form takes phi' and phi(0) directly and
// also serves non-rational phi with rational derivative.
std::vector<Rat> lagrange_sum(const TRat& phi, const TRat& R, int N, int order);
std::vector<Rat> lagrange_sum(const TRat& dphi, const Rat& phi0, const TRat& R, int N,
                              int order);

// The operator-calculus evaluation of the same combination deg_pos_* writes
// out per coefficient. k1 + k2 = 0 routes to degree_minus1_series. The Chern
// side runs the Segre pipeline at rank -r; r < 0 inputs are flagged.
UniversalCombination sv_closed_eval(int k1, int k2, int r, int N, int order, UnivSide side);

// Reduced-series constant in front of c1^2 on the Verlinde side:
//   [q^n] B1 = -binom(n(N+r)-1, nr) / 2.
// r = 0 degenerates to -1/2 for every n and is flagged.
UniversalCombination b1_series(int r, int N, int order);

// Conjectural ratios tying the nu = (2) constants to the nu = (1,1) ones at
// N = 1 (the notation drops nu): [q^n] B0 = b0_over_b1[n] * [q^n] B1 and
// [q^n] A0 = a0_over_a1[n] * [q^n] A1. The B0 half is stated for every
// integer r; the A0 half only for r < -1 and n > 1, other inputs are
// computed from the same expressions and flagged.
struct ConjectureRatios {
    int r = 0, N = 1, order = 0;
    std::vector<Rat> b0_over_b1;  // (1/6) (binom(r+1, 2) (n-1) - 1)
    std::vector<Rat> a0_over_a1;  // (1/12) r (nr + n + 2)
    bool flagged = false;
    std::string note;
};

ConjectureRatios b0_a0_conjecture_rhs(int r, int N, int order);

// Recover comb(k1, k2) of a symbolic surface series at collapsed weights:
// alpha-weights to w1 (negative summands to the trivial weight), color
// weights to m1, take log, slice out total degree k1 + k2 - 1, multiply by
// l1 l2 / (l1 + l2), read off [w1^k1 m1^k2], and check that what is left is
// a constant (else NonPolynomialAfterClearing). Computed per fixed point
// through an exact deformation of the color collapse, never by collapsing a
// merged sum, so it scales to orders where assemble_series does not. side
// must agree with the spec kind; dim 2, symbolic, non-reduced only.
UniversalCombination extract_combination(const GenusSpec& spec, int k1, int k2, UnivSide side);

// Same, keyed by an assembled series (its coefficients are not reused).
UniversalCombination extract_combination(const QSeries& series, int k1, int k2, UnivSide side);

// Every pair with k1 + k2 <= kmax from a single pipeline pass, ordered by
// total degree then descending k1. Much cheaper than one-at-a-time when a
// whole table is wanted: the fixed-point work is shared across the pairs.
std::vector<UniversalCombination> extract_combination_table(const GenusSpec& spec, int kmax,
                                                            UnivSide side);

// ----- table emission -------------------------------------------------------

std::string universal_table_text(const std::vector<UniversalCombination>& rows);
std::string universal_table_json(const std::vector<UniversalCombination>& rows);

}  // namespace qvx
