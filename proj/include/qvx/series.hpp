// Truncated Laurent series in one auxiliary variable with rational-function
// coefficients. Truncation order is explicit everywhere: a series knows the
// largest exponent it is valid to, and arithmetic never pretends to know
// more. Coefficients are stored densely from the lowest exponent; nonzero
// series keep their lowest stored coefficient nonzero.
#pragma once

#include "qvx/ratfun.hpp"

#include <functional>
#include <string>
#include <vector>

namespace qvx {

class TruncSeries {
  public:
    // zero series valid through `order`
    TruncSeries(VarId v, int order) : var_(v), lo_(order + 1), order_(order) {}

    static TruncSeries constant(VarId v, RatFun c, int order) {
        return monomial_coeff(v, std::move(c), 0, order);
    }
    static TruncSeries monomial_coeff(VarId v, RatFun c, int n, int order);

    // coefficients c[i] at exponents lo+i, valid through `order`
    static TruncSeries from_coeffs(VarId v, int lo, std::vector<RatFun> c, int order);

    VarId var() const { return var_; }
    int order() const { return order_; }
    bool is_zero() const { return c_.empty(); }
    int valuation() const;  // throws on the zero series
    // lowest stored exponent (order+1 for the zero series)
    int lo() const { return lo_; }

    // Coefficient of var^n. Reading beyond the truncation order is a
    // contract violation, not a zero.
    const RatFun& coeff(int n) const;

    TruncSeries truncated(int order) const;

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator/(const TruncSeries& a, const TruncSeries& b);
    TruncSeries operator-() const;
    TruncSeries& operator+=(const TruncSeries& b) { *this = *this + b; return *this; }
    TruncSeries& operator-=(const TruncSeries& b) { *this = *this - b; return *this; }
    TruncSeries& operator*=(const TruncSeries& b) { *this = *this * b; return *this; }

    TruncSeries scaled(const RatFun& c) const;
    TruncSeries shifted(int k) const;  // multiply by var^k
    TruncSeries inverse() const;       // lowest coefficient must be invertible
    TruncSeries pow(std::int64_t k) const;
    TruncSeries derivative() const;  // d/d var

    // exp requires valuation >= 1; log requires constant term 1 and lo = 0.
    TruncSeries exp() const;
    TruncSeries log() const;

    // Map every coefficient through fn (used for substitutions acting on
    // coefficients only).
    TruncSeries map(const std::function<RatFun(const RatFun&)>& fn) const;

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.var_ == b.var_ && a.lo_ == b.lo_ && a.order_ == b.order_ && a.c_ == b.c_;
    }

    std::string str() const;

  private:
    void normalize();

    VarId var_;
    int lo_;
    int order_;
    std::vector<RatFun> c_;  // exponent lo_ + i
};

// Expand a rational function as a Laurent series in v through var^order.
// Every denominator atom must have an invertible lowest coefficient after
// collecting in v; otherwise NonInvertibleDenominator.
TruncSeries ratfun_expand(const RatFun& f, VarId v, int order);

// Adams operation hook for plethystic operations: receives a coefficient and
// the Adams index k. The standard hook raises every multiplicative variable
// (t/y/v/s classes) to the k-th power; the identity hook leaves coefficients
// alone so only the series exponent is scaled.
using AdamsHook = std::function<RatFun(const RatFun&, int)>;
AdamsHook adams_standard();
AdamsHook adams_identity();

// Exp(f) = exp(sum_k adams_k(f)/k), q-exponents scaled by k as well.
// Requires zero coefficient at and below exponent 0.
TruncSeries pleth_exp(const TruncSeries& arg, const AdamsHook& hook = adams_standard());

// Inverse of pleth_exp for series with constant term 1 (Moebius inversion).
TruncSeries pleth_log(const TruncSeries& s, const AdamsHook& hook = adams_standard());

// Admissibility witness: writes series = Exp(L / prod_i (1 - q_vars[i]))
// and reports, per q-coefficient, whether L is a Laurent polynomial in the
// multiplicative variables. The failing coefficients are returned in
// diagnostics as canonical text.
struct PolynomialityWitness {
    bool ok = true;
    std::vector<std::string> diagnostics;  // one entry per failing exponent
    std::vector<RatFun> numerator;         // coefficients of L
};
PolynomialityWitness pleth_log_polynomiality_witness(const TruncSeries& series,
                                                     const std::vector<VarId>& q_vars,
                                                     int order,
                                                     const AdamsHook& hook = adams_standard());

}  // namespace qvx
