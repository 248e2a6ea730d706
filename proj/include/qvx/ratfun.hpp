// Rational functions stored as (Laurent numerator) / (multiset of factor
// atoms). Atoms are primitive non-constant polynomials with positive leading
// coefficient; in practice they are affine-linear forms in the cohomology
// variables or (1 - monomial) binomials in the multiplicative variables.
// There is no general gcd anywhere: cancellation is exact trial division of
// the numerator by each denominator atom.
#pragma once

#include "qvx/errors.hpp"
#include "qvx/mpoly.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace qvx {

// Total order on polynomials (term-list lexicographic), used to keep
// denominator multisets sorted deterministically.
int mpoly_cmp(const MPoly& a, const MPoly& b);

// A normalized denominator atom. Construction strips rational content and
// fixes the sign of the leading coefficient; the removed unit is returned
// through the second member so callers can fold it into the numerator.
struct Factor {
    MPoly p;

    // Splits f = unit * atom with atom primitive and positively led.
    // f must be a nonzero non-constant polynomial.
    static std::pair<Rat, Factor> normalize(const MPoly& f);

    friend bool operator==(const Factor& a, const Factor& b) { return a.p == b.p; }
    friend bool operator<(const Factor& a, const Factor& b) { return mpoly_cmp(a.p, b.p) < 0; }
};

// Denominator multisets are kept in descending canonical order so that
// printed factors read l1*l2, (l1+l2)*(l1-l2), matching the term order
// inside polynomials.
inline bool den_before(const Factor& a, const Factor& b) { return mpoly_cmp(a.p, b.p) > 0; }

// Convenience builders for the two atom shapes that actually occur.
MPoly linear_form(const Rat& constant, std::initializer_list<std::pair<VarId, Rat>> coeffs);
MPoly one_minus(const Monomial& m);  // 1 - m as a polynomial

class RatFun {
  public:
    RatFun() = default;  // zero

    static RatFun constant(const Rat& c) { return RatFun(MPoly::constant(c), {}); }
    static RatFun poly(MPoly p) { return RatFun(std::move(p), {}); }
    static RatFun one() { return constant(Rat(1)); }

    // num / prod(dens); each denominator polynomial is normalized into atoms
    // and its unit folded into the numerator. Throws DivisionByZero on a zero
    // denominator polynomial.
    RatFun(MPoly num, std::vector<std::pair<MPoly, int>> dens);

    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.empty(); }
    const MPoly& num() const { return num_; }
    const std::vector<std::pair<Factor, int>>& den() const { return den_; }

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);  // throws DivisionByZero
    RatFun& operator+=(const RatFun& b) { *this = *this + b; return *this; }
    RatFun& operator-=(const RatFun& b) { *this = *this - b; return *this; }
    RatFun& operator*=(const RatFun& b) { *this = *this * b; return *this; }
    RatFun& operator/=(const RatFun& b) { *this = *this / b; return *this; }

    RatFun scaled(const Rat& c) const { return RatFun::raw(num_.scaled(c), c == 0 ? Den{} : den_); }
    RatFun inverse() const;
    RatFun pow(std::int64_t k) const;

    // Multiply by 1/f (f a nonzero polynomial), keeping factored form.
    RatFun div_poly(const MPoly& f) const;

    // Structural equality of the canonical representation. Values built
    // through the arithmetic here are canonical enough for this to be value
    // equality in the cohomological setting; when in doubt use equal_values.
    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }
    static bool equal_values(const RatFun& a, const RatFun& b) { return (a - b).is_zero(); }

    // Substitution of a single variable. Rational and monomial images always
    // stay inside RatFun; polynomial/rational-function images re-normalize
    // the touched denominator atoms.
    RatFun subst_rat(VarId v, const Rat& value) const;
    RatFun subst_monomial(VarId v, const Rat& coef, const Monomial& image) const;
    RatFun subst(VarId v, const RatFun& image) const;

    RatFun adams(std::int64_t k) const;
    RatFun bar() const;

    // Exact evaluation; throws DivisionByZero if a denominator atom vanishes.
    Rat eval(const std::map<std::uint16_t, Rat>& values,
             const std::map<std::uint16_t, Rat>& half_values = {}) const;

    // Multiplicity of the given atom in the denominator minus the number of
    // times it exactly divides the numerator (a negative result means the
    // value is divisible by that polynomial).
    int pole_order(const MPoly& atom) const;

    // The homogeneous-degree-i part in the variables selected by is_coh_class
    // (fast path; requires every denominator atom homogeneous there, else
    // throws NonHomogeneousDenominator -- callers fall back to the series
    // route in grading.hpp).
    RatFun degree_part_homog(std::int64_t i) const;

    bool depends_on(VarId v) const;

    std::string str() const;

  private:
    using Den = std::vector<std::pair<Factor, int>>;
    static RatFun raw(MPoly num, Den den) {
        RatFun f;
        f.num_ = std::move(num);
        f.den_ = std::move(den);
        return f;
    }
    void cancel();  // trial-divide numerator by every atom

    MPoly num_;
    Den den_;
};

inline RatFun operator*(const Rat& c, const RatFun& f) { return f.scaled(c); }

}  // namespace qvx
