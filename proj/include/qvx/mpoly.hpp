// Sparse multivariate Laurent polynomials with exact rational coefficients.
// Terms are kept sorted descending in the canonical order of monomial.hpp,
// with no zero coefficients stored.
#pragma once

#include "qvx/monomial.hpp"
#include "qvx/rat.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qvx {

class MPoly {
  public:
    using Term = std::pair<Monomial, Rat>;

    MPoly() = default;

    static MPoly constant(const Rat& c);
    static MPoly variable(VarId v, std::int32_t exp = 1);
    static MPoly monomial(const Monomial& m, const Rat& c = Rat(1));
    // Normalizes: sorts, combines duplicates, drops zeros.
    static MPoly from_terms(std::vector<Term> terms);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
    bool is_monomial() const { return t_.size() == 1; }
    std::size_t term_count() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }
    const Term& leading() const;

    Rat constant_term() const;
    Rat coefficient(const Monomial& m) const;

    MPoly operator-() const;
    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator+=(const MPoly& b) { *this = *this + b; return *this; }
    MPoly& operator-=(const MPoly& b) { *this = *this - b; return *this; }
    MPoly& operator*=(const MPoly& b) { *this = *this * b; return *this; }

    MPoly scaled(const Rat& c) const;
    MPoly mul_monomial(const Monomial& m, const Rat& c = Rat(1)) const;
    MPoly pow(std::int64_t k) const;  // k >= 0

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a.t_ == b.t_); }

    // Exact division: returns the quotient when divisor divides this exactly
    // (as Laurent polynomials), nullopt otherwise.
    std::optional<MPoly> exact_div(const MPoly& divisor) const;

    // Substitutions. Monomial images handle arbitrary (also half) exponents;
    // polynomial images require the substituted variable to appear with
    // nonnegative whole exponents only.
    MPoly subst_monomial(VarId v, const Rat& coef, const Monomial& image) const;
    MPoly subst_rat(VarId v, const Rat& value) const;
    MPoly subst_poly(VarId v, const MPoly& image) const;

    // Adams operation: every multiplicative-class exponent is multiplied by k.
    MPoly adams(std::int64_t k) const;
    // K-theory involution x -> x^{-1} on multiplicative-class variables.
    MPoly bar() const;

    // Evaluation at exact rational points. For variables carrying half
    // exponents, half_values supplies the value of x^{1/2}.
    Rat eval(const std::map<std::uint16_t, Rat>& values,
             const std::map<std::uint16_t, Rat>& half_values = {}) const;

    std::int64_t deg2_max() const;
    std::int64_t deg2_min() const;
    template <class Pred>
    std::int64_t deg2_max_if(Pred pred) const {
        std::int64_t d = INT64_MIN;
        for (const auto& t : t_) d = std::max(d, t.first.deg2_if(pred));
        return d;
    }
    template <class Pred>
    std::int64_t deg2_min_if(Pred pred) const {
        std::int64_t d = INT64_MAX;
        for (const auto& t : t_) d = std::min(d, t.first.deg2_if(pred));
        return d;
    }
    template <class Pred>
    bool is_homogeneous_if(Pred pred) const {
        return is_zero() || deg2_max_if(pred) == deg2_min_if(pred);
    }

    // Splits into homogeneous components by half-unit degree over the
    // predicate-selected variables.
    template <class Pred>
    std::map<std::int64_t, MPoly> homogeneous_parts(Pred pred) const {
        std::map<std::int64_t, std::vector<Term>> parts;
        for (const auto& t : t_) parts[t.first.deg2_if(pred)].push_back(t);
        std::map<std::int64_t, MPoly> out;
        for (auto& [d, v] : parts) out.emplace(d, from_terms(std::move(v)));
        return out;
    }

    // Groups terms by their monomial part in the predicate-selected variables:
    // f = sum over keys g of g * (coefficient polynomial in the other variables).
    template <class Pred>
    std::map<Monomial, MPoly, decltype(&mono_less)> group_by(Pred pred) const {
        std::map<Monomial, MPoly, decltype(&mono_less)> out(&mono_less);
        std::map<Monomial, std::vector<Term>, decltype(&mono_less)> parts(&mono_less);
        for (const auto& t : t_) {
            Monomial key, rest;
            for (const auto& p : t.first.e) {
                if (pred(var_from_code(p.first)))
                    key.e.push_back(p);
                else
                    rest.e.push_back(p);
            }
            parts[key].push_back({rest, t.second});
        }
        for (auto& [k, v] : parts) out.emplace(k, from_terms(std::move(v)));
        return out;
    }

    // Collects as a polynomial in one variable: exp2 -> coefficient poly.
    std::map<std::int32_t, MPoly> collect(VarId v) const;

    bool depends_on(VarId v) const;
    std::set<std::uint16_t> var_codes() const;

    // Rational content (gcd of numerators over lcm of denominators), signed so
    // that content * primitive_part == *this with positive leading coefficient
    // of the primitive part. Zero polynomial has content 0.
    Rat content() const;
    MPoly primitive_part() const;  // *this / content

    std::string str() const;  // canonical text, see textio.hpp

  private:
    std::vector<Term> t_;
};

inline MPoly operator*(const Rat& c, const MPoly& p) { return p.scaled(c); }

}  // namespace qvx
