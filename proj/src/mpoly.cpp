#include "qvx/mpoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace qvx {

MPoly MPoly::constant(const Rat& c) {
    MPoly p;
    if (!qvx::is_zero(c)) p.t_.push_back({Monomial::one(), c});
    return p;
}

MPoly MPoly::variable(VarId v, std::int32_t exp) {
    return monomial(Monomial::var(v, exp));
}

MPoly MPoly::monomial(const Monomial& m, const Rat& c) {
    MPoly p;
    if (!qvx::is_zero(c)) p.t_.push_back({m, c});
    return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return mono_less(b.first, a.first); });
    MPoly p;
    p.t_.reserve(terms.size());
    for (auto& t : terms) {
        if (!p.t_.empty() && p.t_.back().first == t.first) {
            p.t_.back().second += t.second;
            if (qvx::is_zero(p.t_.back().second)) p.t_.pop_back();
        } else if (!qvx::is_zero(t.second)) {
            p.t_.push_back(std::move(t));
        }
    }
    return p;
}

const MPoly::Term& MPoly::leading() const {
    if (t_.empty()) throw std::domain_error("leading term of zero polynomial");
    return t_.front();
}

Rat MPoly::constant_term() const {
    // Not necessarily the last term: monomials with negative total degree
    // sort below the constant in a Laurent polynomial.
    return coefficient(Monomial());
}

Rat MPoly::coefficient(const Monomial& m) const {
    // Terms are sorted descending; binary search.
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& t, const Monomial& key) {
        return mono_less(key, t.first);
    });
    if (it != t_.end() && it->first == m) return it->second;
    return Rat(0);
}

MPoly MPoly::operator-() const {
    MPoly p = *this;
    for (auto& t : p.t_) t.second = -t.second;
    return p;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r;
    r.t_.reserve(a.t_.size() + b.t_.size());
    auto ia = a.t_.begin(), ib = b.t_.begin();
    while (ia != a.t_.end() && ib != b.t_.end()) {
        int c = mono_cmp(ia->first, ib->first);
        if (c > 0) {
            r.t_.push_back(*ia++);
        } else if (c < 0) {
            r.t_.push_back(*ib++);
        } else {
            Rat s = ia->second + ib->second;
            if (!is_zero(s)) r.t_.push_back({ia->first, std::move(s)});
            ++ia;
            ++ib;
        }
    }
    r.t_.insert(r.t_.end(), ia, a.t_.end());
    r.t_.insert(r.t_.end(), ib, b.t_.end());
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly();
    if (a.t_.size() == 1) return b.mul_monomial(a.t_[0].first, a.t_[0].second);
    if (b.t_.size() == 1) return a.mul_monomial(b.t_[0].first, b.t_[0].second);
    std::unordered_map<Monomial, Rat, MonomialHash> acc;
    acc.reserve(a.t_.size() * b.t_.size() / 2 + 4);
    for (const auto& ta : a.t_) {
        for (const auto& tb : b.t_) {
            Rat c = ta.second * tb.second;
            auto [it, fresh] = acc.try_emplace(ta.first * tb.first, c);
            if (!fresh) it->second += c;
        }
    }
    std::vector<MPoly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!is_zero(c)) terms.push_back({m, std::move(c)});
    return MPoly::from_terms(std::move(terms));
}

MPoly MPoly::scaled(const Rat& c) const {
    if (qvx::is_zero(c)) return MPoly();
    MPoly p = *this;
    for (auto& t : p.t_) t.second *= c;
    return p;
}

MPoly MPoly::mul_monomial(const Monomial& m, const Rat& c) const {
    if (qvx::is_zero(c)) return MPoly();
    MPoly p;
    p.t_.reserve(t_.size());
    // Multiplying every monomial by a fixed one preserves the term order.
    for (const auto& t : t_) p.t_.push_back({t.first * m, t.second * c});
    return p;
}

MPoly MPoly::pow(std::int64_t k) const {
    if (k < 0) throw std::domain_error("MPoly::pow: negative exponent");
    MPoly acc = constant(Rat(1));
    MPoly base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        if (k >>= 1) base = base * base;
    }
    return acc;
}

namespace {

// Sound fast rejection for exact_div. Evaluate the dividend at a rational
// point where the divisor vanishes: a nonzero value proves the division is
// not exact, because dividend = quotient * divisor forces a zero. The point
// solves the divisor for a variable it is linear in, with small deterministic
// values elsewhere; every assigned value is nonzero so Laurent dividends stay
// finite. Inconclusive outcomes (half exponents, no linear variable, an
// unlucky zero) fall through to the exact algorithm.
bool divisibility_possible(const MPoly& dividend, const MPoly& divisor) {
    std::uint16_t pivot = 0;
    bool have_pivot = false;
    for (const auto& t : divisor.terms())
        for (const auto& p : t.first.e) {
            if (p.second % 2 != 0) return true;  // half exponent: skip the filter
            if (!have_pivot && p.second == 2) {
                pivot = p.first;
                have_pivot = true;
            }
        }
    if (!have_pivot) return true;
    for (const auto& t : dividend.terms())
        for (const auto& p : t.first.e)
            if (p.second % 2 != 0) return true;
    // Split divisor = a * pivot + b; require it genuinely linear in the pivot.
    std::vector<MPoly::Term> at, bt;
    for (const auto& t : divisor.terms()) {
        std::int32_t e = t.first.exp2_of(var_from_code(pivot));
        if (e == 0) {
            bt.push_back(t);
        } else if (e == 2) {
            Monomial rest;
            for (const auto& p : t.first.e)
                if (p.first != pivot) rest.e.push_back(p);
            at.push_back({rest, t.second});
        } else {
            return true;
        }
    }
    MPoly a = MPoly::from_terms(std::move(at));
    MPoly b = MPoly::from_terms(std::move(bt));
    std::set<std::uint16_t> codes = dividend.var_codes();
    for (const auto& c : divisor.var_codes()) codes.insert(c);
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::map<std::uint16_t, Rat> values;
        long seed = 2 + 5 * attempt;
        for (std::uint16_t c : codes) {
            if (c == pivot) continue;
            values[c] = Rat(seed);
            seed += 3 + (c & 7);
        }
        Rat av = a.eval(values, {});
        if (qvx::is_zero(av)) continue;
        Rat root = -b.eval(values, {}) / av;
        if (qvx::is_zero(root)) continue;
        values[pivot] = root;
        if (!qvx::is_zero(dividend.eval(values, {}))) return false;
    }
    return true;
}

}  // namespace

std::optional<MPoly> MPoly::exact_div(const MPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("exact_div by zero");
    if (is_zero()) return MPoly();
    if (!divisor.is_monomial() && !divisibility_possible(*this, divisor)) return std::nullopt;
    // Work in the ordinary polynomial ring: shift both operands so every
    // exponent is a nonnegative half-unit, divide, then shift back. In an
    // exact division each step peels off the true leading quotient term, so
    // the loop runs exactly (number of quotient terms) times or detects
    // failure as soon as a leading term is not divisible.
    auto min_shift = [](const MPoly& p) {
        std::map<std::uint16_t, std::int32_t> mins;
        for (const auto& t : p.t_)
            for (const auto& e : t.first.e) {
                auto [it, fresh] = mins.try_emplace(e.first, e.second);
                if (!fresh) it->second = std::min(it->second, e.second);
            }
        Monomial m;
        for (const auto& [code, ex] : mins)
            if (ex < 0) m.e.push_back({code, ex});
        return m;  // the negative part of the exponent floor
    };
    Monomial sa = min_shift(*this), sb = min_shift(divisor);
    MPoly r = mul_monomial(sa.inverse());
    MPoly d = divisor.mul_monomial(sb.inverse());
    const Monomial& dm = d.leading().first;
    const Rat& dc = d.leading().second;
    // The term order is multiplicative, so in an exact division the trailing
    // monomial of the quotient is trailing(r) / trailing(d); reject when that
    // falls outside the polynomial lattice.
    if (!(r.terms().back().first / d.terms().back().first).is_polynomial()) return std::nullopt;
    // Remainder kept as an ordered map so each elimination step costs
    // O(|divisor| log) instead of a full vector rebuild.
    struct MonoGreater {
        bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(a, b) > 0; }
    };
    std::map<Monomial, Rat, MonoGreater> rem;
    for (const auto& t : r.t_) rem.emplace(t.first, t.second);
    std::vector<Term> qterms;
    while (!rem.empty()) {
        auto lead = rem.begin();
        Monomial qm = lead->first / dm;
        if (!qm.is_polynomial()) return std::nullopt;
        Rat qc = lead->second / dc;
        rem.erase(lead);
        for (std::size_t i = 1; i < d.t_.size(); ++i) {
            Monomial key = qm * d.t_[i].first;
            auto [it, fresh] = rem.try_emplace(key, Rat(0));
            it->second -= qc * d.t_[i].second;
            if (qvx::is_zero(it->second)) rem.erase(it);
        }
        qterms.push_back({std::move(qm), std::move(qc)});
    }
    MPoly q = from_terms(std::move(qterms));
    return q.mul_monomial(sa / sb);
}

MPoly MPoly::subst_monomial(VarId v, const Rat& coef, const Monomial& image) const {
    std::vector<Term> terms;
    terms.reserve(t_.size());
    for (const auto& t : t_) {
        Monomial rest;
        std::int32_t exp2 = 0;
        for (const auto& p : t.first.e) {
            if (p.first == v.code())
                exp2 = p.second;
            else
                rest.e.push_back(p);
        }
        if (exp2 == 0) {
            terms.push_back(t);
            continue;
        }
        if (exp2 < 0 && qvx::is_zero(coef))
            throw std::domain_error("substituting zero into a negative power");
        // image^(exp2/2): stored exponents scale by exp2/2, which must land
        // back on the half-unit lattice.
        Monomial img;
        for (const auto& p : image.e) {
            std::int64_t s = static_cast<std::int64_t>(p.second) * exp2;
            if (s % 2 != 0) throw std::domain_error("substitution leaves the half-exponent lattice");
            s /= 2;
            if (s < INT32_MIN || s > INT32_MAX) throw std::overflow_error("exponent overflow");
            if (s != 0) img.e.push_back({p.first, static_cast<std::int32_t>(s)});
        }
        if (exp2 % 2 != 0 && !qvx::is_one(coef) && !qvx::is_zero(coef))
            throw std::domain_error("half power of a non-unit coefficient");
        Rat c = t.second;
        if (qvx::is_zero(coef)) {
            if (exp2 > 0) continue;  // the whole term dies
        } else {
            c *= rat_pow(coef, exp2 / 2);
        }
        terms.push_back({rest * img, c});
    }
    return from_terms(std::move(terms));
}

MPoly MPoly::subst_rat(VarId v, const Rat& value) const {
    return subst_monomial(v, value, Monomial::one());
}

MPoly MPoly::subst_poly(VarId v, const MPoly& image) const {
    if (image.is_monomial()) return subst_monomial(v, image.t_[0].second, image.t_[0].first);
    if (image.is_zero()) return subst_rat(v, Rat(0));
    // Group by the power of v, then Horner from the top power down.
    auto groups = collect(v);
    if (groups.size() == 1 && groups.begin()->first == 0) return *this;
    std::int32_t lo = groups.begin()->first;
    if (lo < 0) throw std::domain_error("polynomial image for a variable with negative exponents");
    MPoly acc;
    std::int32_t prev = -1;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        if (it->first % 2 != 0) throw std::domain_error("polynomial image for a half exponent");
        if (prev >= 0) acc = acc * image.pow((prev - it->first) / 2);
        acc = acc + it->second;
        prev = it->first;
    }
    if (prev > 0) acc = acc * image.pow(prev / 2);
    return acc;
}

MPoly MPoly::adams(std::int64_t k) const {
    std::vector<Term> terms;
    terms.reserve(t_.size());
    for (const auto& t : t_) {
        Monomial m;
        for (const auto& p : t.first.e) {
            if (is_k_class(var_from_code(p.first))) {
                std::int64_t s = static_cast<std::int64_t>(p.second) * k;
                if (s < INT32_MIN || s > INT32_MAX) throw std::overflow_error("exponent overflow");
                if (s != 0) m.e.push_back({p.first, static_cast<std::int32_t>(s)});
            } else {
                m.e.push_back(p);
            }
        }
        terms.push_back({m, t.second});
    }
    return from_terms(std::move(terms));
}

MPoly MPoly::bar() const {
    std::vector<Term> terms;
    terms.reserve(t_.size());
    for (const auto& t : t_) {
        Monomial m = t.first;
        for (auto& p : m.e)
            if (is_k_class(var_from_code(p.first))) p.second = -p.second;
        terms.push_back({m, t.second});
    }
    return from_terms(std::move(terms));
}

Rat MPoly::eval(const std::map<std::uint16_t, Rat>& values,
                const std::map<std::uint16_t, Rat>& half_values) const {
    Rat acc(0);
    for (const auto& t : t_) {
        Rat v = t.second;
        for (const auto& p : t.first.e) {
            if (p.second % 2 == 0) {
                auto it = values.find(p.first);
                if (it == values.end()) throw std::domain_error("eval: missing value for " + var_name(var_from_code(p.first)));
                v *= rat_pow(it->second, p.second / 2);
            } else {
                auto it = half_values.find(p.first);
                if (it == half_values.end())
                    throw std::domain_error("eval: missing half value for " + var_name(var_from_code(p.first)));
                v *= rat_pow(it->second, p.second);
            }
        }
        acc += v;
    }
    return acc;
}

std::int64_t MPoly::deg2_max() const {
    std::int64_t d = INT64_MIN;
    for (const auto& t : t_) d = std::max(d, t.first.deg2());
    return d;
}

std::int64_t MPoly::deg2_min() const {
    std::int64_t d = INT64_MAX;
    for (const auto& t : t_) d = std::min(d, t.first.deg2());
    return d;
}

std::map<std::int32_t, MPoly> MPoly::collect(VarId v) const {
    std::map<std::int32_t, std::vector<Term>> parts;
    for (const auto& t : t_) {
        Monomial rest;
        std::int32_t exp2 = 0;
        for (const auto& p : t.first.e) {
            if (p.first == v.code())
                exp2 = p.second;
            else
                rest.e.push_back(p);
        }
        parts[exp2].push_back({rest, t.second});
    }
    std::map<std::int32_t, MPoly> out;
    for (auto& [d, terms] : parts) out.emplace(d, from_terms(std::move(terms)));
    return out;
}

bool MPoly::depends_on(VarId v) const {
    for (const auto& t : t_)
        if (t.first.depends_on(v)) return true;
    return false;
}

std::set<std::uint16_t> MPoly::var_codes() const {
    std::set<std::uint16_t> s;
    for (const auto& t : t_)
        for (const auto& p : t.first.e) s.insert(p.first);
    return s;
}

Rat MPoly::content() const {
    if (is_zero()) return Rat(0);
    Int num_gcd(0), den_lcm(1);
    for (const auto& t : t_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.second.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.second.get_den().get_mpz_t());
    }
    Rat c(num_gcd, den_lcm);
    c.canonicalize();
    if (sgn(t_.front().second) < 0) c = -c;
    return c;
}

MPoly MPoly::primitive_part() const {
    if (is_zero()) return MPoly();
    return scaled(Rat(1) / content());
}

}  // namespace qvx
