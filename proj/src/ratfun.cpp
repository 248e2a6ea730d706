#include "qvx/ratfun.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace qvx {

int mpoly_cmp(const MPoly& a, const MPoly& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t n = std::min(ta.size(), tb.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = mono_cmp(ta[i].first, tb[i].first);
        if (c != 0) return c;
        int s = cmp(ta[i].second, tb[i].second);
        if (s != 0) return s;
    }
    if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
    return 0;
}

std::pair<Rat, Factor> Factor::normalize(const MPoly& f) {
    if (f.is_zero()) throw DivisionByZero("zero polynomial used as a denominator factor");
    if (f.is_constant()) throw std::logic_error("constant polynomial is not a factor atom");
    Rat c = f.content();
    return {c, Factor{f.scaled(Rat(1) / c)}};
}

MPoly linear_form(const Rat& constant, std::initializer_list<std::pair<VarId, Rat>> coeffs) {
    std::vector<MPoly::Term> terms;
    if (!is_zero(constant)) terms.push_back({Monomial::one(), constant});
    for (const auto& [v, c] : coeffs)
        if (!is_zero(c)) terms.push_back({Monomial::var(v), c});
    return MPoly::from_terms(std::move(terms));
}

MPoly one_minus(const Monomial& m) {
    return MPoly::constant(Rat(1)) - MPoly::monomial(m);
}

namespace {

// Shift a factor polynomial so its per-variable exponent floor is zero; the
// removed Laurent monomial is a unit and belongs with the numerator. This
// makes (1 - x^{-1}) and (x - 1) land on the same atom.
std::pair<Monomial, MPoly> strip_monomial_floor(const MPoly& f) {
    std::map<std::uint16_t, std::int32_t> mins;
    bool first = true;
    for (const auto& t : f.terms()) {
        std::map<std::uint16_t, std::int32_t> seen;
        for (const auto& e : t.first.e) seen.emplace(e.first, e.second);
        if (first) {
            mins = seen;
            first = false;
            continue;
        }
        for (auto& [code, lo] : mins) {
            auto jt = seen.find(code);
            lo = std::min(lo, jt == seen.end() ? 0 : jt->second);
        }
        for (const auto& [code, ex] : seen)
            if (!mins.count(code)) mins.emplace(code, std::min(ex, 0));
    }
    Monomial floor;
    for (const auto& [code, ex] : mins)
        if (ex != 0) floor.e.push_back({code, ex});
    if (floor.is_one()) return {floor, f};
    return {floor, f.mul_monomial(floor.inverse())};
}

}  // namespace

RatFun::RatFun(MPoly num, std::vector<std::pair<MPoly, int>> dens) {
    num_ = std::move(num);
    for (auto& [p, mult] : dens) {
        if (mult == 0) continue;
        if (mult < 0) {
            // negative multiplicity: the factor belongs upstairs
            num_ = num_ * p.pow(-mult);
            continue;
        }
        if (p.is_zero()) throw DivisionByZero("division by zero polynomial");
        if (p.is_constant()) {
            num_ = num_.scaled(rat_pow(p.constant_term(), -mult));
            continue;
        }
        if (p.is_monomial()) {
            // Split whole positive powers into per-variable atoms so
            // cohomology denominators like l1^2*l2 keep factored form; the
            // negative and half-integer parts are Laurent units and go
            // upstairs.
            const auto& [mono, coef] = p.terms()[0];
            num_ = num_.scaled(rat_pow(coef, -mult));
            for (const auto& e : mono.e) {
                VarId v = var_from_code(e.first);
                if (e.second > 0 && e.second % 2 == 0) {
                    den_.push_back({Factor{MPoly::variable(v)}, mult * (e.second / 2)});
                } else {
                    num_ = num_.mul_monomial(Monomial::var_pow2(v, -e.second * mult));
                }
            }
            continue;
        }
        auto [floor, shifted] = strip_monomial_floor(p);
        num_ = num_.mul_monomial(floor.pow(-mult));
        auto [unit, atom] = Factor::normalize(shifted);
        num_ = num_.scaled(rat_pow(unit, -mult));
        den_.push_back({std::move(atom), mult});
    }
    std::sort(den_.begin(), den_.end(),
              [](const auto& a, const auto& b) { return den_before(a.first, b.first); });
    // merge duplicates
    Den merged;
    for (auto& d : den_) {
        if (!merged.empty() && merged.back().first == d.first)
            merged.back().second += d.second;
        else
            merged.push_back(std::move(d));
    }
    den_ = std::move(merged);
    cancel();
}

void RatFun::cancel() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& [atom, mult] : den_) {
        while (mult > 0) {
            auto q = num_.exact_div(atom.p);
            if (!q) break;
            num_ = std::move(*q);
            --mult;
            if (num_.is_monomial()) break;  // denominators cannot divide a unit
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(),
                              [](const auto& d) { return d.second == 0; }),
               den_.end());
}

RatFun RatFun::operator-() const { return raw(-num_, den_); }

RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.empty() && b.den_.empty()) return RatFun::poly(a.num_ + b.num_);
    // Least common multiple of the two factored denominators.
    RatFun::Den lcm;
    auto ia = a.den_.begin(), ib = b.den_.begin();
    while (ia != a.den_.end() || ib != b.den_.end()) {
        if (ib == b.den_.end() || (ia != a.den_.end() && den_before(ia->first, ib->first))) {
            lcm.push_back(*ia++);
        } else if (ia == a.den_.end() || den_before(ib->first, ia->first)) {
            lcm.push_back(*ib++);
        } else {
            lcm.push_back({ia->first, std::max(ia->second, ib->second)});
            ++ia;
            ++ib;
        }
    }
    auto cofactor = [&lcm](const RatFun::Den& d) {
        MPoly c = MPoly::constant(Rat(1));
        auto id = d.begin();
        for (const auto& [atom, mult] : lcm) {
            int have = 0;
            if (id != d.end() && id->first == atom) have = (id++)->second;
            if (mult > have) c = c * atom.p.pow(mult - have);
        }
        return c;
    };
    MPoly num = a.num_ * cofactor(a.den_) + b.num_ * cofactor(b.den_);
    RatFun r = RatFun::raw(std::move(num), std::move(lcm));
    if (r.num_.is_zero()) {
        r.den_.clear();
        return r;
    }
    r.cancel();
    return r;
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    // Cross-cancel before expanding the product to keep numerators small.
    MPoly na = a.num_, nb = b.num_;
    RatFun::Den den = a.den_;
    for (const auto& d : b.den_) den.push_back(d);
    std::sort(den.begin(), den.end(),
              [](const auto& x, const auto& y) { return den_before(x.first, y.first); });
    RatFun::Den merged;
    for (auto& d : den) {
        if (!merged.empty() && merged.back().first == d.first)
            merged.back().second += d.second;
        else
            merged.push_back(std::move(d));
    }
    for (auto& [atom, mult] : merged) {
        for (MPoly* n : {&na, &nb}) {
            while (mult > 0 && !n->is_monomial()) {
                auto q = n->exact_div(atom.p);
                if (!q) break;
                *n = std::move(*q);
                --mult;
            }
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& d) { return d.second == 0; }),
                 merged.end());
    RatFun r = RatFun::raw(na * nb, std::move(merged));
    r.cancel();
    return r;
}

RatFun RatFun::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    MPoly n = MPoly::constant(Rat(1));
    std::vector<std::pair<MPoly, int>> dens;
    dens.push_back({num_, 1});
    for (const auto& [atom, mult] : den_) n = n * atom.p.pow(mult);
    RatFun r(std::move(n), std::move(dens));
    return r;
}

RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw DivisionByZero("division by zero rational function");
    return a * b.inverse();
}

RatFun RatFun::pow(std::int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    RatFun acc = one();
    RatFun base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        if (k >>= 1) base = base * base;
    }
    return acc;
}

RatFun RatFun::div_poly(const MPoly& f) const {
    if (f.is_zero()) throw DivisionByZero("division by zero polynomial");
    std::vector<std::pair<MPoly, int>> dens;
    dens.reserve(den_.size() + 1);
    for (const auto& [atom, mult] : den_) dens.push_back({atom.p, mult});
    dens.push_back({f, 1});
    return RatFun(num_, std::move(dens));
}

RatFun RatFun::subst_rat(VarId v, const Rat& value) const {
    return subst_monomial(v, value, Monomial::one());
}

RatFun RatFun::subst_monomial(VarId v, const Rat& coef, const Monomial& image) const {
    if (!depends_on(v)) return *this;
    std::vector<std::pair<MPoly, int>> dens;
    dens.reserve(den_.size());
    for (const auto& [atom, mult] : den_) {
        MPoly a = atom.p.subst_monomial(v, coef, image);
        if (a.is_zero())
            throw DivisionByZero("substitution " + var_name(v) + " hits a denominator zero");
        dens.push_back({std::move(a), mult});
    }
    return RatFun(num_.subst_monomial(v, coef, image), std::move(dens));
}

RatFun RatFun::subst(VarId v, const RatFun& image) const {
    if (!depends_on(v)) return *this;
    if (image.is_poly() && image.num().is_monomial()) {
        const auto& t = image.num().terms()[0];
        return subst_monomial(v, t.second, t.first);
    }
    if (image.is_poly() && image.num().is_constant())
        return subst_rat(v, image.num().constant_term());
    auto eval_poly = [&](const MPoly& p) {
        RatFun acc;
        for (auto& [exp2, coef] : p.collect(v)) {
            if (exp2 % 2 != 0) throw std::domain_error("half power under rational substitution");
            acc += RatFun::poly(coef) * image.pow(exp2 / 2);
        }
        return acc;
    };
    RatFun r = eval_poly(num_);
    for (const auto& [atom, mult] : den_) {
        RatFun a = atom.p.depends_on(v) ? eval_poly(atom.p) : RatFun::poly(atom.p);
        if (a.is_zero())
            throw DivisionByZero("substitution " + var_name(v) + " hits a denominator zero");
        r = r * a.pow(-mult);
    }
    return r;
}

RatFun RatFun::adams(std::int64_t k) const {
    std::vector<std::pair<MPoly, int>> dens;
    dens.reserve(den_.size());
    for (const auto& [atom, mult] : den_) dens.push_back({atom.p.adams(k), mult});
    return RatFun(num_.adams(k), std::move(dens));
}

RatFun RatFun::bar() const {
    std::vector<std::pair<MPoly, int>> dens;
    dens.reserve(den_.size());
    for (const auto& [atom, mult] : den_) dens.push_back({atom.p.bar(), mult});
    return RatFun(num_.bar(), std::move(dens));
}

Rat RatFun::eval(const std::map<std::uint16_t, Rat>& values,
                 const std::map<std::uint16_t, Rat>& half_values) const {
    Rat r = num_.eval(values, half_values);
    for (const auto& [atom, mult] : den_) {
        Rat d = atom.p.eval(values, half_values);
        if (qvx::is_zero(d)) throw DivisionByZero("denominator atom vanishes at the sample point");
        r /= rat_pow(d, mult);
    }
    return r;
}

int RatFun::pole_order(const MPoly& atom_in) const {
    auto [floor, shifted] = strip_monomial_floor(atom_in);
    auto [unit, atom] = Factor::normalize(shifted);
    (void)unit;
    (void)floor;
    int order = 0;
    for (const auto& [a, mult] : den_)
        if (a == atom) order += mult;
    if (order > 0) return order;  // canceled form: atom cannot also divide num
    MPoly n = num_;
    while (!n.is_zero()) {
        auto q = n.exact_div(atom.p);
        if (!q) break;
        n = std::move(*q);
        --order;
    }
    return order;
}

RatFun RatFun::degree_part_homog(std::int64_t i) const {
    if (is_zero()) return RatFun();
    std::int64_t den_deg2 = 0;
    for (const auto& [atom, mult] : den_) {
        if (!atom.p.is_homogeneous_if(is_coh_class))
            throw NonHomogeneousDenominator("factor " + atom.p.str() +
                                            " is not homogeneous in the graded variables");
        den_deg2 += mult * atom.p.deg2_max_if(is_coh_class);
    }
    auto parts = num_.homogeneous_parts(is_coh_class);
    auto it = parts.find(2 * i + den_deg2);
    if (it == parts.end()) return RatFun();
    std::vector<std::pair<MPoly, int>> dens;
    dens.reserve(den_.size());
    for (const auto& [atom, mult] : den_) dens.push_back({atom.p, mult});
    return RatFun(it->second, std::move(dens));
}

bool RatFun::depends_on(VarId v) const {
    if (num_.depends_on(v)) return true;
    for (const auto& [atom, mult] : den_)
        if (atom.p.depends_on(v)) return true;
    return false;
}

}  // namespace qvx
