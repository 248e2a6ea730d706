#include "qvx/grading.hpp"

#include "qvx/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace qvx {

WeightMap default_weights(const RatFun& f) {
    WeightMap w;
    auto add_from = [&](const MPoly& p) {
        for (std::uint16_t code : p.var_codes()) {
            VarId v = var_from_code(code);
            if (!is_k_class(v)) continue;
            auto image = [&]() -> VarId {
                switch (v.cls) {
                    case VarClass::T: return var_l(v.idx);
                    case VarClass::Y: return var_m(v.idx);
                    case VarClass::V: return var_w(v.idx);
                    default:
                        throw std::logic_error("no default weight for variable " + var_name(v));
                }
            }();
            w.emplace(code, MPoly::variable(image));
        }
    };
    add_from(f.num());
    for (const auto& [atom, mult] : f.den()) add_from(atom.p);
    return w;
}

MPoly monomial_weight(const Monomial& m, const WeightMap& weights) {
    MPoly w;
    for (const auto& [code, exp2] : m.e) {
        auto it = weights.find(code);
        if (it == weights.end()) continue;
        w = w + it->second.scaled(rat(exp2, 2));
    }
    return w;
}

namespace {

// exp(gvar * wt) through gvar^order, coefficients wt^j / j!
TruncSeries exp_graded(const MPoly& wt, int order, VarId gvar) {
    std::vector<RatFun> c;
    c.reserve(static_cast<std::size_t>(order + 1));
    MPoly p = MPoly::constant(Rat(1));
    Rat f(1);
    c.push_back(RatFun::one());
    for (int j = 1; j <= order; ++j) {
        p = p * wt;
        f *= j;
        c.push_back(RatFun::poly(p.scaled(Rat(1) / f)));
    }
    return TruncSeries::from_coeffs(gvar, 0, std::move(c), order);
}

// One polynomial under x^w -> exp(gvar*w*weight(x)); explicit gvar powers in
// a term become plain series shifts.
TruncSeries poly_graded(const MPoly& p, const WeightMap& weights, int order, VarId gvar) {
    TruncSeries acc(gvar, order);
    for (auto& [exp2, slice] : p.collect(gvar)) {
        if (exp2 % 2 != 0) throw std::domain_error("half power of the grading variable");
        int shift = static_cast<int>(exp2 / 2);
        TruncSeries part(gvar, order - shift);
        // Group by multiplicative part so each distinct exponential is
        // expanded once. Variables with no assigned weight stay symbolic
        // inside the coefficients (partial grading).
        auto groups =
            slice.group_by([&](VarId v) { return weights.count(v.code()) != 0; });
        for (const auto& [kmono, rest] : groups) {
            MPoly wt;
            for (const auto& [code, we2] : kmono.e) {
                wt = wt + weights.at(code).scaled(rat(we2, 2));
            }
            if (wt.is_zero())
                part += TruncSeries::constant(gvar, RatFun::poly(rest), order - shift);
            else
                part += exp_graded(wt, order - shift, gvar).scaled(RatFun::poly(rest));
        }
        acc += part.shifted(shift);
    }
    return acc;
}

}  // namespace

TruncSeries graded_expand(const RatFun& f, const WeightMap& weights, int order, VarId gvar) {
    if (f.is_zero()) return TruncSeries(gvar, order);
    // Denominator atoms can vanish at b = 0 (for example 1 - t1); their
    // series inverse shifts the valuation, so the working order is widened
    // by the total denominator valuation to keep the requested precision.
    int slack = 0;
    for (const auto& [atom, mult] : f.den()) {
        int probe = std::max(order + 1, 1);
        for (;;) {
            TruncSeries d = poly_graded(atom.p, weights, probe, gvar);
            if (!d.is_zero()) {
                slack += mult * d.valuation();
                break;
            }
            if (probe > 4 * (std::abs(order) + 16))
                throw NonInvertibleDenominator("denominator " + atom.p.str() +
                                               " vanishes beyond order under the grading");
            probe *= 2;
        }
    }
    // Inverting a series with valuation v costs 2v orders of precision (v in
    // the unit split, v again in the shift), so widen by twice the total.
    int work = std::max(order, 0) + 2 * slack;
    TruncSeries r = poly_graded(f.num(), weights, work, gvar);
    for (const auto& [atom, mult] : f.den()) {
        TruncSeries di = poly_graded(atom.p, weights, work, gvar).inverse();
        for (int k = 0; k < mult; ++k) r = r * di;
    }
    return r.order() > order ? r.truncated(order) : r;
}

RatFun degree_part(const RatFun& f, std::int64_t i) {
    try {
        return f.degree_part_homog(i);
    } catch (const NonHomogeneousDenominator&) {
    }
    // General route: scale every graded variable by b and expand.
    RatFun g = f;
    std::vector<std::uint16_t> codes;
    for (std::uint16_t code : f.num().var_codes()) codes.push_back(code);
    for (const auto& [atom, mult] : f.den())
        for (std::uint16_t code : atom.p.var_codes()) codes.push_back(code);
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    for (std::uint16_t code : codes) {
        VarId v = var_from_code(code);
        if (!is_coh_class(v)) continue;
        g = g.subst_monomial(v, Rat(1), Monomial::var(var_b()) * Monomial::var(v));
    }
    if (i > INT32_MAX || i < INT32_MIN) throw std::domain_error("degree out of range");
    int target = static_cast<int>(i);

    // A homogeneous atom of positive degree turns into a pure power of b, so
    // unlike ratfun_expand the inversion here must budget for valuations.
    auto atom_valuation = [](const MPoly& p) {
        std::int64_t v = INT64_MAX;
        for (const auto& [exp2, coef] : p.collect(var_b())) {
            (void)coef;
            v = std::min<std::int64_t>(v, exp2 / 2);
        }
        return v;
    };
    std::int64_t slack = 0;
    for (const auto& [atom, mult] : g.den()) slack += mult * atom_valuation(atom.p);
    std::int64_t work_l = std::max<std::int64_t>(target, 0) + 2 * std::max<std::int64_t>(slack, 0);
    if (work_l > INT32_MAX) throw std::domain_error("degree window out of range");
    int work = static_cast<int>(work_l);

    auto poly_to_series = [&](const MPoly& p) {
        TruncSeries s(var_b(), work);
        for (const auto& [exp2, coef] : p.collect(var_b())) {
            if (exp2 % 2 != 0) throw std::domain_error("half power of the grading variable");
            s += TruncSeries::monomial_coeff(var_b(), RatFun::poly(coef), exp2 / 2, work);
        }
        return s;
    };
    TruncSeries r = poly_to_series(g.num());
    for (const auto& [atom, mult] : g.den()) {
        TruncSeries di = poly_to_series(atom.p).inverse();
        for (int k = 0; k < mult; ++k) r = r * di;
    }
    if (r.is_zero() || target < r.valuation()) return RatFun();
    if (target > r.order()) throw OutOfStatedRange("degree part beyond the expansion budget");
    return r.coeff(target);
}

std::map<std::int64_t, RatFun> degree_parts(const RatFun& f, std::int64_t lo, std::int64_t hi) {
    std::map<std::int64_t, RatFun> out;
    for (std::int64_t i = lo; i <= hi; ++i) {
        RatFun p = degree_part(f, i);
        if (!p.is_zero()) out.emplace(i, p);
    }
    return out;
}

}  // namespace qvx
