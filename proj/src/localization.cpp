#include "qvx/localization.hpp"

#include "qvx/errors.hpp"
#include "qvx/textio.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

namespace qvx {

std::string genus_kind_name(GenusKind k) {
    switch (k) {
        case GenusKind::Segre: return "segre";
        case GenusKind::Chern: return "chern";
        case GenusKind::Verlinde: return "verlinde";
        case GenusKind::Nekrasov: return "nekrasov";
    }
    throw std::logic_error("genus_kind_name: bad kind");
}

void GenusSpec::validate() const {
    if (dim != 2 && dim != 4) throw std::invalid_argument("dimension must be 2 or 4");
    if (N < 1) throw std::invalid_argument("at least one color is required");
    if (r < 0 || s < 0) throw std::invalid_argument("alpha ranks must be nonnegative");
    if (order < 0) throw std::invalid_argument("truncation order must be nonnegative");
    if (sign_rule == SignRule::Table && !sign_table)
        throw std::invalid_argument("table sign rule needs a sign table");
    if (dim == 2 && sign_rule != SignRule::Canonical)
        throw std::invalid_argument("sign tables only apply in dimension 4");
    if (mode == WeightMode::Numeric && kind == GenusKind::Nekrasov && s > 0)
        throw std::invalid_argument("numeric Nekrasov evaluation supports s = 0 only");
}

std::function<int(const ColoredSolidPartition&)> sign_table_flip() {
    return [](const ColoredSolidPartition& pi) { return sign_exponent(pi) + colored_size(pi); };
}

const RatFun& QSeries::coeff(int n) const {
    if (n < 0 || n >= static_cast<int>(c.size()))
        throw OutOfStatedRange("coefficient q^" + std::to_string(n) + " beyond stored order " +
                               std::to_string(static_cast<int>(c.size()) - 1));
    return c[static_cast<std::size_t>(n)];
}

std::string QSeries::json() const {
    std::ostringstream o;
    o << "{\"kind\":\"" << genus_kind_name(spec.kind) << "\",\"d\":" << spec.dim
      << ",\"N\":" << spec.N << ",\"r\":" << spec.r << ",\"s\":" << spec.s
      << ",\"order\":" << spec.order << ",\"reduced\":" << (reduced ? "true" : "false")
      << ",\"coefficients\":[";
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (n) o << ",";
        o << "{\"n\":" << n << ",\"value\":\"" << ratfun_str(c[n]) << "\"}";
    }
    o << "]}";
    return o.str();
}

namespace {

// ----- shared helpers ------------------------------------------------------

VarId coh_image(VarId v) {
    switch (v.cls) {
        case VarClass::T: return var_l(v.idx);
        case VarClass::Y: return var_m(v.idx);
        case VarClass::V: return var_w(v.idx);
        default: throw std::logic_error("no cohomological image for " + var_name(v));
    }
}

MPoly weight_form(const Monomial& m) {
    MPoly w;
    for (const auto& [code, exp2] : m.e)
        w = w + MPoly::variable(coh_image(var_from_code(code))).scaled(rat(exp2, 2));
    return w;
}

// Specialized variant: variables named in the map use their mapped form,
// the rest keep the default image.
MPoly weight_form(const Monomial& m, const WeightMap& weights) {
    MPoly w;
    for (const auto& [code, exp2] : m.e) {
        auto it = weights.find(code);
        MPoly base =
            it != weights.end() ? it->second : MPoly::variable(coh_image(var_from_code(code)));
        w = w + base.scaled(rat(exp2, 2));
    }
    return w;
}

int int_mult(const Rat& c) {
    if (!is_integer(c)) throw std::logic_error("character multiplicity is not an integer");
    return static_cast<int>(c.get_num().get_si());
}

// m^(1/2); every stored exponent must land on a half-exponent-capable
// variable, which holds for all monomials formed here.
Monomial mono_half(const Monomial& m) {
    Monomial h;
    for (const auto& [code, exp2] : m.e) h = h * Monomial::var_pow2(var_from_code(code), exp2 / 2);
    return h;
}

// x^(1/2) - x^(-1/2)
MPoly bracket(const Monomial& x) {
    Monomial h = mono_half(x);
    return MPoly::from_terms({{h, Rat(1)}, {h.inverse(), Rat(-1)}});
}

// Accumulates a product of polynomial factors with signed exponents into a
// factored rational function, so fixed-point sums cancel atom by atom.
struct FactorAcc {
    MPoly num = MPoly::constant(Rat(1));
    std::vector<std::pair<MPoly, int>> den;

    void mul(const MPoly& f, int mult) {
        if (mult > 0)
            num = num * f.pow(mult);
        else if (mult < 0)
            den.emplace_back(f, -mult);
    }
    void mul_monomial(const Monomial& m, const Rat& c = Rat(1)) {
        num = num * MPoly::monomial(m, c);
    }
    RatFun done() && { return RatFun(std::move(num), std::move(den)); }
};

std::string describe(const ColoredPartition& mu) {
    std::string s = "(";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (i) s += "|";
        s += mu[i].str();
    }
    return s + ")";
}

std::string describe(const ColoredSolidPartition& pi) {
    std::string s = "(";
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (i) s += "|";
        s += pi[i].str();
    }
    return s + ")";
}

std::vector<int> index_range(int from, int to) {  // inclusive 1-based
    std::vector<int> v;
    for (int i = from; i <= to; ++i) v.push_back(i);
    return v;
}

// ----- parallel map over fixed points with a fixed reduction tree ----------

template <class Pt, class F>
std::vector<RatFun> map_points(const std::vector<Pt>& pts, const F& f) {
    std::vector<RatFun> vals(pts.size());
    std::size_t n = pts.size();
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t threads = std::min<std::size_t>(hw ? hw : 1, 8);
    if (n < 16 || threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) vals[i] = f(pts[i]);
        return vals;
    }
    std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::future<void>> parts;
    for (std::size_t b = 0; b < n; b += chunk) {
        std::size_t e = std::min(n, b + chunk);
        parts.push_back(std::async(std::launch::async, [&, b, e] {
            for (std::size_t i = b; i < e; ++i) vals[i] = f(pts[i]);
        }));
    }
    for (auto& p : parts) p.get();
    return vals;
}

// Pairwise tree: the same association regardless of thread count, and the
// balanced shape keeps intermediate denominators from piling up on one side.
RatFun sum_pairwise(std::vector<RatFun> v) {
    if (v.empty()) return RatFun();
    while (v.size() > 1) {
        std::vector<RatFun> next((v.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < v.size(); i += 2) next[i / 2] = v[i] + v[i + 1];
        if (v.size() % 2) next.back() = v.back();
        v = std::move(next);
    }
    return v[0];
}

}  // namespace

// ----- per-point classes ----------------------------------------------------

RatFun euler_class(const MPoly& chr) {
    FactorAcc acc;
    for (const auto& [mono, coef] : chr.terms()) {
        if (mono.e.empty())
            throw ZeroWeight("euler class of a character with a trivial summand");
        acc.mul(weight_form(mono), int_mult(coef));
    }
    return std::move(acc).done();
}

RatFun inverse_euler(const MPoly& chr) {
    FactorAcc acc;
    for (const auto& [mono, coef] : chr.terms()) {
        if (mono.e.empty())
            throw ZeroWeight("euler class of a character with a trivial summand");
        acc.mul(weight_form(mono), -int_mult(coef));
    }
    return std::move(acc).done();
}

RatFun chern_contrib(const MPoly& chr) {
    FactorAcc acc;
    for (const auto& [mono, coef] : chr.terms()) {
        if (mono.e.empty()) continue;  // c(trivial) = 1
        MPoly f = MPoly::constant(Rat(1)) + weight_form(mono);
        if (f.is_zero()) throw PoleAtMinusOne("total Chern factor vanishes");
        acc.mul(f, int_mult(coef));
    }
    return std::move(acc).done();
}

Monomial det_monomial(const MPoly& chr) {
    Monomial d;
    for (const auto& [mono, coef] : chr.terms()) d = d * mono.pow(int_mult(coef));
    return d;
}

RatFun euler_class(const MPoly& chr, const WeightMap& weights) {
    FactorAcc acc;
    for (const auto& [mono, coef] : chr.terms()) {
        if (mono.e.empty())
            throw ZeroWeight("euler class of a character with a trivial summand");
        MPoly f = weight_form(mono, weights);
        if (f.is_zero())
            throw ZeroWeight("euler class summand has zero weight under the specialization");
        acc.mul(f, int_mult(coef));
    }
    return std::move(acc).done();
}

RatFun inverse_euler(const MPoly& chr, const WeightMap& weights) {
    FactorAcc acc;
    for (const auto& [mono, coef] : chr.terms()) {
        if (mono.e.empty())
            throw ZeroWeight("euler class of a character with a trivial summand");
        MPoly f = weight_form(mono, weights);
        if (f.is_zero())
            throw ZeroWeight("euler class summand has zero weight under the specialization");
        acc.mul(f, -int_mult(coef));
    }
    return std::move(acc).done();
}

RatFun chern_contrib(const MPoly& chr, const WeightMap& weights) {
    FactorAcc acc;
    for (const auto& [mono, coef] : chr.terms()) {
        if (mono.e.empty()) continue;  // c(trivial) = 1
        MPoly w = weight_form(mono, weights);
        if (w.is_zero()) continue;  // specialized to the trivial weight
        MPoly f = MPoly::constant(Rat(1)) + w;
        if (f.is_zero()) throw PoleAtMinusOne("total Chern factor vanishes");
        acc.mul(f, int_mult(coef));
    }
    return std::move(acc).done();
}

namespace {

// ch(Lambda_{-1} tangent^dual) as signed Koszul factors pushed into an
// accumulator: (1 - x^-1) per weight x, inverted multiplicities flipped.
void mul_koszul_dual_inverse(FactorAcc& acc, const MPoly& tangent) {
    for (const auto& [mono, coef] : tangent.terms()) {
        if (mono.e.empty())
            throw ZeroWeight("Koszul factor of a character with a trivial summand");
        acc.mul(one_minus(mono.inverse()), -int_mult(coef));
    }
}

}  // namespace

RatFun verlinde_contrib(const MPoly& tangent, const Monomial& det) {
    FactorAcc acc;
    acc.mul_monomial(det);
    mul_koszul_dual_inverse(acc, tangent);
    return std::move(acc).done();
}

TruncSeries verlinde_contrib_graded(const MPoly& tangent, const Monomial& det, int order) {
    return verlinde_contrib_graded(tangent, det, WeightMap{}, order);
}

namespace {

// Coefficients of log u(z) through z^order, u(z) = (1 - e^(-z)) / z.
std::vector<Rat> log_koszul_unit(int order) {
    std::vector<Rat> u(static_cast<std::size_t>(order) + 1);
    Rat f(1);  // (j+1)!
    for (int j = 0; j <= order; ++j) {
        f *= j + 1;
        u[static_cast<std::size_t>(j)] = Rat(j % 2 ? -1 : 1) / f;
    }
    std::vector<Rat> l(static_cast<std::size_t>(order) + 1);
    for (int j = 1; j <= order; ++j) {
        Rat s = u[static_cast<std::size_t>(j)];
        for (int i = 1; i < j; ++i)
            s -= l[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j - i)] * Rat(i) /
                 Rat(j);
        l[static_cast<std::size_t>(j)] = s;
    }
    return l;
}

}  // namespace

TruncSeries verlinde_contrib_graded(const MPoly& tangent, const Monomial& det,
                                    const WeightMap& weights, int order) {
    VarId gvar = var_b();
    // The b-valuation is minus the signed rank of the character; factors only
    // shape the unit part.
    int shift = 0;
    for (const auto& [mono, coef] : tangent.terms()) {
        if (mono.e.empty())
            throw ZeroWeight("Koszul factor of a character with a trivial summand");
        shift -= int_mult(coef);
    }
    if (shift > order) return TruncSeries(gvar, order);
    int rel = order - shift;
    std::vector<Rat> lam = log_koszul_unit(rel);
    std::vector<MPoly> lg(static_cast<std::size_t>(rel) + 1);
    if (rel >= 1 && !det.e.empty()) lg[1] = lg[1] + weight_form(det, weights);
    FactorAcc pref;
    for (const auto& [mono, coef] : tangent.terms()) {
        MPoly w = weight_form(mono, weights);
        if (w.is_zero())
            throw ZeroWeight("Koszul factor has zero weight under the specialization");
        int p = -int_mult(coef);
        pref.mul(w, p);
        MPoly wp = MPoly::constant(Rat(1));
        for (int j = 1; j <= rel; ++j) {
            wp = wp * w;
            lg[static_cast<std::size_t>(j)] =
                lg[static_cast<std::size_t>(j)] + wp.scaled(lam[static_cast<std::size_t>(j)] * p);
        }
    }
    // exp of the aggregated log, coefficientwise
    std::vector<MPoly> e(static_cast<std::size_t>(rel) + 1);
    e[0] = MPoly::constant(Rat(1));
    for (int j = 1; j <= rel; ++j) {
        MPoly s;
        for (int i = 1; i <= j; ++i)
            s = s + (lg[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j - i)])
                        .scaled(Rat(i));
        e[static_cast<std::size_t>(j)] = s.scaled(Rat(1) / Rat(j));
    }
    std::vector<RatFun> c;
    c.reserve(e.size());
    for (auto& p : e) c.push_back(RatFun::poly(std::move(p)));
    return TruncSeries::from_coeffs(gvar, shift, std::move(c), order).scaled(std::move(pref).done());
}

// ----- symbolic per-point values --------------------------------------------

namespace {

MPoly negated(const MPoly& p) { return p.scaled(Rat(-1)); }

RatFun nekrasov_insertion_2d(FactorAcc& acc, const std::vector<MPoly>& Q, int r, int s,
                             const MPoly& tangent) {
    for (std::size_t j = 0; j < Q.size(); ++j) {
        Monomial yj = Monomial::var(var_y(static_cast<std::uint8_t>(j + 1)));
        for (const auto& [mono, coef] : Q[j].terms()) {
            int mult = int_mult(coef);
            for (int i = 1; i <= r + s; ++i) {
                Monomial m = mono * yj * Monomial::var(var_v(static_cast<std::uint8_t>(i))) *
                             Monomial::var(var_z());
                MPoly f = one_minus(m);
                acc.mul(f, i <= r ? mult : -mult);
            }
        }
    }
    mul_koszul_dual_inverse(acc, tangent);
    return std::move(acc).done();
}

RatFun point_value_2d(const GenusSpec& spec, const ColoredPartition& mu) {
    std::vector<int> pos = index_range(1, spec.r);
    std::vector<int> neg = index_range(spec.r + 1, spec.r + spec.s);
    MPoly tangent = tangent_surface(mu);
    switch (spec.kind) {
        case GenusKind::Segre:
            return inverse_euler(tangent) * chern_contrib(negated(taut_surface(mu, pos, neg)));
        case GenusKind::Chern:
            return inverse_euler(tangent) * chern_contrib(taut_surface(mu, pos, neg));
        case GenusKind::Verlinde:
            return verlinde_contrib(tangent, det_monomial(taut_surface(mu, pos, neg)));
        case GenusKind::Nekrasov: {
            FactorAcc acc;
            return nekrasov_insertion_2d(acc, color_characters(mu), spec.r, spec.s, tangent);
        }
    }
    throw std::logic_error("point_value_2d: bad kind");
}

int sign_parity(const GenusSpec& spec, const ColoredSolidPartition& pi) {
    int e = spec.sign_rule == SignRule::Table ? spec.sign_table(pi) : sign_exponent(pi);
    return e & 1;
}

RatFun point_value_4d(const GenusSpec& spec, const ColoredSolidPartition& pi) {
    std::vector<int> pos = index_range(1, spec.r);
    std::vector<int> neg = index_range(spec.r + 1, spec.r + spec.s);
    MPoly tangent = sqrt_tangent_cy4(pi);
    RatFun value;
    switch (spec.kind) {
        case GenusKind::Segre:
            value = inverse_euler(tangent) * chern_contrib(negated(taut_cy4(pi, pos, neg)));
            break;
        case GenusKind::Chern:
            value = inverse_euler(tangent) * chern_contrib(taut_cy4(pi, pos, neg));
            break;
        case GenusKind::Verlinde:
            value = verlinde_contrib(tangent, det_monomial(taut_cy4(pi, pos, neg)));
            break;
        case GenusKind::Nekrasov: {
            FactorAcc acc;
            std::vector<MPoly> Q = color_characters(pi);
            Monomial twist;
            for (std::size_t j = 0; j < Q.size(); ++j) {
                Monomial yj = Monomial::var(var_y(static_cast<std::uint8_t>(j + 1)));
                for (const auto& [mono, coef] : Q[j].terms()) {
                    int mult = int_mult(coef);
                    twist = twist * mono_half(mono.inverse()).pow(mult);
                    for (int i = 1; i <= spec.r + spec.s; ++i) {
                        MPoly br = bracket(
                            mono * yj * Monomial::var(var_v(static_cast<std::uint8_t>(i))));
                        acc.mul(br, i <= spec.r ? mult : -mult);
                    }
                }
            }
            acc.mul_monomial(twist);
            mul_koszul_dual_inverse(acc, tangent);
            value = std::move(acc).done();
            break;
        }
    }
    return sign_parity(spec, pi) ? value.scaled(Rat(-1)) : value;
}

// ----- numeric per-point values ---------------------------------------------

Rat mono_value(const Monomial& m, const SamplePoint& pt) {
    Rat acc(1);
    for (const auto& [code, exp2] : m.e) acc *= rat_pow(pt.half.at(code), exp2);
    return acc;
}

Rat mono_half_value(const Monomial& m, const SamplePoint& pt) {
    Rat acc(1);
    for (const auto& [code, exp2] : m.e) {
        if (exp2 % 2 != 0) throw std::logic_error("half of an odd half-exponent");
        acc *= rat_pow(pt.half.at(code), exp2 / 2);
    }
    return acc;
}

Rat weight_value(const Monomial& m, const SamplePoint& pt) {
    Rat acc(0);
    for (const auto& [code, exp2] : m.e)
        acc += rat(exp2, 2) * pt.coh.at(coh_image(var_from_code(code)).code());
    return acc;
}

Rat euler_value(const MPoly& chr, const SamplePoint& pt, int flip) {
    Rat acc(1);
    for (const auto& [mono, coef] : chr.terms()) {
        if (mono.e.empty())
            throw ZeroWeight("euler class of a character with a trivial summand");
        Rat w = weight_value(mono, pt);
        if (is_zero(w)) throw DivisionByZero("sample point hit a zero weight");
        acc *= rat_pow(w, flip * int_mult(coef));
    }
    return acc;
}

Rat chern_value(const MPoly& chr, const SamplePoint& pt, int flip) {
    Rat acc(1);
    for (const auto& [mono, coef] : chr.terms()) {
        if (mono.e.empty()) continue;
        Rat f = Rat(1) + weight_value(mono, pt);
        if (is_zero(f)) throw PoleAtMinusOne("total Chern factor vanishes at the sample point");
        acc *= rat_pow(f, flip * int_mult(coef));
    }
    return acc;
}

Rat koszul_dual_value(const MPoly& tangent, const SamplePoint& pt) {
    Rat acc(1);
    for (const auto& [mono, coef] : tangent.terms()) {
        if (mono.e.empty())
            throw ZeroWeight("Koszul factor of a character with a trivial summand");
        Rat f = Rat(1) - Rat(1) / mono_value(mono, pt);
        if (is_zero(f)) throw DivisionByZero("sample point hit a unit tangent weight");
        acc *= rat_pow(f, int_mult(coef));
    }
    return acc;
}

Rat det_value(const MPoly& chr, const SamplePoint& pt) {
    Rat acc(1);
    for (const auto& [mono, coef] : chr.terms()) acc *= rat_pow(mono_value(mono, pt), int_mult(coef));
    return acc;
}

// (1 - beta z) products accumulate as dense z-coefficient rows.
void mul_z_linear(std::vector<Rat>& zp, const Rat& beta) {
    std::vector<Rat> nx(zp.size() + 1, Rat(0));
    for (std::size_t i = 0; i < zp.size(); ++i) {
        nx[i] += zp[i];
        nx[i + 1] -= beta * zp[i];
    }
    zp = std::move(nx);
}

std::vector<Rat> numeric_point_2d(const GenusSpec& spec, const ColoredPartition& mu,
                                  const SamplePoint& pt) {
    std::vector<int> pos = index_range(1, spec.r);
    std::vector<int> neg = index_range(spec.r + 1, spec.r + spec.s);
    MPoly tangent = tangent_surface(mu);
    switch (spec.kind) {
        case GenusKind::Segre:
            return {euler_value(tangent, pt, -1) *
                    chern_value(taut_surface(mu, pos, neg), pt, -1)};
        case GenusKind::Chern:
            return {euler_value(tangent, pt, -1) * chern_value(taut_surface(mu, pos, neg), pt, 1)};
        case GenusKind::Verlinde:
            return {det_value(taut_surface(mu, pos, neg), pt) / koszul_dual_value(tangent, pt)};
        case GenusKind::Nekrasov: {
            std::vector<Rat> zp{Rat(1)};
            std::vector<MPoly> Q = color_characters(mu);
            for (std::size_t j = 0; j < Q.size(); ++j) {
                Rat yv = rat_pow(pt.half.at(var_y(static_cast<std::uint8_t>(j + 1)).code()), 2);
                for (const auto& [mono, coef] : Q[j].terms()) {
                    Rat base = mono_value(mono, pt) * yv;
                    int mult = int_mult(coef);
                    for (int i = 1; i <= spec.r; ++i) {
                        Rat beta =
                            base * rat_pow(pt.half.at(var_v(static_cast<std::uint8_t>(i)).code()), 2);
                        for (int k = 0; k < mult; ++k) mul_z_linear(zp, beta);
                    }
                }
            }
            Rat ch = koszul_dual_value(tangent, pt);
            for (auto& x : zp) x /= ch;
            return zp;
        }
    }
    throw std::logic_error("numeric_point_2d: bad kind");
}

Rat numeric_point_4d(const GenusSpec& spec, const ColoredSolidPartition& pi,
                     const SamplePoint& pt) {
    std::vector<int> pos = index_range(1, spec.r);
    std::vector<int> neg = index_range(spec.r + 1, spec.r + spec.s);
    MPoly tangent = sqrt_tangent_cy4(pi);
    Rat value;
    switch (spec.kind) {
        case GenusKind::Segre:
            value = euler_value(tangent, pt, -1) * chern_value(taut_cy4(pi, pos, neg), pt, -1);
            break;
        case GenusKind::Chern:
            value = euler_value(tangent, pt, -1) * chern_value(taut_cy4(pi, pos, neg), pt, 1);
            break;
        case GenusKind::Verlinde:
            value = det_value(taut_cy4(pi, pos, neg), pt) / koszul_dual_value(tangent, pt);
            break;
        case GenusKind::Nekrasov: {
            value = Rat(1);
            std::vector<MPoly> Q = color_characters(pi);
            for (std::size_t j = 0; j < Q.size(); ++j) {
                Monomial yj = Monomial::var(var_y(static_cast<std::uint8_t>(j + 1)));
                for (const auto& [mono, coef] : Q[j].terms()) {
                    int mult = int_mult(coef);
                    value *= rat_pow(mono_half_value(mono, pt), -mult);
                    for (int i = 1; i <= spec.r + spec.s; ++i) {
                        Monomial x =
                            mono * yj * Monomial::var(var_v(static_cast<std::uint8_t>(i)));
                        Rat h = mono_half_value(x, pt);
                        Rat br = h - Rat(1) / h;
                        if (is_zero(br)) throw DivisionByZero("sample point hit a unit bracket");
                        value *= rat_pow(br, i <= spec.r ? mult : -mult);
                    }
                }
            }
            value /= koszul_dual_value(tangent, pt);
            break;
        }
    }
    return sign_parity(spec, pi) ? -value : value;
}

}  // namespace

// ----- series assembly --------------------------------------------------------

std::map<std::uint16_t, Rat> SamplePoint::values() const {
    std::map<std::uint16_t, Rat> v = coh;
    for (const auto& [code, h] : half) v[code] = h * h;
    return v;
}

SamplePoint sample_point(std::uint64_t seed, int dim, int N, int rs) {
    Rng64 rng(seed);
    SamplePoint pt;
    int nt = dim == 4 ? 3 : 2;
    for (int i = 1; i <= nt; ++i) pt.coh[var_l(static_cast<std::uint8_t>(i)).code()] = rng.rat_sample(997);
    for (int i = 1; i <= N; ++i) pt.coh[var_m(static_cast<std::uint8_t>(i)).code()] = rng.rat_sample(997);
    for (int i = 1; i <= rs; ++i) pt.coh[var_w(static_cast<std::uint8_t>(i)).code()] = rng.rat_sample(997);
    for (int i = 1; i <= nt; ++i) pt.half[var_t(static_cast<std::uint8_t>(i)).code()] = rng.rat_sample(97);
    for (int i = 1; i <= N; ++i) pt.half[var_y(static_cast<std::uint8_t>(i)).code()] = rng.rat_sample(97);
    for (int i = 1; i <= rs; ++i) pt.half[var_v(static_cast<std::uint8_t>(i)).code()] = rng.rat_sample(97);
    return pt;
}

QSeries assemble_series(const GenusSpec& spec) {
    spec.validate();
    QSeries out;
    out.spec = spec;
    out.c.assign(static_cast<std::size_t>(spec.order) + 1, RatFun());

    SamplePoint pt;
    if (spec.mode == WeightMode::Numeric) pt = sample_point(spec.seed, spec.dim, spec.N, spec.r + spec.s);

    for (int n = 0; n <= spec.order; ++n) {
        if (spec.dim == 2) {
            auto pts = enumerate_colored(spec.N, n);
            if (spec.mode == WeightMode::Symbolic) {
                auto vals = map_points(pts, [&](const ColoredPartition& mu) {
                    try {
                        return point_value_2d(spec, mu);
                    } catch (const ZeroWeight& e) {
                        throw ZeroWeight(std::string(e.what()) + " at fixed point " + describe(mu));
                    }
                });
                out.c[static_cast<std::size_t>(n)] = sum_pairwise(std::move(vals));
            } else {
                std::vector<Rat> acc{Rat(0)};
                for (const auto& mu : pts) {
                    std::vector<Rat> v = numeric_point_2d(spec, mu, pt);
                    if (v.size() > acc.size()) acc.resize(v.size(), Rat(0));
                    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
                }
                std::vector<MPoly::Term> terms;
                for (std::size_t i = 0; i < acc.size(); ++i)
                    if (!is_zero(acc[i]))
                        terms.push_back({Monomial::var(var_z(), static_cast<std::int32_t>(i)), acc[i]});
                out.c[static_cast<std::size_t>(n)] = RatFun::poly(MPoly::from_terms(std::move(terms)));
            }
        } else {
            auto pts = enumerate_colored_solid(spec.N, n);
            if (spec.mode == WeightMode::Symbolic) {
                auto vals = map_points(pts, [&](const ColoredSolidPartition& pi) {
                    try {
                        return point_value_4d(spec, pi);
                    } catch (const ZeroWeight& e) {
                        throw ZeroWeight(std::string(e.what()) + " at fixed point " + describe(pi));
                    }
                });
                out.c[static_cast<std::size_t>(n)] = sum_pairwise(std::move(vals));
            } else {
                Rat acc(0);
                for (const auto& pi : pts) acc += numeric_point_4d(spec, pi, pt);
                out.c[static_cast<std::size_t>(n)] = RatFun::constant(acc);
            }
        }
    }
    return out;
}

// ----- reduced series -----------------------------------------------------

namespace {

MPoly to_subtorus(const MPoly& p) {
    return p.subst_monomial(var_t(2), Rat(1), Monomial::var(var_t(1), -1));
}

}  // namespace

QSeries reduced_series(GenusKind kind, int N, int r, int s, int order) {
    if (order < 1) throw std::invalid_argument("reduced series start at n = 1");
    GenusSpec sp;
    sp.dim = 2;
    sp.kind = kind;
    sp.N = N;
    sp.r = r;
    sp.s = s;
    sp.order = order;
    sp.validate();

    QSeries out;
    out.spec = sp;
    out.reduced = true;
    out.c.assign(static_cast<std::size_t>(order) + 1, RatFun());

    std::vector<int> pos = index_range(1, r);
    std::vector<int> neg = index_range(r + 1, r + s);
    for (int n = 1; n <= order; ++n) {
        auto pts = enumerate_colored(N, n);
        auto vals = map_points(pts, [&](const ColoredPartition& mu) -> RatFun {
            // On the subtorus the tangent character carries one trivial
            // obstruction line per populated color, of which the reduced
            // theory removes a single copy. Every further copy keeps a zero
            // Euler factor in the numerator of the contribution, so a point
            // with more than one populated color contributes nothing.
            if (to_subtorus(tangent_surface(mu)).constant_term() < Rat(-1)) return RatFun();
            MPoly tred = reduced_tangent_surface(mu);
            std::vector<MPoly> Q = color_characters(mu);
            for (auto& q : Q) q = to_subtorus(q);
            MPoly taut = taut_character(Q, pos, neg);
            switch (kind) {
                case GenusKind::Segre:
                    return inverse_euler(tred) * chern_contrib(negated(taut));
                case GenusKind::Chern:
                    return inverse_euler(tred) * chern_contrib(taut);
                case GenusKind::Verlinde:
                    return verlinde_contrib(tred, det_monomial(taut));
                case GenusKind::Nekrasov: {
                    FactorAcc acc;
                    return nekrasov_insertion_2d(acc, Q, r, s, tred);
                }
            }
            throw std::logic_error("reduced_series: bad kind");
        });
        out.c[static_cast<std::size_t>(n)] = sum_pairwise(std::move(vals));
    }
    return out;
}

// ----- limits ----------------------------------------------------------------

namespace {

WeightMap negated_weights(const RatFun& f) {
    WeightMap w;
    for (auto& [code, form] : default_weights(f)) w.emplace(code, form.scaled(Rat(-1)));
    return w;
}

}  // namespace

QSeries chern_limit(const QSeries& nek, int N, int rank, int order) {
    if (order > nek.spec.order)
        throw OutOfStatedRange("limit order exceeds the Nekrasov truncation");
    QSeries out;
    out.spec = nek.spec;
    out.spec.kind = GenusKind::Chern;
    out.spec.order = order;
    out.reduced = nek.reduced;
    out.c.assign(static_cast<std::size_t>(order) + 1, RatFun());

    MPoly one_plus_eps = MPoly::constant(Rat(1)) + MPoly::variable(var_eps());
    RatFun z_image(MPoly::constant(Rat(1)), {{one_plus_eps, 1}});
    for (int n = 0; n <= order; ++n) {
        RatFun f = nek.coeff(n);
        if (f.depends_on(var_z())) f = f.subst(var_z(), z_image);
        MPoly pre = one_plus_eps.pow(rank * n) *
                    MPoly::monomial(Monomial::var(var_eps(), (N - rank) * n));
        if ((N * n) % 2) pre = pre.scaled(Rat(-1));
        f = f * RatFun::poly(pre);
        TruncSeries se = graded_expand(f, negated_weights(f), 0, var_eps());
        if (!se.is_zero() && se.valuation() < 0)
            throw NegativeEpsilonOrderSurvives("Chern limit of q^" + std::to_string(n) +
                                               " keeps order " + std::to_string(se.valuation()));
        out.c[static_cast<std::size_t>(n)] = se.coeff(0);
    }
    return out;
}

QSeries verlinde_limit(const QSeries& nek, int rank, int order) {
    if (order > nek.spec.order)
        throw OutOfStatedRange("limit order exceeds the Nekrasov truncation");
    QSeries out;
    out.spec = nek.spec;
    out.spec.kind = GenusKind::Verlinde;
    out.spec.order = order;
    out.reduced = nek.reduced;
    out.c.assign(static_cast<std::size_t>(order) + 1, RatFun());

    for (int n = 0; n <= order; ++n) {
        RatFun f = nek.coeff(n);
        f = f.subst_monomial(var_z(), Rat(1), Monomial::var(var_eps(), -1));
        Rat unit = (rank * n) % 2 ? Rat(-1) : Rat(1);
        f = f * RatFun::poly(MPoly::monomial(Monomial::var(var_eps(), rank * n), unit));
        TruncSeries se = ratfun_expand(f, var_eps(), 0);
        if (!se.is_zero() && se.valuation() < 0)
            throw NegativeEpsilonOrderSurvives("Verlinde limit of q^" + std::to_string(n) +
                                               " keeps order " + std::to_string(se.valuation()));
        out.c[static_cast<std::size_t>(n)] = se.coeff(0);
    }
    return out;
}

RatFun reduce_coh_value(const RatFun& f) {
    RatFun g = f.div_poly(linear_form(Rat(0), {{var_l(1), Rat(1)}, {var_l(2), Rat(1)}}));
    try {
        return g.subst(var_l(2), RatFun::poly(MPoly::variable(var_l(1)).scaled(Rat(-1))));
    } catch (const DivisionByZero&) {
        throw Error("value does not vanish on the subtorus");
    }
}

RatFun reduce_k_value(const RatFun& f) {
    RatFun g = f.subst_monomial(var_t(2), Rat(1),
                                Monomial::var(var_t(1), -1) * Monomial::var(var_t(2)));
    g = g.div_poly(one_minus(Monomial::var(var_t(2), -1)));
    WeightMap w;
    w.emplace(var_t(2).code(), MPoly::variable(var_l(2)));
    TruncSeries se = graded_expand(g, w, 0, var_eps());
    if (!se.is_zero() && se.valuation() < 0)
        throw NegativeEpsilonOrderSurvives("value does not vanish on the subtorus");
    RatFun h = se.coeff(0);
    if (h.depends_on(var_l(2)))
        throw Error("subtorus collapse left a residual grading weight");
    return h;
}

}  // namespace qvx
