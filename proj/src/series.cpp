#include "qvx/series.hpp"

#include "qvx/errors.hpp"

#include <algorithm>

namespace qvx {

void TruncSeries::normalize() {
    std::size_t skip = 0;
    while (skip < c_.size() && c_[skip].is_zero()) ++skip;
    if (skip) {
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(skip));
        lo_ += static_cast<int>(skip);
    }
    while (!c_.empty() && lo_ + static_cast<int>(c_.size()) - 1 > order_) c_.pop_back();
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) lo_ = order_ + 1;
}

TruncSeries TruncSeries::monomial_coeff(VarId v, RatFun c, int n, int order) {
    TruncSeries s(v, order);
    if (n <= order && !c.is_zero()) {
        s.lo_ = n;
        s.c_.push_back(std::move(c));
    }
    return s;
}

TruncSeries TruncSeries::from_coeffs(VarId v, int lo, std::vector<RatFun> c, int order) {
    TruncSeries s(v, order);
    s.lo_ = lo;
    s.c_ = std::move(c);
    s.normalize();
    return s;
}

int TruncSeries::valuation() const {
    if (is_zero()) throw std::domain_error("valuation of the zero series");
    return lo_;
}

const RatFun& TruncSeries::coeff(int n) const {
    if (n > order_)
        throw OutOfStatedRange("coefficient " + std::to_string(n) + " beyond truncation order " +
                               std::to_string(order_));
    static const RatFun zero{};
    int i = n - lo_;
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<std::size_t>(i)];
}

TruncSeries TruncSeries::truncated(int order) const {
    if (order > order_)
        throw OutOfStatedRange("cannot extend truncation order " + std::to_string(order_) +
                               " to " + std::to_string(order));
    TruncSeries s = *this;
    s.order_ = order;
    s.normalize();
    return s;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    if (a.var_ != b.var_) throw std::logic_error("series variable mismatch");
    int order = std::min(a.order_, b.order_);
    int lo = std::min(a.lo_, b.lo_);
    if (lo > order) return TruncSeries(a.var_, order);
    std::vector<RatFun> c(static_cast<std::size_t>(order - lo + 1));
    for (int n = lo; n <= order; ++n) {
        std::size_t i = static_cast<std::size_t>(n - lo);
        if (n >= a.lo_ && n <= a.order_) c[i] += a.coeff(n);
        if (n >= b.lo_ && n <= b.order_) c[i] += b.coeff(n);
    }
    return TruncSeries::from_coeffs(a.var_, lo, std::move(c), order);
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries s = *this;
    for (auto& x : s.c_) x = -x;
    return s;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    if (a.var_ != b.var_) throw std::logic_error("series variable mismatch");
    // Precision: a is exact through order_a, so the product is trustworthy
    // through min(order_a + val_b, order_b + val_a).
    if (a.is_zero() || b.is_zero()) {
        int order = std::min(a.order_ + b.lo_, b.order_ + a.lo_);
        order = std::min(order, std::min(a.order_, b.order_));
        return TruncSeries(a.var_, order);
    }
    int order = std::min(a.order_ + b.lo_, b.order_ + a.lo_);
    int lo = a.lo_ + b.lo_;
    if (lo > order) return TruncSeries(a.var_, order);
    std::vector<RatFun> c(static_cast<std::size_t>(order - lo + 1));
    for (int i = 0; i < static_cast<int>(a.c_.size()); ++i) {
        if (a.c_[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < static_cast<int>(b.c_.size()); ++j) {
            int n = a.lo_ + i + b.lo_ + j;
            if (n > order) break;
            c[static_cast<std::size_t>(n - lo)] +=
                a.c_[static_cast<std::size_t>(i)] * b.c_[static_cast<std::size_t>(j)];
        }
    }
    return TruncSeries::from_coeffs(a.var_, lo, std::move(c), order);
}

TruncSeries TruncSeries::scaled(const RatFun& k) const {
    if (k.is_zero()) return TruncSeries(var_, order_);
    TruncSeries s = *this;
    for (auto& x : s.c_) x = x * k;
    return s;
}

TruncSeries TruncSeries::shifted(int k) const {
    TruncSeries s = *this;
    s.lo_ += k;
    s.order_ += k;
    return s;
}

TruncSeries TruncSeries::inverse() const {
    if (is_zero()) throw NonInvertibleDenominator("inverse of a zero series");
    // (x^v (c_0 + c_1 x + ...))^{-1}: invert the unit part by the standard
    // triangular recurrence, then shift by -v.
    int v = lo_;
    int m = order_ - v;  // unit part known through x^m
    std::vector<RatFun> u(static_cast<std::size_t>(m + 1));
    RatFun inv0 = c_[0].inverse();
    u[0] = inv0;
    for (int n = 1; n <= m; ++n) {
        RatFun acc;
        for (int k = 1; k <= n; ++k) {
            const RatFun& ak = coeff(v + k);
            if (!ak.is_zero()) acc += ak * u[static_cast<std::size_t>(n - k)];
        }
        u[static_cast<std::size_t>(n)] = -(inv0 * acc);
    }
    return TruncSeries::from_coeffs(var_, -v, std::move(u), m - v);
}

TruncSeries operator/(const TruncSeries& a, const TruncSeries& b) { return a * b.inverse(); }

TruncSeries TruncSeries::pow(std::int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    // Track precision through the same rule as repeated multiplication; for
    // a series with valuation v and order o, the k-th power is valid through
    // o + (k-1)v.
    if (k == 0) return constant(var_, RatFun::one(), order_);
    TruncSeries acc = *this;
    std::int64_t done = 1;
    while (done < k) {
        if (done * 2 <= k) {
            acc = acc * acc;
            done *= 2;
        } else {
            acc = acc * *this;
            ++done;
        }
    }
    return acc;
}

TruncSeries TruncSeries::derivative() const {
    TruncSeries s(var_, order_ - 1);
    if (is_zero()) return s;
    std::vector<RatFun> c;
    c.reserve(c_.size());
    for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
        int n = lo_ + i;
        c.push_back(c_[static_cast<std::size_t>(i)].scaled(Rat(n)));
    }
    return from_coeffs(var_, lo_ - 1, std::move(c), order_ - 1);
}

TruncSeries TruncSeries::exp() const {
    if (!is_zero() && lo_ < 1)
        throw NonzeroConstantTerm("exp needs a series with positive valuation");
    int m = order_;
    std::vector<RatFun> e(static_cast<std::size_t>(m + 1));
    e[0] = RatFun::one();
    for (int n = 1; n <= m; ++n) {
        RatFun acc;
        for (int k = 1; k <= n; ++k) {
            const RatFun& ak = coeff(k);
            if (!ak.is_zero()) acc += ak.scaled(Rat(k)) * e[static_cast<std::size_t>(n - k)];
        }
        e[static_cast<std::size_t>(n)] = acc.scaled(rat(1, n));
    }
    return from_coeffs(var_, 0, std::move(e), m);
}

TruncSeries TruncSeries::log() const {
    if (is_zero() || lo_ != 0 || !RatFun::equal_values(c_[0], RatFun::one()))
        throw NonzeroConstantTerm("log needs constant term exactly 1");
    int m = order_;
    std::vector<RatFun> l(static_cast<std::size_t>(m + 1));
    for (int n = 1; n <= m; ++n) {
        RatFun acc = coeff(n);
        for (int k = 1; k < n; ++k) {
            if (l[static_cast<std::size_t>(k)].is_zero()) continue;
            acc -= l[static_cast<std::size_t>(k)].scaled(rat(k, n)) * coeff(n - k);
        }
        l[static_cast<std::size_t>(n)] = acc;
    }
    return from_coeffs(var_, 0, std::move(l), m);
}

TruncSeries TruncSeries::map(const std::function<RatFun(const RatFun&)>& fn) const {
    TruncSeries s = *this;
    for (auto& x : s.c_) x = fn(x);
    s.normalize();
    return s;
}

std::string TruncSeries::str() const {
    std::string out;
    for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
        const RatFun& x = c_[static_cast<std::size_t>(i)];
        if (x.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + x.str() + ")*" + var_name(var_) + "^" + std::to_string(lo_ + i);
    }
    if (out.empty()) out = "0";
    out += " + O(" + var_name(var_) + "^" + std::to_string(order_ + 1) + ")";
    return out;
}

TruncSeries ratfun_expand(const RatFun& f, VarId v, int order) {
    if (f.is_zero()) return TruncSeries(v, order);
    // A denominator atom can carry a positive valuation in v (a bare v most
    // commonly); its series inverse shifts the window down, so the working
    // order is widened by twice the total valuation, as in graded_expand.
    // The valuation is exact: the least v-exponent over the atom's terms.
    int slack = 0;
    for (const auto& [atom, mult] : f.den()) {
        if (!atom.p.depends_on(v)) continue;
        std::int32_t val2 = INT32_MAX;
        for (const auto& t : atom.p.terms()) val2 = std::min(val2, t.first.exp2_of(v));
        if (val2 > 0) slack += mult * static_cast<int>(val2 / 2);
    }
    int work = std::max(order, 0) + 2 * slack;
    auto poly_to_series = [&](const MPoly& p) {
        TruncSeries s(v, work);
        // collect() needs whole exponents; aux variables always satisfy that
        for (auto& [exp2, coef] : p.collect(v)) {
            if (exp2 % 2 != 0) throw std::domain_error("half power of the expansion variable");
            s += TruncSeries::monomial_coeff(v, RatFun::poly(coef), exp2 / 2, work);
        }
        return s;
    };
    TruncSeries r = poly_to_series(f.num());
    for (const auto& [atom, mult] : f.den()) {
        if (!atom.p.depends_on(v)) {
            r = r.scaled(RatFun(MPoly::constant(Rat(1)), {{atom.p, mult}}));
            continue;
        }
        TruncSeries d = poly_to_series(atom.p);
        if (d.is_zero())
            throw NonInvertibleDenominator("denominator atom vanishes to the stated order in " +
                                           var_name(v));
        TruncSeries di = d.inverse();
        for (int k = 0; k < mult; ++k) r = r * di;
    }
    return r.order() > order ? r.truncated(order) : r;
}

AdamsHook adams_standard() {
    return [](const RatFun& f, int k) { return f.adams(k); };
}

AdamsHook adams_identity() {
    return [](const RatFun& f, int) { return f; };
}

namespace {

// Moebius function by trial division; plethystic orders stay tiny.
int moebius(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

// sum over k of weight(k)/k * adams_k(arg), where adams_k scales series
// exponents by k and maps coefficients through the hook
TruncSeries adams_sum(const TruncSeries& arg, const AdamsHook& hook,
                      const std::function<Rat(int)>& weight) {
    int order = arg.order();
    TruncSeries acc(arg.var(), order);
    if (arg.is_zero()) return acc;
    int v = arg.valuation();
    for (int k = 1; k * v <= order; ++k) {
        Rat w = weight(k) / k;
        if (qvx::is_zero(w)) continue;
        std::vector<RatFun> c;
        int klo = k * v;
        c.reserve(static_cast<std::size_t>(order / k - v + 1));
        for (int n = v; k * n <= order; ++n) {
            // stretched series has gaps; emit them explicitly
            if (n > v)
                for (int g = 1; g < k; ++g) c.push_back(RatFun());
            c.push_back(hook(arg.coeff(n), k).scaled(w));
        }
        acc += TruncSeries::from_coeffs(arg.var(), klo, std::move(c), order);
    }
    return acc;
}

}  // namespace

TruncSeries pleth_exp(const TruncSeries& arg, const AdamsHook& hook) {
    if (!arg.is_zero() && arg.valuation() < 1)
        throw NonzeroConstantTerm("plethystic exponential needs positive valuation");
    return adams_sum(arg, hook, [](int) { return Rat(1); }).exp();
}

TruncSeries pleth_log(const TruncSeries& s, const AdamsHook& hook) {
    TruncSeries l = s.log();
    return adams_sum(l, hook, [](int k) { return Rat(moebius(k)); });
}

PolynomialityWitness pleth_log_polynomiality_witness(const TruncSeries& series,
                                                     const std::vector<VarId>& q_vars,
                                                     int order,
                                                     const AdamsHook& hook) {
    PolynomialityWitness w;
    TruncSeries l = pleth_log(series.truncated(std::min(order, series.order())), hook);
    MPoly clear = MPoly::constant(Rat(1));
    for (VarId v : q_vars) clear = clear * one_minus(Monomial::var(v));
    for (int n = 1; n <= l.order(); ++n) {
        RatFun L = l.coeff(n) * RatFun::poly(clear);
        w.numerator.push_back(L);
        if (!L.is_poly()) {
            w.ok = false;
            w.diagnostics.push_back("q^" + std::to_string(n) + ": " + L.str());
        }
    }
    return w;
}

}  // namespace qvx
