#include "qvx/closedform.hpp"

#include "qvx/characters.hpp"
#include "qvx/errors.hpp"
#include "qvx/grading.hpp"
#include "qvx/partitions.hpp"
#include "qvx/textio.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qvx {

Rat downward_factorial(const Rat& a, long n) {
    if (n == -1) {
        if (a == -1) throw PoleAtMinusOne("downward factorial (a)_(-1) at a = -1");
        return Rat(1) / (a + 1);
    }
    if (n < -1) throw std::invalid_argument("downward factorial needs n >= -1");
    Rat acc(1);
    for (long i = 0; i < n; ++i) acc *= (a - i);
    return acc;
}

Rat binom_partition(const Rat& a, const Partition& mu) {
    Rat acc(1);
    for (int p : mu.parts) acc *= binomial(a, p);
    return acc;
}

std::string univ_side_name(UnivSide side) {
    switch (side) {
        case UnivSide::Segre: return "segre";
        case UnivSide::Chern: return "chern";
        case UnivSide::Verlinde: return "verlinde";
    }
    throw std::logic_error("unknown universal side");
}

const Rat& UniversalCombination::coeff(int n) const {
    if (n < 0 || n > order)
        throw OutOfStatedRange("combination coefficient q^" + std::to_string(n) +
                               " beyond order " + std::to_string(order));
    return c[static_cast<std::size_t>(n)];
}

std::string UniversalCombination::text() const {
    std::ostringstream o;
    o << univ_side_name(side) << " combination k1=" << k1 << " k2=" << k2 << " r=" << r
      << " N=" << N << " order=" << order;
    if (flagged) o << "  [flagged: " << note << "]";
    o << "\n";
    std::size_t w = 0;
    for (int n = 0; n <= order; ++n) w = std::max(w, ("q^" + std::to_string(n)).size());
    for (int n = 0; n <= order; ++n) {
        std::string lab = "q^" + std::to_string(n);
        o << "  " << lab << std::string(w - lab.size() + 2, ' ') << rat_str(c[n]) << "\n";
    }
    return o.str();
}

std::string UniversalCombination::json() const {
    std::ostringstream o;
    o << "{\"side\":\"" << univ_side_name(side) << "\",\"k1\":" << k1 << ",\"k2\":" << k2
      << ",\"r\":" << r << ",\"N\":" << N << ",\"order\":" << order
      << ",\"flagged\":" << (flagged ? "true" : "false") << ",\"note\":\"" << note
      << "\",\"coefficients\":[";
    for (int n = 0; n <= order; ++n) {
        if (n) o << ",";
        o << "\"" << rat_str(c[n]) << "\"";
    }
    o << "]}";
    return o.str();
}

namespace {

void check_comb_args(int k1, int k2, int N, int order) {
    if (k1 < 0 || k2 < 0) throw std::invalid_argument("partition sizes k1, k2 must be >= 0");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    if (order < 0) throw std::invalid_argument("order must be >= 0");
}

UniversalCombination comb_shell(UnivSide side, int k1, int k2, int r, int N, int order) {
    UniversalCombination u;
    u.side = side;
    u.k1 = k1;
    u.k2 = k2;
    u.r = r;
    u.N = N;
    u.order = order;
    u.c.assign(static_cast<std::size_t>(order) + 1, Rat(0));
    if (r < 0) {
        u.flagged = true;
        u.note = "r < 0 lies outside the proven range; value computed from the same formulas";
    }
    return u;
}

}  // namespace

UniversalCombination deg_pos_segre(int k1, int k2, int r, int N, int order) {
    check_comb_args(k1, k2, N, order);
    int k = k1 + k2;
    if (k == 0)
        throw OutOfStatedRange("k1 + k2 = 0 has no degree-positive formula; "
                               "use degree_minus1_series");
    UniversalCombination u = comb_shell(UnivSide::Segre, k1, k2, r, N, order);
    for (int n = 1; n <= order; ++n)
        u.c[static_cast<std::size_t>(n)] = Rat(-r) * downward_factorial(Rat(-n) * (r + N), k - 1) /
                                           n * binomial(Rat(-n) * r - 1, n * N - 1);
    return u;
}

UniversalCombination deg_pos_verlinde(int k1, int k2, int r, int N, int order) {
    check_comb_args(k1, k2, N, order);
    int k = k1 + k2;
    if (k == 0)
        throw OutOfStatedRange("k1 + k2 = 0 has no degree-positive formula; "
                               "use degree_minus1_series");
    UniversalCombination u = comb_shell(UnivSide::Verlinde, k1, k2, r, N, order);
    for (int n = 1; n <= order; ++n) {
        Rat v = -rat_pow(Rat(r), k) * rat_pow(Rat(n), k - 2) * binomial(Rat(-n) * r - 1, n * N - 1);
        if ((n * N) % 2) v = -v;
        u.c[static_cast<std::size_t>(n)] = v;
    }
    return u;
}

UniversalCombination deg_pos_chern(int k1, int k2, int r, int N, int order) {
    check_comb_args(k1, k2, N, order);
    int k = k1 + k2;
    if (k == 0)
        throw OutOfStatedRange("k1 + k2 = 0 has no degree-positive formula; "
                               "use degree_minus1_series");
    UniversalCombination u = comb_shell(UnivSide::Chern, k1, k2, r, N, order);
    for (int n = 1; n <= order; ++n)
        u.c[static_cast<std::size_t>(n)] = Rat(r) * downward_factorial(Rat(n) * (r - N), k - 1) /
                                           n * binomial(Rat(n) * r - 1, n * N - 1);
    return u;
}

UniversalCombination degree_minus1_series(UnivSide side, int r, int N, int order) {
    check_comb_args(0, 0, N, order);
    UniversalCombination u = comb_shell(side, 0, 0, r, N, order);
    u.flagged = false;  // valid for every integer rank
    u.note.clear();
    for (int n = 1; n <= order; ++n) {
        Rat v;
        switch (side) {
            case UnivSide::Segre: v = binomial(Rat(-n) * r, n * N - 1); break;
            case UnivSide::Chern: v = binomial(Rat(n) * r, n * N - 1); break;
            case UnivSide::Verlinde:
                v = binomial(Rat(-n) * r - 1, n * N - 1);
                if ((n * N - 1) % 2) v = -v;
                break;
        }
        u.c[static_cast<std::size_t>(n)] = v / (Rat(n) * n);
    }
    return u;
}

Rat segre_combination_twisted(int k, int r, int N, int n) {
    if (k < 1 || n < 1 || N < 1) throw std::invalid_argument("need k >= 1, n >= 1, N >= 1");
    Rat v = downward_factorial(Rat(n) * (r + N) + k - 2, k - 2) * binomial(Rat(n) * (r + N), n * N);
    v *= Rat(r) * N;
    if (k % 2 == 0) v = -v;
    return v;
}

// ----- univariate rational functions ----------------------------------------

TPoly::TPoly(std::initializer_list<long> v) {
    for (long x : v) c.push_back(Rat(x));
    trim();
}

TPoly TPoly::constant(const Rat& x) {
    TPoly p;
    if (!qvx::is_zero(x)) p.c.push_back(x);
    return p;
}

TPoly TPoly::t() { return TPoly{0, 1}; }

TPoly TPoly::one_plus_t_pow(int k) {
    if (k < 0) throw std::invalid_argument("one_plus_t_pow needs k >= 0");
    TPoly p;
    p.c.resize(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) p.c[static_cast<std::size_t>(i)] = binomial(Rat(k), i);
    return p;
}

Rat TPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

void TPoly::trim() {
    while (!c.empty() && qvx::is_zero(c.back())) c.pop_back();
}

TPoly TPoly::operator-() const {
    TPoly p = *this;
    for (auto& x : p.c) x = -x;
    return p;
}

TPoly operator+(const TPoly& a, const TPoly& b) {
    TPoly p;
    p.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) p.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) p.c[i] += b.c[i];
    p.trim();
    return p;
}

TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }

TPoly operator*(const TPoly& a, const TPoly& b) {
    TPoly p;
    if (a.is_zero() || b.is_zero()) return p;
    p.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (qvx::is_zero(a.c[i])) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) p.c[i + j] += a.c[i] * b.c[j];
    }
    p.trim();
    return p;
}

TPoly TPoly::scaled(const Rat& x) const {
    if (qvx::is_zero(x)) return TPoly();
    TPoly p = *this;
    for (auto& y : p.c) y *= x;
    return p;
}

TPoly TPoly::derivative() const {
    TPoly p;
    for (std::size_t i = 1; i < c.size(); ++i) p.c.push_back(Rat(static_cast<long>(i)) * c[i]);
    p.trim();
    return p;
}

std::string TPoly::str() const {
    if (c.empty()) return "0";
    std::ostringstream o;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (qvx::is_zero(c[i])) continue;
        Rat v = c[i];
        if (!first) o << (sgn(v) < 0 ? "-" : "+");
        else if (sgn(v) < 0) o << "-";
        first = false;
        Rat a = abs(v);
        if (i == 0 || a != 1) o << rat_str(a);
        if (i > 0) {
            if (a != 1) o << "*";
            o << "t";
            if (i > 1) o << "^" << i;
        }
    }
    return o.str();
}

namespace {

// quotient and remainder of a / b, b nonzero
std::pair<TPoly, TPoly> tpoly_divmod(TPoly a, const TPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    TPoly q;
    int db = b.deg();
    const Rat lead = b.c.back();
    while (!a.is_zero() && a.deg() >= db) {
        int sh = a.deg() - db;
        Rat f = a.c.back() / lead;
        if (static_cast<int>(q.c.size()) < sh + 1) q.c.resize(static_cast<std::size_t>(sh) + 1);
        q.c[static_cast<std::size_t>(sh)] += f;
        for (int i = 0; i <= db; ++i)
            a.c[static_cast<std::size_t>(i + sh)] -= f * b.c[static_cast<std::size_t>(i)];
        a.trim();
    }
    q.trim();
    return {q, a};
}

}  // namespace

TPoly tpoly_gcd(TPoly a, TPoly b) {
    while (!b.is_zero()) {
        TPoly r = tpoly_divmod(a, b).second;
        a = b;
        b = r;
    }
    if (!a.is_zero()) a = a.scaled(Rat(1) / a.c.back());
    return a;
}

TRat::TRat(TPoly n, TPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num.is_zero()) {
        den = TPoly::constant(Rat(1));
        return;
    }
    TPoly g = tpoly_gcd(num, den);
    if (g.deg() > 0) {
        num = tpoly_divmod(num, g).first;
        den = tpoly_divmod(den, g).first;
    }
    // normalize the denominator to monic form
    Rat lead = den.c.back();
    if (lead != 1) {
        den = den.scaled(Rat(1) / lead);
        num = num.scaled(Rat(1) / lead);
    }
}

TRat TRat::poly(TPoly p) { return TRat(std::move(p), TPoly::constant(Rat(1))); }

Rat TRat::at0() const {
    Rat d = den.at0();
    if (qvx::is_zero(d)) throw DivisionByZero("rational function has a pole at t = 0");
    return num.at0() / d;
}

TRat TRat::operator-() const {
    TRat f = *this;
    f.num = -f.num;
    return f;
}

TRat operator+(const TRat& a, const TRat& b) { return TRat(a.num * b.den + b.num * a.den, a.den * b.den); }
TRat operator-(const TRat& a, const TRat& b) { return TRat(a.num * b.den - b.num * a.den, a.den * b.den); }
TRat operator*(const TRat& a, const TRat& b) { return TRat(a.num * b.num, a.den * b.den); }

TRat operator/(const TRat& a, const TRat& b) {
    if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
    return TRat(a.num * b.den, a.den * b.num);
}

TRat TRat::scaled(const Rat& x) const {
    TRat f = *this;
    f.num = f.num.scaled(x);
    if (f.num.is_zero()) f.den = TPoly::constant(Rat(1));
    return f;
}

TRat TRat::derivative() const {
    return TRat(num.derivative() * den - num * den.derivative(), den * den);
}

bool operator==(const TRat& a, const TRat& b) { return (a.num * b.den - b.num * a.den).is_zero(); }

std::string TRat::str() const {
    if (den == TPoly::constant(Rat(1))) return num.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
}

std::vector<Rat> trat_series(const TRat& f, int order) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    Rat d0 = f.den.at0();
    if (qvx::is_zero(d0)) throw DivisionByZero("series expansion at a pole of the denominator");
    std::vector<Rat> out(static_cast<std::size_t>(order) + 1, Rat(0));
    for (int n = 0; n <= order; ++n) {
        Rat s = n < static_cast<int>(f.num.c.size()) ? f.num.c[static_cast<std::size_t>(n)]
                                                     : Rat(0);
        for (int j = 1; j <= std::min(n, f.den.deg()); ++j)
            s -= f.den.c[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(n - j)];
        out[static_cast<std::size_t>(n)] = s / d0;
    }
    return out;
}

TRat d_psi_apply(const TRat& f, int k, int r, int N) {
    if (k < 0) throw std::invalid_argument("operator power must be >= 0");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    TRat mult(TPoly{0, 1, 1}, TPoly{N, N + r});  // t(1+t) / ((N+r)t + N)
    TRat g = f;
    for (int i = 0; i < k; ++i) g = mult * g.derivative();
    return g;
}

TRat d_psi_phi(int k, int r, int N) {
    if (k < 1) throw std::invalid_argument("d_psi_phi needs k >= 1: log(1+t) itself is not rational");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    TRat g(TPoly{0, 1}, TPoly{N, N + r});  // D_psi log(1+t) = t / ((N+r)t + N)
    return d_psi_apply(g, k - 1, r, N);
}

std::vector<Rat> lagrange_sum(const TRat& dphi, const Rat& phi0, const TRat& R, int N,
                              int order) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    if (order < 0) throw std::invalid_argument("order must be >= 0");
    if (qvx::is_zero(R.den.at0()) || qvx::is_zero(R.num.at0()))
        throw std::invalid_argument("lagrange_sum needs R(0) nonzero and finite");
    std::vector<Rat> out(static_cast<std::size_t>(order) + 1, Rat(0));
    out[0] = Rat(N) * phi0;
    if (order == 0) return out;
    int L = order * N;  // coefficients t^0 .. t^{L-1} are enough
    std::vector<Rat> dser = trat_series(dphi, L - 1);
    std::vector<Rat> rser = trat_series(R, L - 1);
    std::vector<Rat> rn(static_cast<std::size_t>(L), Rat(0));
    rn[0] = Rat(1);
    for (int n = 1; n <= order; ++n) {
        // rn <- rn * rser, truncated at length L
        std::vector<Rat> nx(static_cast<std::size_t>(L), Rat(0));
        for (int i = 0; i < L; ++i) {
            if (qvx::is_zero(rn[static_cast<std::size_t>(i)])) continue;
            for (int j = 0; i + j < L; ++j)
                nx[static_cast<std::size_t>(i + j)] +=
                    rn[static_cast<std::size_t>(i)] * rser[static_cast<std::size_t>(j)];
        }
        rn = std::move(nx);
        int idx = n * N - 1;
        Rat s(0);
        for (int j = 0; j <= idx; ++j)
            s += dser[static_cast<std::size_t>(j)] * rn[static_cast<std::size_t>(idx - j)];
        out[static_cast<std::size_t>(n)] = s / n;
    }
    return out;
}

std::vector<Rat> lagrange_sum(const TRat& phi, const TRat& R, int N, int order) {
    return lagrange_sum(phi.derivative(), phi.at0(), R, N, order);
}

UniversalCombination sv_closed_eval(int k1, int k2, int r, int N, int order, UnivSide side) {
    check_comb_args(k1, k2, N, order);
    int k = k1 + k2;
    if (k == 0) return degree_minus1_series(side, r, N, order);
    UniversalCombination u = comb_shell(side, k1, k2, r, N, order);

    int re = side == UnivSide::Chern ? -r : r;
    Rat pref = side == UnivSide::Chern ? Rat(r) : Rat(-r);
    TRat R = re >= 0 ? TRat(TPoly::constant(Rat(1)), TPoly::one_plus_t_pow(re))
                     : TRat::poly(TPoly::one_plus_t_pow(-re));

    std::vector<Rat> w;
    if (k == 1) {
        TRat dphi(TPoly::constant(Rat(1)), TPoly{1, 1});  // (log(1+t))' = 1/(1+t)
        w = lagrange_sum(dphi, Rat(0), R, N, order);
    } else if (side == UnivSide::Verlinde) {
        TRat g = d_psi_phi(k - 1, r, N).scaled(rat_pow(Rat(r), k - 1));
        w = lagrange_sum(g, R, N, order);
    } else {
        // (x)_(k-1) at x = -(re+N) D_psi, peeled right to left:
        // g_0 = x phi, then g_j = (x - j) g_{j-1}.
        TRat g = d_psi_phi(1, re, N).scaled(Rat(-(re + N)));
        for (int j = 1; j <= k - 2; ++j)
            g = d_psi_apply(g, 1, re, N).scaled(Rat(-(re + N))) - g.scaled(Rat(j));
        w = lagrange_sum(g, R, N, order);
    }
    for (int n = 1; n <= order; ++n) {
        Rat v = pref * w[static_cast<std::size_t>(n)];
        if (side == UnivSide::Verlinde && (n * N) % 2) v = -v;
        u.c[static_cast<std::size_t>(n)] = v;
    }
    return u;
}

UniversalCombination b1_series(int r, int N, int order) {
    check_comb_args(0, 0, N, order);
    UniversalCombination u = comb_shell(UnivSide::Verlinde, 2, 0, r, N, order);
    if (r == 0) {
        u.flagged = true;
        u.note = "r = 0 degenerates to the constant -1/2 tail";
    } else if (r < 0) {
        u.flagged = true;
        u.note = "stated for r > 0; the binomial vanishes identically here";
    }
    for (int n = 1; n <= order; ++n)
        u.c[static_cast<std::size_t>(n)] =
            -binomial(Rat(n) * (N + r) - 1, static_cast<long>(n) * r) / 2;
    return u;
}

ConjectureRatios b0_a0_conjecture_rhs(int r, int N, int order) {
    if (N != 1) throw OutOfStatedRange("the constant-ratio conjectures are stated at N = 1");
    if (order < 0) throw std::invalid_argument("order must be >= 0");
    ConjectureRatios cr;
    cr.r = r;
    cr.N = N;
    cr.order = order;
    cr.b0_over_b1.assign(static_cast<std::size_t>(order) + 1, Rat(0));
    cr.a0_over_a1.assign(static_cast<std::size_t>(order) + 1, Rat(0));
    for (int n = 1; n <= order; ++n) {
        cr.b0_over_b1[static_cast<std::size_t>(n)] =
            (binomial(Rat(r) + 1, 2) * (n - 1) - 1) / 6;
        cr.a0_over_a1[static_cast<std::size_t>(n)] =
            Rat(r) * (Rat(n) * r + n + 2) / 12;
    }
    if (r >= -1) {
        cr.flagged = true;
        cr.note = "the A0 ratio is stated for r < -1 and n > 1 only; "
                  "values outside that window come from the same expression";
    } else {
        cr.note = "the A0 ratio is stated for n > 1; the n = 1 entry comes from "
                  "the same expression";
    }
    return cr;
}

// ----- extraction from localized fixed-point data -----------------------------
//
// The combination lives at collapsed weights: every positive summand of alpha
// carries the single symbol w, the negative summands the trivial weight, and
// every color the symbol m. Individual fixed points are singular there (a
// cross-color constant hom has weight m_j - m_i), so the collapse is reached
// through m_j = m + (j-1)e for a deformation symbol e: each point value is
// Laurent in e, the poles cancel in the sum over points, and the e^0 layer is
// the collapsed coefficient. All arithmetic runs over (w, m)-truncated
// polynomials with coefficients rational in lambda alone, so the merged
// symbolic sum over fixed points is never formed. The K-theoretic side keeps
// the total-degree filtration in b from graded_expand on top of that; its log
// is sliced at b^(k-1), the layer whose cleared limit is a number.

namespace {

UnivSide side_of_kind(GenusKind kind) {
    switch (kind) {
        case GenusKind::Segre: return UnivSide::Segre;
        case GenusKind::Chern: return UnivSide::Chern;
        case GenusKind::Verlinde: return UnivSide::Verlinde;
        default:
            throw std::invalid_argument("no universal combination for the Nekrasov kind");
    }
}

std::vector<int> index_range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

// Truncated polynomial in (w, m) of joint degree <= K; entry (i, j) is the
// coefficient of w^i m^j, a rational function of lambda alone.
struct WMSlice {
    int K = 0;
    std::vector<RatFun> a;

    explicit WMSlice(int cap = 0)
        : K(cap), a(static_cast<std::size_t>((cap + 1) * (cap + 1))) {}

    static WMSlice unit(int cap) {
        WMSlice s(cap);
        s.at(0, 0) = RatFun::one();
        return s;
    }

    RatFun& at(int i, int j) { return a[static_cast<std::size_t>(i * (K + 1) + j)]; }
    const RatFun& at(int i, int j) const { return a[static_cast<std::size_t>(i * (K + 1) + j)]; }

    bool is_zero() const {
        for (const auto& f : a)
            if (!f.is_zero()) return false;
        return true;
    }
};

void wm_acc(WMSlice& x, const WMSlice& y) {
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (!y.a[i].is_zero()) x.a[i] = x.a[i] + y.a[i];
}

WMSlice wm_sub(const WMSlice& x, const WMSlice& y) {
    WMSlice r = x;
    for (std::size_t i = 0; i < r.a.size(); ++i)
        if (!y.a[i].is_zero()) r.a[i] = r.a[i] - y.a[i];
    return r;
}

WMSlice wm_mul(const WMSlice& x, const WMSlice& y) {
    WMSlice r(x.K);
    for (int i1 = 0; i1 <= x.K; ++i1)
        for (int j1 = 0; i1 + j1 <= x.K; ++j1) {
            const RatFun& f = x.at(i1, j1);
            if (f.is_zero()) continue;
            for (int i2 = 0; i1 + j1 + i2 <= x.K; ++i2)
                for (int j2 = 0; i1 + j1 + i2 + j2 <= x.K; ++j2) {
                    const RatFun& g = y.at(i2, j2);
                    if (g.is_zero()) continue;
                    RatFun& t = r.at(i1 + i2, j1 + j2);
                    t = t + f * g;
                }
        }
    return r;
}

WMSlice wm_scaled(const WMSlice& x, const Rat& c) {
    WMSlice r = x;
    for (auto& f : r.a) f = f.scaled(c);
    return r;
}

// Taylor slices of a small rational function in w then m, both around zero.
// A pole in either symbol means the collapsed structure failed.
WMSlice wm_expand(const RatFun& f, int K) {
    WMSlice out(K);
    if (f.is_zero()) return out;
    auto fill_m = [&](const RatFun& g, int i) {
        if (g.is_zero()) return;
        if (!g.depends_on(var_m(1))) {
            out.at(i, 0) = g;
            return;
        }
        TruncSeries tm = ratfun_expand(g, var_m(1), K - i);
        if (!tm.is_zero() && tm.lo() < 0)
            throw std::logic_error("collapsed coefficient has a pole in m");
        for (int j = std::max(tm.lo(), 0); j <= std::min(K - i, tm.order()); ++j)
            out.at(i, j) = tm.coeff(j);
    };
    if (!f.depends_on(var_w(1))) {
        fill_m(f, 0);
        return out;
    }
    TruncSeries tw = ratfun_expand(f, var_w(1), K);
    if (!tw.is_zero() && tw.lo() < 0)
        throw std::logic_error("collapsed coefficient has a pole in w");
    for (int i = std::max(tw.lo(), 0); i <= std::min(K, tw.order()); ++i) fill_m(tw.coeff(i), i);
    return out;
}

// Laurent layers of f in the deformation symbol, orders lo(f) .. 0.
std::map<int, RatFun> eps_slices(const RatFun& f, VarId eps) {
    std::map<int, RatFun> out;
    if (f.is_zero()) return out;
    if (!f.depends_on(eps)) {
        out.emplace(0, f);
        return out;
    }
    TruncSeries te = ratfun_expand(f, eps, 0);
    for (int d = te.lo(); d <= std::min(0, te.order()); ++d)
        if (!te.coeff(d).is_zero()) out.emplace(d, te.coeff(d));
    return out;
}

// The combination is read off from the c1(S)-linear layer of the log series,
// and that layer is the only one the clearing step keeps. Pinning the weight
// ratio l2 / l1 to a fixed generic rational separates the layers by their
// power of l1 alone (a c_nu(S) factor contributes exactly l1^|nu|), so every
// coefficient downstream is univariate in l1 instead of bivariate. The value
// of the kept layer does not depend on the ratio. The ratio must not be a
// ratio of tangent-weight exponents at the orders run here; a collision
// cannot pass silently, it zeroes a weight and trips the ZeroWeight guard.
Rat probe_ratio() { return Rat(-29, 31); }

// The collapsed weights: w_i -> w_1 for the positive summands, the trivial
// weight for the negative ones, m_j -> m_1 + (j-1) e for the colors, and
// l2 -> probe * l1. Serves both the cohomological products (through the
// weight-specialized Euler and Chern classes) and the graded K-theoretic
// expansion.
WeightMap collapse_weights(int N, int r, int s, VarId eps) {
    WeightMap w;
    w[var_t(1).code()] = MPoly::variable(var_l(1));
    w[var_t(2).code()] = MPoly::variable(var_l(1)).scaled(probe_ratio());
    for (int j = 1; j <= N; ++j)
        w[var_y(static_cast<std::uint8_t>(j)).code()] =
            MPoly::variable(var_m(1)) + MPoly::variable(eps).scaled(Rat(j - 1));
    for (int i = 1; i <= r; ++i)
        w[var_v(static_cast<std::uint8_t>(i)).code()] = MPoly::variable(var_w(1));
    for (int j = 1; j <= s; ++j) w[var_v(static_cast<std::uint8_t>(r + j)).code()] = MPoly();
    return w;
}

// Collapsed q-coefficients of the cohomological series, summed pointwise.
// The collapse happens inside the weight forms, before any product is
// expanded, so the per-point arithmetic never leaves the four collapsed
// symbols (l1, e, m1, w1).
std::vector<WMSlice> collapsed_coh_coeffs(const GenusSpec& spec, int K, VarId eps) {
    std::vector<WMSlice> out;
    out.reserve(static_cast<std::size_t>(spec.order) + 1);
    out.push_back(WMSlice::unit(K));
    WeightMap cw = collapse_weights(spec.N, spec.r, spec.s, eps);
    for (int n = 1; n <= spec.order; ++n) {
        std::map<int, WMSlice> acc;
        for (const auto& mu : enumerate_colored(spec.N, n)) {
            MPoly taut = taut_surface(mu, index_range(1, spec.r),
                                      index_range(spec.r + 1, spec.r + spec.s));
            if (spec.kind == GenusKind::Segre) taut = taut.scaled(Rat(-1));
            RatFun f = inverse_euler(tangent_surface(mu), cw) * chern_contrib(taut, cw);
            for (const auto& [d, g] : eps_slices(f, eps)) {
                auto [it, fresh] = acc.try_emplace(d, K);
                wm_acc(it->second, wm_expand(g, K));
            }
        }
        for (const auto& [d, s] : acc)
            if (d < 0 && !s.is_zero())
                throw std::logic_error("color collapse left a deformation pole at q^" +
                                       std::to_string(n));
        auto it = acc.find(0);
        out.push_back(it == acc.end() ? WMSlice(K) : std::move(it->second));
    }
    return out;
}

// Laurent series in the grading symbol b whose coefficients are WMSlices;
// window [lo, hi] inclusive, entries outside are zero. Same product-window
// rule as TruncSeries: the truncation order of a product is the best bound
// either factor's tail allows.
struct WMSeries {
    int lo = 0;
    int hi = -1;
    std::vector<WMSlice> c;

    WMSlice coeff(int d, int K) const {
        if (d < lo || d > hi) return WMSlice(K);
        return c[static_cast<std::size_t>(d - lo)];
    }
};

WMSeries wms_sub(const WMSeries& x, const WMSeries& y, int K) {
    WMSeries r;
    r.lo = std::min(x.lo, y.lo);
    r.hi = std::min(x.hi, y.hi);
    for (int d = r.lo; d <= r.hi; ++d) r.c.push_back(wm_sub(x.coeff(d, K), y.coeff(d, K)));
    return r;
}

WMSeries wms_mul_scaled(const WMSeries& x, const WMSeries& y, const Rat& scale, int K) {
    WMSeries r;
    r.lo = x.lo + y.lo;
    r.hi = std::min(x.hi + y.lo, y.hi + x.lo);
    for (int d = r.lo; d <= r.hi; ++d) {
        WMSlice s(K);
        for (int i = std::max(x.lo, d - y.hi); i <= std::min(x.hi, d - y.lo); ++i) {
            const WMSlice& xi = x.c[static_cast<std::size_t>(i - x.lo)];
            const WMSlice& yj = y.c[static_cast<std::size_t>(d - i - y.lo)];
            if (xi.is_zero() || yj.is_zero()) continue;
            wm_acc(s, wm_mul(xi, yj));
        }
        r.c.push_back(wm_scaled(s, scale));
    }
    return r;
}

// Collapsed, b-graded q-coefficients of the K-theoretic series. Coefficient n
// is expanded to b-order (k-1) + 2 (order - n): the log recurrence's product
// window rule then delivers every log coefficient through b^(k-1).
//
// The determinant insertion is the only carrier of the w and m symbols, and
// it is a single monomial, so its exponential splits off the Koszul product:
// the product is graded with weights in which the colors enter only through
// their differences (multiples of e), and exp(b * c1(det)) is attached
// afterwards, the (l1, e) part as a series product and the (w1, m1) part
// distributed directly into the slice cells. Every graded coefficient of the
// heavy product stays a small polynomial in two symbols.
std::vector<WMSeries> collapsed_k_coeffs(const GenusSpec& spec, int K, int k, VarId eps) {
    std::vector<WMSeries> out;
    out.reserve(static_cast<std::size_t>(spec.order) + 1);
    WMSeries one;
    one.lo = 0;
    one.hi = k - 1 + 2 * spec.order;
    for (int d = one.lo; d <= one.hi; ++d)
        one.c.push_back(d == 0 ? WMSlice::unit(K) : WMSlice(K));
    out.push_back(std::move(one));
    WeightMap weights = collapse_weights(spec.N, spec.r, spec.s, eps);
    const Monomial w1_mono = Monomial::var(var_w(1));
    const Monomial m1_mono = Monomial::var(var_m(1));
    for (int n = 1; n <= spec.order; ++n) {
        int cap = k - 1 + 2 * (spec.order - n);
        std::map<int, std::map<int, WMSlice>> acc;  // b-order -> eps-order -> slice
        for (const auto& mu : enumerate_colored(spec.N, n)) {
            MPoly tangent = tangent_surface(mu);
            MPoly taut = taut_surface(mu, index_range(1, spec.r),
                                      index_range(spec.r + 1, spec.r + spec.s));
            Monomial det = det_monomial(taut);
            // c1(det) under the collapse, split into the (w1, m1) part and
            // the rest
            MPoly c1 = monomial_weight(det, weights);
            Rat aw(0), cm(0);
            MPoly rest;
            for (const auto& [mono, coef] : c1.terms()) {
                if (mono == w1_mono)
                    aw = coef;
                else if (mono == m1_mono)
                    cm = coef;
                else
                    rest = rest + MPoly::monomial(mono, coef);
            }
            TruncSeries ts = verlinde_contrib_graded(tangent, Monomial(), weights, cap);
            if (!rest.is_zero()) {
                // exp(b * rest) through the orders the product can reach
                int len = cap - ts.lo();
                std::vector<RatFun> ec;
                ec.reserve(static_cast<std::size_t>(len) + 1);
                ec.push_back(RatFun::one());
                MPoly p = MPoly::constant(Rat(1));
                Rat fact(1);
                for (int j = 1; j <= len; ++j) {
                    p = p * rest;
                    fact *= j;
                    ec.push_back(RatFun::poly(p.scaled(Rat(1) / fact)));
                }
                ts = ts * TruncSeries::from_coeffs(ts.var(), 0, std::move(ec), len);
            }
            // binomials of (aw w1 + cm m1)^j / j! land in cell (i, j - i)
            for (int d = ts.lo(); d <= ts.order(); ++d) {
                const RatFun& f = ts.coeff(d);
                if (f.is_zero()) continue;
                for (const auto& [e, g] : eps_slices(f, eps)) {
                    Rat fact(1);
                    for (int j = 0; j <= K && d + j <= cap; ++j) {
                        if (j > 0) fact *= j;
                        for (int i = 0; i <= j; ++i) {
                            if ((i > 0 && aw == Rat(0)) || (j - i > 0 && cm == Rat(0))) continue;
                            Rat cwm = binomial(Rat(j), i) * rat_pow(aw, i) * rat_pow(cm, j - i) / fact;
                            if (cwm == Rat(0)) continue;
                            auto [it, fresh] = acc[d + j].try_emplace(e, K);
                            RatFun& cell = it->second.at(i, j - i);
                            cell = cell + g.scaled(cwm);
                        }
                    }
                }
            }
        }
        WMSeries s;
        s.lo = -spec.N * n;  // per-point b-valuation is minus the character rank N n
        s.hi = cap;
        s.c.assign(static_cast<std::size_t>(s.hi - s.lo + 1), WMSlice(K));
        for (auto& [d, layers] : acc)
            for (auto& [e, slice] : layers) {
                if (e < 0) {
                    if (!slice.is_zero())
                        throw std::logic_error("color collapse left a deformation pole at q^" +
                                               std::to_string(n));
                    continue;
                }
                if (d < s.lo || d > s.hi)
                    throw std::logic_error("graded expansion escaped its window");
                wm_acc(s.c[static_cast<std::size_t>(d - s.lo)], slice);
            }
        out.push_back(std::move(s));
    }
    return out;
}

// Shared tail: multiply by l1 l2 / (l1 + l2), which under the pinned ratio is
// l1 * probe / (1 + probe), then keep the l1-free term. Layers with a
// c_nu(S) factor sit at positive powers of l1 and drop out; a genuine lambda
// pole would sit at a negative power and is refused.
Rat cleared_constant(const RatFun& g, int n, int k1, int k2) {
    if (g.is_zero()) return Rat(0);
    Rat x0 = probe_ratio();
    RatFun h = (g * RatFun::poly(MPoly::variable(var_l(1)))).scaled(x0 / (Rat(1) + x0));
    TruncSeries ts = ratfun_expand(h, var_l(1), 0);
    std::string where = "combination coefficient q^" + std::to_string(n) + " at (k1, k2) = (" +
                        std::to_string(k1) + ", " + std::to_string(k2) + ")";
    if (!ts.is_zero() && ts.lo() < 0)
        throw NonPolynomialAfterClearing(where + " keeps a pole in lambda");
    RatFun c0 = ts.coeff(0);
    if (c0.is_zero()) return Rat(0);
    if (!c0.is_poly() || !c0.num().is_constant())
        throw NonPolynomialAfterClearing(where + " is not constant after clearing: " + c0.str());
    return c0.num().constant_term();
}

// One pipeline pass at joint degree K = kmax serves every pair (k1, k2) with
// k1 + k2 <= kmax: truncating higher never changes the lower entries, and the
// graded caps only widen. pairs lists the requested slices.
std::vector<UniversalCombination> extract_block(const GenusSpec& spec, int kmax, UnivSide side,
                                                const std::vector<std::pair<int, int>>& pairs) {
    spec.validate();
    if (spec.dim != 2) throw std::invalid_argument("extraction is a surface operation");
    if (spec.mode != WeightMode::Symbolic)
        throw std::invalid_argument("extraction needs a symbolic series");
    if (side_of_kind(spec.kind) != side)
        throw std::invalid_argument("requested side disagrees with the series kind");
    for (auto [k1, k2] : pairs) {
        check_comb_args(k1, k2, spec.N, spec.order);
        if (k1 + k2 > kmax) throw std::logic_error("extraction pair exceeds the block degree");
    }

    int order = spec.order;
    VarId eps = var_m(static_cast<std::uint8_t>(spec.N + 1));

    // log coefficients: l_n = c_n - sum_{j<n} (j/n) l_j c_{n-j}
    std::vector<WMSeries> lgk;
    std::vector<WMSlice> lgc;
    if (spec.kind == GenusKind::Verlinde) {
        std::vector<WMSeries> cg = collapsed_k_coeffs(spec, kmax, kmax, eps);
        lgk.reserve(static_cast<std::size_t>(order) + 1);
        lgk.push_back(cg[0]);
        for (int n = 1; n <= order; ++n) {
            WMSeries acc = cg[static_cast<std::size_t>(n)];
            for (int j = 1; j < n; ++j)
                acc = wms_sub(acc,
                              wms_mul_scaled(lgk[static_cast<std::size_t>(j)],
                                             cg[static_cast<std::size_t>(n - j)], rat(j, n),
                                             kmax),
                              kmax);
            if (acc.hi < kmax - 1)
                throw std::logic_error("graded log lost precision before degree k - 1");
            lgk.push_back(std::move(acc));
        }
    } else {
        std::vector<WMSlice> cg = collapsed_coh_coeffs(spec, kmax, eps);
        lgc.reserve(static_cast<std::size_t>(order) + 1);
        lgc.push_back(cg[0]);
        for (int n = 1; n <= order; ++n) {
            WMSlice acc = cg[static_cast<std::size_t>(n)];
            for (int j = 1; j < n; ++j)
                acc = wm_sub(acc, wm_scaled(wm_mul(lgc[static_cast<std::size_t>(j)],
                                                   cg[static_cast<std::size_t>(n - j)]),
                                            rat(j, n)));
            lgc.push_back(std::move(acc));
        }
    }

    std::vector<UniversalCombination> out;
    out.reserve(pairs.size());
    for (auto [k1, k2] : pairs) {
        int k = k1 + k2;
        UniversalCombination u = comb_shell(side, k1, k2, spec.r, spec.N, order);
        u.flagged = false;
        u.note.clear();
        Rat norm = factorial(k1) * factorial(k2);
        for (int n = 1; n <= order; ++n) {
            RatFun g = spec.kind == GenusKind::Verlinde
                           ? lgk[static_cast<std::size_t>(n)].coeff(k - 1, kmax).at(k1, k2)
                           : lgc[static_cast<std::size_t>(n)].at(k1, k2);
            u.c[static_cast<std::size_t>(n)] = norm * cleared_constant(g, n, k1, k2);
        }
        out.push_back(std::move(u));
    }
    return out;
}

}  // namespace

UniversalCombination extract_combination(const GenusSpec& spec, int k1, int k2, UnivSide side) {
    return extract_block(spec, k1 + k2, side, {{k1, k2}}).front();
}

std::vector<UniversalCombination> extract_combination_table(const GenusSpec& spec, int kmax,
                                                            UnivSide side) {
    if (kmax < 0) throw std::invalid_argument("extraction table needs kmax >= 0");
    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k <= kmax; ++k)
        for (int k1 = k; k1 >= 0; --k1) pairs.push_back({k1, k - k1});
    return extract_block(spec, kmax, side, pairs);
}

UniversalCombination extract_combination(const QSeries& series, int k1, int k2, UnivSide side) {
    if (series.reduced) throw std::invalid_argument("extraction works on the nonreduced series");
    if (series.coeff(0) != RatFun::one())
        throw std::invalid_argument("series must start at 1");
    // The assembled coefficients themselves are not consulted: the operation
    // is defined on the collapsed-weight form of the series, and that form is
    // rebuilt pointwise from the specification, which is exact and avoids
    // collapsing a merged fixed-point sum.
    return extract_combination(series.spec, k1, k2, side);
}

// ----- table emission ---------------------------------------------------------

std::string universal_table_text(const std::vector<UniversalCombination>& rows) {
    std::ostringstream o;
    for (const auto& r : rows) o << r.text() << "\n";
    return o.str();
}

std::string universal_table_json(const std::vector<UniversalCombination>& rows) {
    std::ostringstream o;
    o << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) o << ",";
        o << rows[i].json();
    }
    o << "]";
    return o.str();
}

}  // namespace qvx
