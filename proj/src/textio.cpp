#include "qvx/textio.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace qvx {

//// printing ////

std::string mono_str(const Monomial& m) {
    std::string s;
    for (const auto& [code, exp2] : m.e) {
        if (!s.empty()) s += '*';
        s += var_name(var_from_code(code));
        if (exp2 == 2) continue;
        if (exp2 % 2 == 0) {
            s += '^';
            s += std::to_string(exp2 / 2);
        } else {
            s += "^(";
            s += std::to_string(exp2);
            s += "/2)";
        }
    }
    return s;
}

namespace {

std::string term_str(const Monomial& m, const Rat& c) {
    if (m.is_one()) return rat_str(c);
    if (c == 1) return mono_str(m);
    if (c == -1) return "-" + mono_str(m);
    return rat_str(c) + "*" + mono_str(m);
}

}  // namespace

std::string mpoly_str(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : p.terms()) {
        std::string t = term_str(m, c);
        if (s.empty()) {
            s = t;
        } else if (t[0] == '-') {
            s += '-';
            s += t.substr(1);
        } else {
            s += '+';
            s += t;
        }
    }
    return s;
}

std::string ratfun_str(const RatFun& f) {
    if (f.is_poly()) return mpoly_str(f.num());
    std::string den;
    for (const auto& [atom, mult] : f.den()) {
        if (!den.empty()) den += '*';
        if (atom.p.is_monomial() && atom.p.terms()[0].second == 1)
            den += mono_str(atom.p.terms()[0].first);
        else
            den += "(" + mpoly_str(atom.p) + ")";
        if (mult != 1) den += "^" + std::to_string(mult);
    }
    return "(" + mpoly_str(f.num()) + ")/(" + den + ")";
}

std::string MPoly::str() const { return mpoly_str(*this); }
std::string RatFun::str() const { return ratfun_str(*this); }

//// parsing ////

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("parse error at position " + std::to_string(i) + ": " + why +
                                    " in \"" + s + "\"");
    }
    bool done() const { return i >= s.size(); }
    char peek() const { return done() ? '\0' : s[i]; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++i;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    Int integer() {
        std::size_t start = i;
        while (!done() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected a digit");
        return Int(s.substr(start, i - start));
    }

    std::string name() {
        std::size_t start = i;
        while (!done() && std::islower(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected a variable name");
        while (!done() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return s.substr(start, i - start);
    }

    // exponent after '^': INT, -INT, or (p/2) with p odd (also accepts
    // (p/q)-style rationals whose doubled value is integral)
    std::int32_t exponent2() {
        bool paren = eat('(');
        bool neg = eat('-');
        Int num = integer();
        Int den = 1;
        if (paren && eat('/')) den = integer();
        if (paren) expect(')');
        Int e2 = 2 * num;
        if (!mpz_divisible_p(e2.get_mpz_t(), den.get_mpz_t()))
            fail("exponent is not a half-integer");
        e2 /= den;
        if (neg) e2 = -e2;
        if (!e2.fits_sint_p()) fail("exponent out of range");
        return static_cast<std::int32_t>(e2.get_si());
    }

    // NAME['^'exp] as a one-variable monomial
    Monomial varpow() {
        std::string n = name();
        VarId v = var_parse(n);
        std::int32_t e2 = 2;
        if (eat('^')) e2 = exponent2();
        return Monomial::var_pow2(v, e2);
    }

    // INT['/'INT] | varpow, as a term factor
    std::pair<Monomial, Rat> factor() {
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Int num = integer();
            Int den = 1;
            if (eat('/')) den = integer();
            if (den == 0) fail("zero denominator in coefficient");
            Rat c(num, den);
            c.canonicalize();
            return {Monomial::one(), c};
        }
        return {varpow(), Rat(1)};
    }

    std::pair<Monomial, Rat> term() {
        auto [m, c] = factor();
        while (eat('*')) {
            auto [m2, c2] = factor();
            m = m * m2;
            c *= c2;
        }
        return {m, c};
    }

    MPoly poly() {
        std::vector<MPoly::Term> terms;
        bool neg = eat('-');
        for (;;) {
            auto [m, c] = term();
            if (neg) c = -c;
            terms.push_back({std::move(m), std::move(c)});
            if (eat('+'))
                neg = false;
            else if (eat('-'))
                neg = true;
            else
                break;
        }
        return MPoly::from_terms(std::move(terms));
    }

    // factored denominator: product of NAME['^'INT] and (poly)['^'INT]
    std::vector<std::pair<MPoly, int>> den_product() {
        std::vector<std::pair<MPoly, int>> dens;
        for (;;) {
            MPoly base;
            if (eat('(')) {
                base = poly();
                expect(')');
            } else {
                base = MPoly::monomial(varpow());
            }
            int mult = 1;
            if (eat('^')) {
                Int k = integer();
                if (!k.fits_sint_p()) fail("factor multiplicity out of range");
                mult = static_cast<int>(k.get_si());
            }
            dens.push_back({std::move(base), mult});
            if (!eat('*')) break;
        }
        return dens;
    }
};

}  // namespace

MPoly parse_mpoly(const std::string& text) {
    Cursor c{text};
    MPoly p = c.poly();
    if (!c.done()) c.fail("trailing input");
    return p;
}

RatFun parse_ratfun(const std::string& text) {
    Cursor c{text};
    if (c.peek() == '(') {
        c.expect('(');
        MPoly num = c.poly();
        c.expect(')');
        c.expect('/');
        c.expect('(');
        auto dens = c.den_product();
        c.expect(')');
        if (!c.done()) c.fail("trailing input");
        return RatFun(std::move(num), std::move(dens));
    }
    MPoly p = c.poly();
    if (!c.done()) c.fail("trailing input");
    return RatFun::poly(std::move(p));
}

}  // namespace qvx
