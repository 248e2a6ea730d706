// Sparse Laurent monomials over the variable set of var.hpp.
//
// Exponents are stored uniformly as integers counting half-units: stored
// value 2 means exponent 1, stored value 1 means exponent 1/2. Half-units
// are legal only for the multiplicative variables (t/y/v and the combined
// variable s); construction sites assert evenness elsewhere.
#pragma once

#include "qvx/var.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qvx {

struct Monomial {
    // Sorted by variable code ascending; exponents (in half-units) never zero.
    std::vector<std::pair<std::uint16_t, std::int32_t>> e;

    Monomial() = default;

    static Monomial one() { return Monomial(); }

    // exp2 is the stored half-unit count: var^(exp2/2).
    static Monomial var_pow2(VarId v, std::int32_t exp2) {
        Monomial m;
        if (exp2 != 0) {
            if ((exp2 & 1) && !half_exponent_ok(v))
                throw std::invalid_argument("half exponent on variable " + var_name(v));
            m.e.push_back({v.code(), exp2});
        }
        return m;
    }

    static Monomial var(VarId v, std::int32_t exp = 1) { return var_pow2(v, 2 * exp); }

    bool is_one() const { return e.empty(); }

    std::int32_t exp2_of(VarId v) const {
        for (const auto& p : e)
            if (p.first == v.code()) return p.second;
        return 0;
    }

    bool depends_on(VarId v) const { return exp2_of(v) != 0; }

    // Total degree in half-units, optionally restricted by a class predicate.
    std::int64_t deg2() const {
        std::int64_t d = 0;
        for (const auto& p : e) d += p.second;
        return d;
    }

    template <class Pred>
    std::int64_t deg2_if(Pred pred) const {
        std::int64_t d = 0;
        for (const auto& p : e)
            if (pred(var_from_code(p.first))) d += p.second;
        return d;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        r.e.reserve(a.e.size() + b.e.size());
        auto ia = a.e.begin(), ib = b.e.begin();
        while (ia != a.e.end() && ib != b.e.end()) {
            if (ia->first < ib->first) {
                r.e.push_back(*ia++);
            } else if (ib->first < ia->first) {
                r.e.push_back(*ib++);
            } else {
                std::int32_t s = ia->second + ib->second;
                if (s != 0) r.e.push_back({ia->first, s});
                ++ia;
                ++ib;
            }
        }
        r.e.insert(r.e.end(), ia, a.e.end());
        r.e.insert(r.e.end(), ib, b.e.end());
        return r;
    }

    Monomial inverse() const {
        Monomial r = *this;
        for (auto& p : r.e) p.second = -p.second;
        return r;
    }

    // a / b, always defined in the Laurent lattice.
    friend Monomial operator/(const Monomial& a, const Monomial& b) { return a * b.inverse(); }

    Monomial pow(std::int64_t k) const {
        Monomial r = *this;
        for (auto& p : r.e) {
            std::int64_t v = static_cast<std::int64_t>(p.second) * k;
            if (v < INT32_MIN || v > INT32_MAX) throw std::overflow_error("monomial exponent overflow");
            p.second = static_cast<std::int32_t>(v);
        }
        if (k == 0) r.e.clear();
        return r;
    }

    // True when every exponent is a nonnegative whole unit (ordinary monomial).
    bool is_polynomial() const {
        for (const auto& p : e)
            if (p.second < 0) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a.e == b.e); }
};

// Canonical term order: total degree (in half-units) first, then lexicographic
// on variable code with larger exponent at the first differing variable
// ranking higher. Polynomials store terms descending in this order.
inline int mono_cmp(const Monomial& a, const Monomial& b) {
    std::int64_t da = a.deg2(), db = b.deg2();
    if (da != db) return da < db ? -1 : 1;
    auto ia = a.e.begin(), ib = b.e.begin();
    while (ia != a.e.end() && ib != b.e.end()) {
        if (ia->first != ib->first) {
            // The side owning the earlier variable has a nonzero exponent there.
            if (ia->first < ib->first) return ia->second > 0 ? 1 : -1;
            return ib->second > 0 ? -1 : 1;
        }
        if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
        ++ia;
        ++ib;
    }
    if (ia != a.e.end()) return ia->second > 0 ? 1 : -1;
    if (ib != b.e.end()) return ib->second > 0 ? -1 : 1;
    return 0;
}

inline bool mono_less(const Monomial& a, const Monomial& b) { return mono_cmp(a, b) < 0; }

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (const auto& p : m.e) {
            h ^= (static_cast<std::uint64_t>(p.first) << 32) ^ static_cast<std::uint32_t>(p.second);
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace qvx
