// Exact rational scalars. Thin helpers over GMP's mpq_class: everything in the
// engine is exact, there is no floating point anywhere in the core.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qvx {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_one(const Rat& r) { return r == 1; }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// a^e for integer e (negative allowed when a != 0).
inline Rat rat_pow(const Rat& a, long e) {
    if (e == 0) return Rat(1);
    if (is_zero(a)) {
        if (e < 0) throw std::domain_error("rat_pow: 0 to a negative power");
        return Rat(0);
    }
    Rat base = e < 0 ? Rat(1) / a : a;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

inline Rat factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of a negative integer");
    Rat acc(1);
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

// binomial(a, k) for arbitrary rational (in practice integer) a and k >= 0:
// a(a-1)...(a-k+1)/k!. Negative upper arguments are routine here.
inline Rat binomial(const Rat& a, long k) {
    if (k < 0) return Rat(0);
    Rat acc(1);
    for (long i = 0; i < k; ++i) acc *= (a - i);
    return acc / factorial(k);
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Deterministic splitmix64, used to derive reproducible rational sample points
// for evaluation-based property tests and the probabilistic pre-screen mode.
struct Rng64 {
    std::uint64_t state;
    explicit Rng64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Small nonzero rational, numerator in [-limit, limit] \ {0}, denominator in [1, 7].
    Rat rat_sample(long limit = 97) {
        long num = static_cast<long>(next() % (2 * limit)) - limit;
        if (num >= 0) ++num;
        long den = static_cast<long>(next() % 7) + 1;
        return rat(num, den);
    }
};

}  // namespace qvx
