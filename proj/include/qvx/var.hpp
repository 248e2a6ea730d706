// Variable identities for the equivariant rings.
//
// Cohomology side: l<i> (Chern roots of the torus acting on the space),
// m<i> (weights of the source bundle E), w<i> (weights of the insertion
// bundle V). K-theory side: t<i>, y<i>, v<i>, the multiplicative versions
// of the same. Auxiliary formal variables: q (box-counting series), z
// (Nekrasov insertion), b (degree grading), e (limit parameter), s (the
// combined y*v variable of the plethystic closed form).
//
// On a Calabi-Yau fourfold chart the relations l1+l2+l3+l4 = 0 and
// t1*t2*t3*t4 = 1 are imposed at construction time: index 4 of class l/t
// never appears in stored data.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qvx {

enum class VarClass : std::uint8_t {
    Lambda = 0,  // l: cohomology weights of the torus on C^2 / C^4
    M = 1,       // m: cohomology weights of E
    W = 2,       // w: cohomology weights of V
    T = 3,       // t: K-theory torus characters
    Y = 4,       // y: K-theory characters of E
    V = 5,       // v: K-theory characters of V
    Aux = 6,     // q, z, b, e, s
};

// Fixed indices within class Aux.
enum : std::uint8_t {
    AUX_Q = 0,
    AUX_Z = 1,
    AUX_B = 2,
    AUX_EPS = 3,
    AUX_S = 4,
};

struct VarId {
    VarClass cls;
    std::uint8_t idx;  // 1-based for l/m/w/t/y/v; AUX_* for Aux

    constexpr VarId(VarClass c, std::uint8_t i) : cls(c), idx(i) {}

    // Canonical total order: class first (Lambda < M < W < T < Y < V < Aux),
    // then index. Packed into one integer so monomials can sort on it directly.
    constexpr std::uint16_t code() const {
        return static_cast<std::uint16_t>((static_cast<std::uint16_t>(cls) << 8) | idx);
    }

    friend constexpr bool operator==(VarId a, VarId b) { return a.code() == b.code(); }
    friend constexpr bool operator!=(VarId a, VarId b) { return a.code() != b.code(); }
    friend constexpr bool operator<(VarId a, VarId b) { return a.code() < b.code(); }
};

inline constexpr VarId var_l(std::uint8_t i) { return VarId(VarClass::Lambda, i); }
inline constexpr VarId var_m(std::uint8_t i) { return VarId(VarClass::M, i); }
inline constexpr VarId var_w(std::uint8_t i) { return VarId(VarClass::W, i); }
inline constexpr VarId var_t(std::uint8_t i) { return VarId(VarClass::T, i); }
inline constexpr VarId var_y(std::uint8_t i) { return VarId(VarClass::Y, i); }
inline constexpr VarId var_v(std::uint8_t i) { return VarId(VarClass::V, i); }

inline constexpr VarId var_q() { return VarId(VarClass::Aux, AUX_Q); }
inline constexpr VarId var_z() { return VarId(VarClass::Aux, AUX_Z); }
inline constexpr VarId var_b() { return VarId(VarClass::Aux, AUX_B); }
inline constexpr VarId var_eps() { return VarId(VarClass::Aux, AUX_EPS); }
inline constexpr VarId var_s() { return VarId(VarClass::Aux, AUX_S); }

inline VarId var_from_code(std::uint16_t code) {
    return VarId(static_cast<VarClass>(code >> 8), static_cast<std::uint8_t>(code & 0xff));
}

// Multiplicative (K-theory) variables admit half-integer exponents; the
// combined variable s does too, since s^(1/2) enters the closed formulas.
inline bool half_exponent_ok(VarId v) {
    switch (v.cls) {
        case VarClass::T:
        case VarClass::Y:
        case VarClass::V:
            return true;
        case VarClass::Aux:
            return v.idx == AUX_S;
        default:
            return false;
    }
}

inline bool is_k_class(VarId v) {
    return v.cls == VarClass::T || v.cls == VarClass::Y || v.cls == VarClass::V ||
           (v.cls == VarClass::Aux && v.idx == AUX_S);
}

inline bool is_coh_class(VarId v) {
    return v.cls == VarClass::Lambda || v.cls == VarClass::M || v.cls == VarClass::W;
}

inline std::string var_name(VarId v) {
    switch (v.cls) {
        case VarClass::Lambda: return "l" + std::to_string(v.idx);
        case VarClass::M: return "m" + std::to_string(v.idx);
        case VarClass::W: return "w" + std::to_string(v.idx);
        case VarClass::T: return "t" + std::to_string(v.idx);
        case VarClass::Y: return "y" + std::to_string(v.idx);
        case VarClass::V: return "v" + std::to_string(v.idx);
        case VarClass::Aux:
            switch (v.idx) {
                case AUX_Q: return "q";
                case AUX_Z: return "z";
                case AUX_B: return "b";
                case AUX_EPS: return "e";
                case AUX_S: return "s";
                default: return "aux" + std::to_string(v.idx);
            }
    }
    throw std::logic_error("var_name: bad class");
}

// Inverse of var_name, used by the canonical-text parser.
inline VarId var_parse(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("var_parse: empty name");
    if (name == "q") return var_q();
    if (name == "z") return var_z();
    if (name == "b") return var_b();
    if (name == "e") return var_eps();
    if (name == "s") return var_s();
    char c = name[0];
    if (name.size() < 2) throw std::invalid_argument("var_parse: bad name " + name);
    int idx = std::stoi(name.substr(1));
    if (idx < 1 || idx > 255) throw std::invalid_argument("var_parse: bad index in " + name);
    switch (c) {
        case 'l': return var_l(static_cast<std::uint8_t>(idx));
        case 'm': return var_m(static_cast<std::uint8_t>(idx));
        case 'w': return var_w(static_cast<std::uint8_t>(idx));
        case 't': return var_t(static_cast<std::uint8_t>(idx));
        case 'y': return var_y(static_cast<std::uint8_t>(idx));
        case 'v': return var_v(static_cast<std::uint8_t>(idx));
        default: throw std::invalid_argument("var_parse: bad name " + name);
    }
}

}  // namespace qvx
