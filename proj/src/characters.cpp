#include "qvx/characters.hpp"

#include <cassert>

namespace qvx {

namespace {

// (1 - t1)(1 - t2), the surface K-class cutting out the origin.
MPoly origin_class_2d() {
    MPoly one = MPoly::constant(Rat(1));
    return (one - MPoly::variable(var_t(1))) * (one - MPoly::variable(var_t(2)));
}

// bar of (1 - t1^{-1})(1 - t2^{-1})(1 - t3^{-1}).
MPoly bar_p123() {
    MPoly one = MPoly::constant(Rat(1));
    return (one - MPoly::variable(var_t(1))) * (one - MPoly::variable(var_t(2))) *
           (one - MPoly::variable(var_t(3)));
}

// (1 - t1^{-1})(1 - t2^{-1})(1 - t3^{-1})(1 - t4^{-1}) with t4^{-1} = t1 t2 t3.
MPoly origin_class_4d() {
    MPoly one = MPoly::constant(Rat(1));
    MPoly p = one - MPoly::variable(var_t(1), -1);
    p = p * (one - MPoly::variable(var_t(2), -1));
    p = p * (one - MPoly::variable(var_t(3), -1));
    Monomial t123 = Monomial::var(var_t(1)) * Monomial::var(var_t(2)) * Monomial::var(var_t(3));
    return p * (one - MPoly::monomial(t123));
}

// Shared assembly for the three tangent-type sums: for a per-color matrix
// coefficient c_ij (built from Q_i, Q_j by the callback), returns
// sum_{i,j} c_ij * y_i^{-1} y_j.
template <class CoefFn>
MPoly assemble_tangent(const std::vector<MPoly>& Q, CoefFn coef) {
    const int N = static_cast<int>(Q.size());
    std::vector<MPoly> bars;
    bars.reserve(Q.size());
    for (const MPoly& q : Q) bars.push_back(q.bar());

    MPoly total;
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            MPoly c = coef(bars[i - 1], Q[j - 1]);
            if (c.is_zero()) continue;
            Monomial yy = Monomial::var(var_y(static_cast<std::uint8_t>(i)), -1) *
                          Monomial::var(var_y(static_cast<std::uint8_t>(j)));
            total = total + c.mul_monomial(yy);
        }
    }
    return total;
}

}  // namespace

MPoly partition_character(const Partition& mu) {
    std::vector<MPoly::Term> terms;
    for (int i = 0; i < static_cast<int>(mu.parts.size()); ++i) {
        for (int j = 0; j < mu.parts[i]; ++j) {
            Monomial m = Monomial::var(var_t(1), -j) * Monomial::var(var_t(2), -i);
            terms.emplace_back(m, Rat(1));
        }
    }
    return MPoly::from_terms(std::move(terms));
}

MPoly solid_character(const SolidPartition& pi) {
    std::vector<MPoly::Term> terms;
    for (const Box4& b : pi.boxes) {
        Monomial m = Monomial::var(var_t(1), b[3] - b[0]) * Monomial::var(var_t(2), b[3] - b[1]) *
                     Monomial::var(var_t(3), b[3] - b[2]);
        terms.emplace_back(m, Rat(1));
    }
    return MPoly::from_terms(std::move(terms));
}

std::vector<MPoly> color_characters(const ColoredPartition& mu) {
    std::vector<MPoly> Q;
    Q.reserve(mu.size());
    for (const Partition& p : mu) Q.push_back(partition_character(p));
    return Q;
}

std::vector<MPoly> color_characters(const ColoredSolidPartition& pi) {
    std::vector<MPoly> Q;
    Q.reserve(pi.size());
    for (const SolidPartition& p : pi) Q.push_back(solid_character(p));
    return Q;
}

MPoly tangent_surface(const ColoredPartition& mu) {
    MPoly origin = origin_class_2d();
    return assemble_tangent(color_characters(mu), [&](const MPoly& qi_bar, const MPoly& qj) {
        return qj - origin * qi_bar * qj;
    });
}

MPoly tangent_cy4(const ColoredSolidPartition& pi) {
    MPoly origin = origin_class_4d();
    return assemble_tangent(color_characters(pi), [&](const MPoly& qi_bar, const MPoly& qj) {
        return qj + qi_bar - origin * qi_bar * qj;
    });
}

MPoly sqrt_tangent_cy4(const ColoredSolidPartition& pi) {
    MPoly half = bar_p123();
    return assemble_tangent(color_characters(pi), [&](const MPoly& qi_bar, const MPoly& qj) {
        return qj - half * qi_bar * qj;
    });
}

MPoly taut_character(const std::vector<MPoly>& Q, const std::vector<int>& pos,
                     const std::vector<int>& neg) {
    MPoly alpha;
    for (int i : pos) alpha = alpha + MPoly::variable(var_v(static_cast<std::uint8_t>(i)));
    for (int i : neg) alpha = alpha - MPoly::variable(var_v(static_cast<std::uint8_t>(i)));

    MPoly sections;
    for (int j = 1; j <= static_cast<int>(Q.size()); ++j) {
        sections = sections + Q[j - 1].mul_monomial(Monomial::var(var_y(static_cast<std::uint8_t>(j))));
    }
    return alpha * sections;
}

MPoly taut_surface(const ColoredPartition& mu, const std::vector<int>& pos,
                   const std::vector<int>& neg) {
    return taut_character(color_characters(mu), pos, neg);
}

MPoly taut_cy4(const ColoredSolidPartition& pi, const std::vector<int>& pos,
               const std::vector<int>& neg) {
    return taut_character(color_characters(pi), pos, neg);
}

MPoly reduced_tangent_surface(const ColoredPartition& mu) {
    if (colored_size(mu) == 0) {
        throw Error("reduced tangent character requires a nonempty partition");
    }
    MPoly t = tangent_surface(mu);
    t = t.subst_monomial(var_t(2), Rat(1), Monomial::var(var_t(1), -1));
    t = t + MPoly::constant(Rat(1));
    if (t.constant_term() != Rat(0)) {
        throw ResidualFixedPart("reduced tangent character keeps a fixed summand at " +
                                t.constant_term().get_str());
    }
    return t;
}

}  // namespace qvx
