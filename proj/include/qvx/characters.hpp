// K-theory characters at torus fixed points: structure-sheaf characters of
// (colored) partitions, virtual tangent characters on C^2 and C^4, the square
// root used on C^4, and tautological fibers. Everything here is an exact
// Laurent polynomial in t1, t2 (, t3), y1..yN, v1..; on the fourfold t4 is
// eliminated through t1*t2*t3*t4 = 1 before anything is stored, so a box
// (a,b,c,d) contributes t1^(d-a) t2^(d-b) t3^(d-c).
#pragma once

#include "qvx/mpoly.hpp"
#include "qvx/partitions.hpp"

#include <vector>

namespace qvx {

// Character of the quotient O/I for one partition: sum over boxes in row i,
// column j of t1^{-j} t2^{-i}.
MPoly partition_character(const Partition& mu);

// Same for a solid partition, with t4 eliminated as above. Distinct boxes
// may land on the same monomial after elimination; coefficients add up.
MPoly solid_character(const SolidPartition& pi);

// Per-color characters Q_1..Q_N.
std::vector<MPoly> color_characters(const ColoredPartition& mu);
std::vector<MPoly> color_characters(const ColoredSolidPartition& pi);

// Virtual tangent character of the Quot scheme of C^2 at the fixed point
// labeled by mu:
//   sum_{i,j} (Q_j - (1 - t1)(1 - t2) bar(Q_i) Q_j) y_i^{-1} y_j .
MPoly tangent_surface(const ColoredPartition& mu);

// Virtual tangent character on C^4, written with t4 eliminated:
//   sum_{i,j} (Q_j + bar(Q_i) - P bar(Q_i) Q_j) y_i^{-1} y_j ,
//   P = (1 - t1^{-1})(1 - t2^{-1})(1 - t3^{-1})(1 - t1 t2 t3) .
MPoly tangent_cy4(const ColoredSolidPartition& pi);

// Square root of tangent_cy4, satisfying sqrt + bar(sqrt) = tangent:
//   sum_{i,j} (Q_j - (1 - t1)(1 - t2)(1 - t3) bar(Q_i) Q_j) y_i^{-1} y_j .
MPoly sqrt_tangent_cy4(const ColoredSolidPartition& pi);

// Fiber of alpha^{[n]} for alpha = sum_{i in pos} v_i - sum_{i in neg} v_i:
//   (sum_pos v_i - sum_neg v_i) * sum_j y_j Q_j .
// pos and neg hold 1-based v indices; an index appearing in both cancels.
MPoly taut_character(const std::vector<MPoly>& Q, const std::vector<int>& pos,
                     const std::vector<int>& neg);
MPoly taut_surface(const ColoredPartition& mu, const std::vector<int>& pos,
                   const std::vector<int>& neg);
MPoly taut_cy4(const ColoredSolidPartition& pi, const std::vector<int>& pos,
               const std::vector<int>& neg);

// Reduced tangent character for the t1 t2 = 1 subtorus: tangent_surface
// evaluated at t2 = t1^{-1} plus one trivial summand. The constant term of
// the result must vanish; a nonzero residue throws ResidualFixedPart. Empty
// mu is rejected since the reduced series starts at n = 1.
MPoly reduced_tangent_surface(const ColoredPartition& mu);

}  // namespace qvx
