// Partitions, N-colored partitions, and their 4-dimensional (solid)
// analogues, with the box statistics and sign data the fixed-point sums
// need. Boxes are 0-based; for a partition mu the box (i, j) lies in row i,
// column j, present when j < mu_parts[i]. Solid partitions are finite
// downward-closed subsets of N^4 stored as sorted box lists.
#pragma once

#include "qvx/errors.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qvx {

struct Partition {
    std::vector<int> parts;  // non-increasing, positive entries

    int size() const {
        int n = 0;
        for (int p : parts) n += p;
        return n;
    }
    bool empty() const { return parts.empty(); }
    bool contains(int i, int j) const {
        return i >= 0 && j >= 0 && i < static_cast<int>(parts.size()) && j < parts[i];
    }
    Partition conjugate() const;
    std::string str() const;  // (3,1) style

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts < b.parts; }
};

struct BoxStats {
    int c, r, a, l;  // column, row, arm, leg
};

// Throws BoxNotInPartition when (i, j) lies outside mu.
BoxStats box_stats(const Partition& mu, int i, int j);

// All partitions of n, first part descending (so (2) precedes (1,1)).
std::vector<Partition> enumerate_partitions(int n);

using ColoredPartition = std::vector<Partition>;

int colored_size(const ColoredPartition& mu);

// All N-tuples of partitions with total size n. Colors are filled left to
// right, earlier colors taking larger sizes first.
std::vector<ColoredPartition> enumerate_colored(int N, int n);

using Box4 = std::array<int, 4>;

struct SolidPartition {
    std::vector<Box4> boxes;  // sorted ascending lexicographically

    int size() const { return static_cast<int>(boxes.size()); }
    bool contains(const Box4& b) const;
    bool downward_closed() const;
    std::string str() const;

    friend bool operator==(const SolidPartition& a, const SolidPartition& b) {
        return a.boxes == b.boxes;
    }
    friend bool operator<(const SolidPartition& a, const SolidPartition& b) {
        return a.boxes < b.boxes;
    }
};

// All solid partitions of n via canonical-parent growth (each partition is
// produced exactly once as child of itself minus its largest removable box).
std::vector<SolidPartition> enumerate_solid(int n);

using ColoredSolidPartition = std::vector<SolidPartition>;

int colored_size(const ColoredSolidPartition& pi);

std::vector<ColoredSolidPartition> enumerate_colored_solid(int N, int n);

// Orientation exponent: |pi| + #{(i,i,i,j) in pi : i < j}, reduced mod 2;
// additive over colors.
int sign_exponent(const SolidPartition& pi);
int sign_exponent(const ColoredSolidPartition& pi);

}  // namespace qvx
