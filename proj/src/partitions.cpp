#include "qvx/partitions.hpp"

#include <algorithm>

namespace qvx {

Partition Partition::conjugate() const {
    Partition t;
    if (parts.empty()) return t;
    t.parts.assign(static_cast<std::size_t>(parts[0]), 0);
    for (int p : parts)
        for (int j = 0; j < p; ++j) ++t.parts[static_cast<std::size_t>(j)];
    return t;
}

std::string Partition::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts[i]);
    }
    return s + ")";
}

BoxStats box_stats(const Partition& mu, int i, int j) {
    if (!mu.contains(i, j))
        throw BoxNotInPartition("box (" + std::to_string(i) + "," + std::to_string(j) +
                                ") outside " + mu.str());
    Partition t = mu.conjugate();
    return BoxStats{j, i, mu.parts[static_cast<std::size_t>(i)] - j - 1,
                    t.parts[static_cast<std::size_t>(j)] - i - 1};
}

namespace {

void rec_partitions(int n, int max_part, std::vector<int>& acc, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(Partition{acc});
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        acc.push_back(p);
        rec_partitions(n - p, p, acc, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n) {
    std::vector<Partition> out;
    std::vector<int> acc;
    rec_partitions(n, n, acc, out);
    return out;
}

int colored_size(const ColoredPartition& mu) {
    int n = 0;
    for (const auto& p : mu) n += p.size();
    return n;
}

int colored_size(const ColoredSolidPartition& pi) {
    int n = 0;
    for (const auto& p : pi) n += p.size();
    return n;
}

namespace {

// Generic colored enumeration: distribute n over N colors, earlier colors
// taking larger sizes first, then take the per-size lists componentwise.
template <class Piece>
void rec_colored(int color, int left, int N, const std::vector<std::vector<Piece>>& by_size,
                 std::vector<Piece>& acc, std::vector<std::vector<Piece>>& out) {
    if (color == N - 1) {
        for (const auto& p : by_size[static_cast<std::size_t>(left)]) {
            acc.push_back(p);
            out.push_back(acc);
            acc.pop_back();
        }
        return;
    }
    for (int k = left; k >= 0; --k) {
        for (const auto& p : by_size[static_cast<std::size_t>(k)]) {
            acc.push_back(p);
            rec_colored(color + 1, left - k, N, by_size, acc, out);
            acc.pop_back();
        }
    }
}

template <class Piece>
std::vector<std::vector<Piece>> colored_from(int N, int n,
                                             std::vector<Piece> (*enumerate)(int)) {
    std::vector<std::vector<Piece>> by_size;
    by_size.reserve(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) by_size.push_back(enumerate(k));
    std::vector<std::vector<Piece>> out;
    std::vector<Piece> acc;
    rec_colored(0, n, N, by_size, acc, out);
    return out;
}

}  // namespace

std::vector<ColoredPartition> enumerate_colored(int N, int n) {
    return colored_from<Partition>(N, n, &enumerate_partitions);
}

bool SolidPartition::contains(const Box4& b) const {
    return std::binary_search(boxes.begin(), boxes.end(), b);
}

bool SolidPartition::downward_closed() const {
    for (const Box4& b : boxes)
        for (int k = 0; k < 4; ++k) {
            if (b[static_cast<std::size_t>(k)] == 0) continue;
            Box4 p = b;
            --p[static_cast<std::size_t>(k)];
            if (!contains(p)) return false;
        }
    return true;
}

std::string SolidPartition::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(boxes[i][0]) + "," + std::to_string(boxes[i][1]) + "," +
             std::to_string(boxes[i][2]) + "," + std::to_string(boxes[i][3]) + ")";
    }
    return s + "}";
}

namespace {

// b can be added to pi keeping downward closure
bool addable(const SolidPartition& pi, const Box4& b) {
    if (pi.contains(b)) return false;
    for (int k = 0; k < 4; ++k) {
        if (b[static_cast<std::size_t>(k)] == 0) continue;
        Box4 p = b;
        --p[static_cast<std::size_t>(k)];
        if (!pi.contains(p)) return false;
    }
    return true;
}

// b can be removed from pi keeping downward closure (no successor present)
bool removable(const SolidPartition& pi, const Box4& b) {
    for (int k = 0; k < 4; ++k) {
        Box4 s = b;
        ++s[static_cast<std::size_t>(k)];
        if (pi.contains(s)) return false;
    }
    return true;
}

Box4 largest_removable(const SolidPartition& pi) {
    for (auto it = pi.boxes.rbegin(); it != pi.boxes.rend(); ++it)
        if (removable(pi, *it)) return *it;
    throw std::logic_error("nonempty solid partition with no removable box");
}

}  // namespace

std::vector<SolidPartition> enumerate_solid(int n) {
    std::vector<SolidPartition> level;
    if (n == 0) {
        level.push_back(SolidPartition{});
        return level;
    }
    level.push_back(SolidPartition{{Box4{0, 0, 0, 0}}});
    for (int sz = 1; sz < n; ++sz) {
        std::vector<SolidPartition> next;
        for (const SolidPartition& pi : level) {
            // Candidate boxes: lattice successors of existing boxes. Keep a
            // child only when the new box is the canonical (largest
            // removable) one, so each partition appears exactly once.
            std::vector<Box4> cand;
            for (const Box4& b : pi.boxes)
                for (int k = 0; k < 4; ++k) {
                    Box4 s = b;
                    ++s[static_cast<std::size_t>(k)];
                    cand.push_back(s);
                }
            std::sort(cand.begin(), cand.end());
            cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
            for (const Box4& b : cand) {
                if (!addable(pi, b)) continue;
                SolidPartition child = pi;
                child.boxes.insert(
                    std::upper_bound(child.boxes.begin(), child.boxes.end(), b), b);
                if (largest_removable(child) == b) next.push_back(std::move(child));
            }
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    return level;
}

std::vector<ColoredSolidPartition> enumerate_colored_solid(int N, int n) {
    return colored_from<SolidPartition>(N, n, &enumerate_solid);
}

int sign_exponent(const SolidPartition& pi) {
    int e = pi.size();
    for (const Box4& b : pi.boxes)
        if (b[0] == b[1] && b[1] == b[2] && b[0] < b[3]) ++e;
    return e & 1;
}

int sign_exponent(const ColoredSolidPartition& pi) {
    int e = 0;
    for (const auto& p : pi) e += sign_exponent(p);
    return e & 1;
}

}  // namespace qvx
