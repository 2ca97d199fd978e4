#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "orbifrob/errors.hpp"
#include "orbifrob/permutation.hpp"

namespace orbifrob {

struct CycleData {
    OrbitPartition cycles;  // orbits of <sigma>, fixed points included
    std::size_t l = 0;      // number of orbits
    std::size_t length = 0; // |sigma| = n - l
};

/// Orbits of the subgroup generated by `perms` (union-find on generator images).
inline OrbitPartition joint_orbits(std::span<const Permutation> perms, std::size_t n) {
    for (const auto& p : perms) {
        if (p.n() != n) throw SizeMismatch("joint_orbits: permutations act on different sets");
    }
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& p : perms)
        for (std::size_t i = 0; i < n; ++i) {
            const int a = find(static_cast<int>(i));
            const int b = find(p(static_cast<int>(i)));
            if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
    std::vector<std::vector<int>> blocks;
    std::vector<int> index(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = static_cast<std::size_t>(find(static_cast<int>(i)));
        if (index[r] == -1) {
            index[r] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[static_cast<std::size_t>(index[r])].push_back(static_cast<int>(i));
    }
    return OrbitPartition(n, std::move(blocks));
}

inline OrbitPartition joint_orbits(std::span<const Permutation> perms) {
    if (perms.empty()) throw InvalidArgument("joint_orbits needs at least one permutation");
    return joint_orbits(perms, perms.front().n());
}

inline OrbitPartition joint_orbits(std::initializer_list<Permutation> perms) {
    return joint_orbits(std::span<const Permutation>(perms.begin(), perms.size()));
}

inline CycleData cycle_data(const Permutation& s) {
    CycleData d;
    d.cycles = joint_orbits({s});
    d.l = d.cycles.size();
    d.length = s.n() - d.l;
    return d;
}

/// |sigma| = n - #orbits.
inline std::size_t length(const Permutation& s) { return cycle_data(s).length; }

/// |sigma_1,...,sigma_k| = n - #joint orbits.
inline std::size_t joint_codim(std::span<const Permutation> perms) {
    return perms.front().n() - joint_orbits(perms).size();
}

inline bool is_transversal(const Permutation& s, const Permutation& t) {
    if (s.n() != t.n()) throw SizeMismatch("is_transversal: different degrees");
    return length(s * t) == length(s) + length(t);
}

/// Each cycle (a1 a2 ... ak), a1 minimal, becomes (a1 a2)(a2 a3)...(a_{k-1} a_k);
/// cycles ordered by minimum. The ordered product equals s.
inline std::vector<Permutation> minimal_factorization(const Permutation& s) {
    std::vector<Permutation> out;
    for (const auto& c : s.cycles()) {
        // c lists a1, s(a1), s^2(a1), ...; the cycle (a1 a2 ... ak) sends a_i to a_{i+1}.
        for (std::size_t k = 0; k + 1 < c.size(); ++k) out.push_back(Permutation::transposition(s.n(), c[k], c[k + 1]));
    }
    return out;
}

/// Number of orbits of <perms> contained in B. Requires B to be a union of
/// such orbits.
inline std::size_t orbits_in(std::span<const Permutation> perms, const std::vector<int>& block) {
    const OrbitPartition part = joint_orbits(perms);
    std::vector<bool> inside(part.n(), false);
    for (int x : block) inside[static_cast<std::size_t>(x)] = true;
    std::size_t count = 0;
    for (const auto& b : part.blocks()) {
        std::size_t hits = 0;
        for (int x : b) hits += inside[static_cast<std::size_t>(x)] ? 1 : 0;
        if (hits != 0 && hits != b.size()) throw NotAJointOrbit("block is not a union of orbits");
        if (hits != 0) ++count;
    }
    return count;
}

/// Codimension of V_{perms} inside V_B: |B| - #orbits of <perms> on B.
inline std::size_t restricted_codim(std::span<const Permutation> perms, const std::vector<int>& block) {
    return block.size() - orbits_in(perms, block);
}

inline void require_joint_orbit(const Permutation& s, const Permutation& t, const std::vector<int>& block) {
    const OrbitPartition j = joint_orbits({s, t});
    std::vector<int> b = block;
    std::sort(b.begin(), b.end());
    for (const auto& blk : j.blocks()) {
        if (blk == b) return;
    }
    throw NotAJointOrbit("block " + OrbitPartition::block_str(b) + " is not an orbit of <" + s.str() + ", " + t.str() + ">");
}

/// Graph defect in codimension form:
/// (|s|_B + |t|_B + |st|_B - 2|s,t|_B) / 2.
inline std::size_t graph_defect(const Permutation& s, const Permutation& t, const std::vector<int>& block) {
    require_joint_orbit(s, t, block);
    const Permutation st = s * t;
    const Permutation one[] = {s};
    const Permutation two[] = {t};
    const Permutation prod[] = {st};
    const Permutation both[] = {s, t};
    const std::size_t twice = restricted_codim(one, block) + restricted_codim(two, block) + restricted_codim(prod, block);
    const std::size_t joint = 2 * restricted_codim(both, block);
    if (twice < joint || (twice - joint) % 2 != 0) {
        throw InvalidArgument("graph defect is not a nonnegative integer for " + s.str() + ", " + t.str());
    }
    return (twice - joint) / 2;
}

/// Graph defect in orbit-count form: (|B| + 2 - o_s(B) - o_t(B) - o_{st}(B)) / 2.
/// Returns twice the value so that a non-integral result stays visible.
inline long graph_defect_orbit_count_doubled(const Permutation& s, const Permutation& t, const std::vector<int>& block) {
    require_joint_orbit(s, t, block);
    const Permutation one[] = {s};
    const Permutation two[] = {t};
    const Permutation prod[] = {s * t};
    return static_cast<long>(block.size()) + 2 - static_cast<long>(orbits_in(one, block)) -
           static_cast<long>(orbits_in(two, block)) - static_cast<long>(orbits_in(prod, block));
}

/// All permutations of {0..n-1} in lexicographic order of image lists; the
/// identity comes first.
inline std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_images(images));
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

/// Position of s in all_permutations(n) (Lehmer code).
inline std::size_t permutation_rank(const Permutation& s) {
    const std::size_t n = s.n();
    std::size_t rank = 0;
    std::vector<bool> used(n, false);
    std::size_t fact = 1;
    for (std::size_t k = 2; k < n; ++k) fact *= k;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (int v = 0; v < s(static_cast<int>(i)); ++v) smaller += used[static_cast<std::size_t>(v)] ? 0 : 1;
        used[static_cast<std::size_t>(s(static_cast<int>(i)))] = true;
        rank += smaller * fact;
        if (n - 1 - i > 0) fact /= (n - 1 - i);
    }
    return rank;
}

/// Generators of the centralizer of s: for every cycle length k, the first
/// k-cycle of s (when k >= 2) and the blockwise swaps of consecutive k-cycles.
inline std::vector<Permutation> centralizer_generators(const Permutation& s) {
    const std::size_t n = s.n();
    // All orbits as cycles in s-order starting at the minimum.
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<int> c;
        for (int j = static_cast<int>(i); !seen[static_cast<std::size_t>(j)]; j = s(j)) {
            seen[static_cast<std::size_t>(j)] = true;
            c.push_back(j);
        }
        cycles.push_back(std::move(c));
    }
    std::vector<std::size_t> lengths;
    for (const auto& c : cycles) lengths.push_back(c.size());
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());

    std::vector<Permutation> gens;
    for (std::size_t k : lengths) {
        std::vector<const std::vector<int>*> same;
        for (const auto& c : cycles) {
            if (c.size() == k) same.push_back(&c);
        }
        if (k >= 2) {
            std::vector<int> img(n);
            std::iota(img.begin(), img.end(), 0);
            const auto& c = *same.front();
            for (std::size_t t = 0; t < k; ++t) img[static_cast<std::size_t>(c[t])] = c[(t + 1) % k];
            gens.push_back(Permutation::from_images(std::move(img)));
        }
        for (std::size_t a = 0; a + 1 < same.size(); ++a) {
            std::vector<int> img(n);
            std::iota(img.begin(), img.end(), 0);
            const auto& x = *same[a];
            const auto& y = *same[a + 1];
            for (std::size_t t = 0; t < k; ++t) {
                img[static_cast<std::size_t>(x[t])] = y[t];
                img[static_cast<std::size_t>(y[t])] = x[t];
            }
            gens.push_back(Permutation::from_images(std::move(img)));
        }
    }
    return gens;
}

}  // namespace orbifrob
