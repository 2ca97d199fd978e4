#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orbifrob/errors.hpp"

namespace orbifrob {

/// Bijection of {0..n-1}; printed and parsed 1-based in cycle notation.
///
/// Composition: (s * t)(i) = s(t(i)), i.e. apply t first, then s.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::size_t n) : images_(n) { std::iota(images_.begin(), images_.end(), 0); }

    /// From 0-based images.
    static Permutation from_images(std::vector<int> images) {
        Permutation p;
        p.images_ = std::move(images);
        std::vector<bool> seen(p.images_.size(), false);
        for (int x : p.images_) {
            if (x < 0 || static_cast<std::size_t>(x) >= seen.size() || seen[static_cast<std::size_t>(x)]) {
                throw InvalidArgument("image list is not a bijection");
            }
            seen[static_cast<std::size_t>(x)] = true;
        }
        return p;
    }

    /// From 1-based cycles, e.g. {{1,2},{3,4}}.
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<int>>& cycles) {
        Permutation p(n);
        std::vector<bool> used(n, false);
        for (const auto& c : cycles) {
            for (std::size_t k = 0; k < c.size(); ++k) {
                const int a = c[k];
                const int b = c[(k + 1) % c.size()];
                if (a < 1 || static_cast<std::size_t>(a) > n || b < 1 || static_cast<std::size_t>(b) > n) {
                    throw InvalidArgument("cycle entry outside 1.." + std::to_string(n));
                }
                if (used[static_cast<std::size_t>(a - 1)]) throw InvalidArgument("cycles are not disjoint");
                used[static_cast<std::size_t>(a - 1)] = true;
                p.images_[static_cast<std::size_t>(a - 1)] = b - 1;
            }
        }
        return p;
    }

    static Permutation transposition(std::size_t n, int i, int j) { return from_cycles(n, {{i, j}}); }

    /// Parses cycle notation "(1 2)(3 4)", "()" for the identity. Commas are
    /// accepted as separators inside a cycle.
    static Permutation parse(std::string_view text, std::size_t n) {
        std::vector<std::vector<int>> cycles;
        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
        };
        skip_ws();
        while (i < text.size()) {
            if (text[i] != '(') throw ParseError("expected '(' in permutation '" + std::string(text) + "'");
            ++i;
            std::vector<int> cycle;
            while (true) {
                while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
                if (i >= text.size()) throw ParseError("unterminated cycle in '" + std::string(text) + "'");
                if (text[i] == ')') {
                    ++i;
                    break;
                }
                if (text[i] < '0' || text[i] > '9') throw ParseError("bad character in permutation '" + std::string(text) + "'");
                int v = 0;
                while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + (text[i++] - '0');
                cycle.push_back(v);
            }
            if (!cycle.empty()) cycles.push_back(std::move(cycle));
            skip_ws();
        }
        try {
            return from_cycles(n, cycles);
        } catch (const InvalidArgument& e) {
            throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
        }
    }

    std::size_t n() const { return images_.size(); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const {
        Permutation q(n());
        for (std::size_t i = 0; i < n(); ++i) q.images_[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
        return q;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < n(); ++i) {
            if (images_[i] != static_cast<int>(i)) return false;
        }
        return true;
    }

    /// 1-based disjoint cycles of length >= 2, each starting at its minimum,
    /// ordered by minimum.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(n(), false);
        for (std::size_t i = 0; i < n(); ++i) {
            if (seen[i]) continue;
            std::vector<int> c;
            for (int j = static_cast<int>(i); !seen[static_cast<std::size_t>(j)]; j = images_[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = true;
                c.push_back(j + 1);
            }
            if (c.size() > 1) out.push_back(std::move(c));
        }
        return out;
    }

    std::string str() const {
        std::string s;
        for (const auto& c : cycles()) {
            s += '(';
            for (std::size_t k = 0; k < c.size(); ++k) s += (k ? " " : "") + std::to_string(c[k]);
            s += ')';
        }
        return s.empty() ? "()" : s;
    }

    friend Permutation operator*(const Permutation& s, const Permutation& t) {
        if (s.n() != t.n()) throw SizeMismatch("composing permutations of different degree");
        Permutation r(s.n());
        for (std::size_t i = 0; i < s.n(); ++i) r.images_[i] = s.images_[static_cast<std::size_t>(t.images_[i])];
        return r;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

/// Partition of {0..n-1}; blocks sorted internally and ordered by minimum.
class OrbitPartition {
public:
    OrbitPartition() = default;

    /// Canonicalizes arbitrary disjoint blocks covering {0..n-1}.
    OrbitPartition(std::size_t n, std::vector<std::vector<int>> blocks) : n_(n), blocks_(std::move(blocks)), block_of_(n, -1) {
        for (auto& b : blocks_) {
            if (b.empty()) throw InvalidArgument("empty block");
            std::sort(b.begin(), b.end());
        }
        std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
        for (std::size_t k = 0; k < blocks_.size(); ++k)
            for (int x : blocks_[k]) {
                if (x < 0 || static_cast<std::size_t>(x) >= n || block_of_[static_cast<std::size_t>(x)] != -1) {
                    throw InvalidArgument("blocks do not partition the ground set");
                }
                block_of_[static_cast<std::size_t>(x)] = static_cast<int>(k);
            }
        for (int b : block_of_) {
            if (b == -1) throw InvalidArgument("blocks do not cover the ground set");
        }
    }

    std::size_t n() const { return n_; }
    std::size_t size() const { return blocks_.size(); }
    const std::vector<std::vector<int>>& blocks() const& { return blocks_; }
    std::vector<std::vector<int>> blocks() && { return std::move(blocks_); }
    const std::vector<int>& block(std::size_t k) const { return blocks_.at(k); }
    std::size_t block_of(int x) const { return static_cast<std::size_t>(block_of_.at(static_cast<std::size_t>(x))); }

    /// True when every block of this partition lies inside a block of `coarse`.
    bool refines(const OrbitPartition& coarse) const {
        for (const auto& b : blocks_)
            for (int x : b) {
                if (coarse.block_of(x) != coarse.block_of(b.front())) return false;
            }
        return true;
    }

    /// 1-based rendering "{1 2}{3}".
    std::string str() const {
        std::string s;
        for (const auto& b : blocks_) s += block_str(b);
        return s;
    }

    static std::string block_str(const std::vector<int>& b) {
        std::string s = "{";
        for (std::size_t k = 0; k < b.size(); ++k) s += (k ? " " : "") + std::to_string(b[k] + 1);
        return s + "}";
    }

    friend bool operator==(const OrbitPartition& a, const OrbitPartition& b) { return a.n_ == b.n_ && a.blocks_ == b.blocks_; }

private:
    std::size_t n_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
};

}  // namespace orbifrob
