#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbifrob/errors.hpp"
#include "orbifrob/permutation.hpp"
#include "orbifrob/symgroup.hpp"

namespace orbifrob {

class FiniteGroupTable;
using GroupPtr = std::shared_ptr<const FiniteGroupTable>;

/// Finite group given by an explicit multiplication table. Elements are
/// indices 0..size-1. Symmetric groups are additionally backed by
/// permutations.
class FiniteGroupTable {
public:
    /// Validates closure, identity, inverses and associativity.
    static GroupPtr from_table(std::string name, std::vector<std::string> labels, std::vector<std::vector<std::size_t>> table) {
        auto g = std::shared_ptr<FiniteGroupTable>(new FiniteGroupTable());
        g->name_ = std::move(name);
        g->labels_ = std::move(labels);
        g->table_ = std::move(table);
        g->finish(true);
        return g;
    }

    /// S_n with elements in lexicographic image order (identity first).
    static GroupPtr symmetric(std::size_t n) {
        auto g = std::shared_ptr<FiniteGroupTable>(new FiniteGroupTable());
        g->name_ = "S" + std::to_string(n);
        g->perms_ = all_permutations(n);
        g->degree_ = n;
        const std::size_t size = g->perms_.size();
        g->table_.assign(size, std::vector<std::size_t>(size));
        for (std::size_t a = 0; a < size; ++a) {
            g->labels_.push_back(g->perms_[a].str());
            for (std::size_t b = 0; b < size; ++b) g->table_[a][b] = permutation_rank(g->perms_[a] * g->perms_[b]);
        }
        for (int i = 1; i < static_cast<int>(n); ++i) {
            g->generators_.push_back(permutation_rank(Permutation::transposition(n, i, i + 1)));
        }
        // Composition of maps is associative; only identity and inverses are checked.
        g->finish(false);
        return g;
    }

    /// Z/m with element k labelled "k".
    static GroupPtr cyclic(std::size_t m) {
        std::vector<std::string> labels;
        std::vector<std::vector<std::size_t>> table(m, std::vector<std::size_t>(m));
        for (std::size_t a = 0; a < m; ++a) {
            labels.push_back(std::to_string(a));
            for (std::size_t b = 0; b < m; ++b) table[a][b] = (a + b) % m;
        }
        auto g = from_table("Z" + std::to_string(m), std::move(labels), std::move(table));
        auto mut = std::const_pointer_cast<FiniteGroupTable>(g);
        if (m > 1) mut->generators_ = {1};
        return g;
    }

    const std::string& name() const { return name_; }
    std::size_t size() const { return table_.size(); }
    std::size_t identity() const { return identity_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inv(std::size_t a) const { return inverse_[a]; }
    /// a b a^{-1}
    std::size_t conj(std::size_t a, std::size_t b) const { return conj_[a * size() + b]; }
    /// a b a^{-1} b^{-1}
    std::size_t commutator(std::size_t a, std::size_t b) const { return mul(conj(a, b), inv(b)); }
    bool commute(std::size_t a, std::size_t b) const { return mul(a, b) == mul(b, a); }

    const std::string& label(std::size_t a) const { return labels_.at(a); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Generating set used for fixed-point computations (all elements when no
    /// smaller set is known).
    const std::vector<std::size_t>& generators() const { return generators_; }

    bool is_symmetric() const { return !perms_.empty(); }
    std::size_t degree() const { return degree_; }
    const Permutation& perm(std::size_t a) const {
        if (perms_.empty()) throw InvalidArgument(name_ + " is not a symmetric group");
        return perms_.at(a);
    }
    std::size_t index_of(const Permutation& p) const {
        if (perms_.empty() || p.n() != degree_) throw InvalidArgument("permutation does not belong to " + name_);
        return permutation_rank(p);
    }

    /// Looks up an element by label; for symmetric groups any cycle notation
    /// is accepted.
    std::optional<std::size_t> find(const std::string& text) const {
        if (!perms_.empty()) {
            try {
                return index_of(Permutation::parse(text, degree_));
            } catch (const Error&) {
                return std::nullopt;
            }
        }
        auto it = label_index_.find(text);
        if (it == label_index_.end()) return std::nullopt;
        return it->second;
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    const std::vector<std::vector<std::size_t>>& conjugacy_classes() const { return classes_; }
    std::size_t class_of(std::size_t a) const { return class_of_[a]; }

private:
    FiniteGroupTable() = default;

    void finish(bool check_associativity) {
        const std::size_t n = table_.size();
        if (n == 0) throw InvalidArgument("group must be nonempty");
        if (labels_.size() != n) throw InvalidArgument("group labels length differs from table size");
        for (const auto& row : table_) {
            if (row.size() != n) throw InvalidArgument("group table is not square");
            for (auto x : row) {
                if (x >= n) throw InvalidArgument("group table entry out of range");
            }
        }
        std::optional<std::size_t> e;
        for (std::size_t a = 0; a < n && !e; ++a) {
            bool ok = true;
            for (std::size_t b = 0; b < n; ++b) ok = ok && table_[a][b] == b && table_[b][a] == b;
            if (ok) e = a;
        }
        if (!e) throw InvalidArgument("group table has no identity");
        identity_ = *e;
        inverse_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
            }
        for (auto x : inverse_) {
            if (x == n) throw InvalidArgument("group table has an element without inverse");
        }
        if (check_associativity) {
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t c = 0; c < n; ++c) {
                        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
                            throw InvalidArgument("group table is not associative at (" + labels_[a] + "," + labels_[b] + "," + labels_[c] + ")");
                        }
                    }
        }
        conj_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) conj_[a * n + b] = table_[table_[a][b]][inverse_[a]];
        class_of_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            if (class_of_[a] != n) continue;
            std::vector<std::size_t> cls;
            for (std::size_t g = 0; g < n; ++g) {
                const std::size_t c = conj_[g * n + a];
                if (class_of_[c] == n) {
                    class_of_[c] = classes_.size();
                    cls.push_back(c);
                }
            }
            std::sort(cls.begin(), cls.end());
            classes_.push_back(std::move(cls));
        }
        for (std::size_t a = 0; a < n; ++a) label_index_[labels_[a]] = a;
        if (generators_.empty()) {
            for (std::size_t a = 0; a < n; ++a) {
                if (a != identity_) generators_.push_back(a);
            }
        }
    }

    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
    std::vector<std::size_t> conj_;
    std::size_t identity_ = 0;
    std::vector<std::vector<std::size_t>> classes_;
    std::vector<std::size_t> class_of_;
    std::vector<std::size_t> generators_;
    std::map<std::string, std::size_t> label_index_;
    std::vector<Permutation> perms_;
    std::size_t degree_ = 0;
};

/// Same group: identical object, or equal name and labels (tables built by
/// the same constructor are identical).
inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
    return a == b || (a && b && a->name() == b->name() && a->labels() == b->labels());
}

}  // namespace orbifrob
