#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

namespace orbifrob {

/// Element of the rational Clifford algebra on generators e_0..e_{n-1} with
/// e_i^2 = 1 and e_i e_j = -e_j e_i. Monomials are bitmasks; coefficients
/// are integers, which suffices for products of the vectors e_i - e_j.
class CliffordElement {
public:
    using Mask = std::uint32_t;

    CliffordElement() = default;
    static CliffordElement scalar(long long c) {
        CliffordElement x;
        if (c != 0) x.terms_[0] = c;
        return x;
    }
    /// e_i - e_j
    static CliffordElement difference(int i, int j) {
        CliffordElement x;
        x.terms_[Mask{1} << i] = 1;
        x.terms_[Mask{1} << j] = -1;
        return x;
    }

    const std::map<Mask, long long>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Sign of e_A e_B relative to e_{A xor B}: one factor -1 per pair
    /// (a in A, b in B) with a > b.
    static int blade_sign(Mask a, Mask b) {
        int swaps = 0;
        for (Mask rest = b; rest != 0; rest &= rest - 1) {
            const int bit = std::countr_zero(rest);
            swaps += std::popcount(a >> (bit + 1));
        }
        return (swaps % 2 == 0) ? 1 : -1;
    }

    friend CliffordElement operator*(const CliffordElement& x, const CliffordElement& y) {
        CliffordElement z;
        for (const auto& [a, ca] : x.terms_)
            for (const auto& [b, cb] : y.terms_) {
                auto& slot = z.terms_[a ^ b];
                slot += blade_sign(a, b) * ca * cb;
                if (slot == 0) z.terms_.erase(a ^ b);
            }
        return z;
    }

    friend bool operator==(const CliffordElement&, const CliffordElement&) = default;

private:
    std::map<Mask, long long> terms_;
};

}  // namespace orbifrob
