// Walkthrough: the third symmetric power of k[z]/(z^2), a few sector
// products, the Schur twist and the invariant series.

#include <iostream>

#include "orbifrob/orbifrob.hpp"

using namespace orbifrob;

int main() {
    const auto base = truncated_polynomial(2);
    const auto s = SymmetricPower::build(base, 3, {.parity = 0});
    const auto& G = *s.group();
    const auto& A = s.algebra();

    std::cout << "Sym^3 of " << base.name() << ": total dimension " << A.total_dim() << "\n";
    for (std::size_t g = 0; g < G.size(); ++g) {
        std::cout << "  sector " << G.label(g) << ": dim " << A.dim(g) << ", shift " << A.sectors[g].shift << "\n";
    }
    std::cout << "axioms: " << (s.verification()->passed() ? "pass" : "FAIL") << "\n\n";

    const std::size_t t = *G.find("(1 2)");
    const std::size_t u = *G.find("(2 3)");
    const std::size_t c = *G.find("(1 2 3)");
    std::cout << "1_(1 2) 1_(2 3) = " << s.multiply_sectors(t, s.generator(t), u, s.generator(u)) << " in A_" << G.label(G.mul(t, u)) << "\n";
    std::cout << "1_(1 2) 1_(1 2) = " << s.multiply_sectors(t, s.generator(t), t, s.generator(t)) << " in A_()\n";
    std::cout << "1_(1 2 3)^2     = " << s.multiply_sectors(c, s.generator(c), c, s.generator(c)) << " in A_" << G.label(G.mul(c, c)) << "\n\n";

    const auto twisted = s.with_torsion(schur_cocycle_sn(3));
    std::cout << "Schur twist axioms: " << (twisted.verification()->passed() ? "pass" : "FAIL") << "\n";
    std::cout << "two-route comparison: " << (ls_compare(s).passed() ? "pass" : "FAIL") << "\n\n";

    const auto series = second_quantization(base, 4, 0);
    std::cout << "invariant dimensions:";
    for (auto x : series.coefficients) std::cout << ' ' << x;
    std::cout << "\nprod (1 - q^m)^-2:   ";
    for (auto x : series.product_formula) std::cout << ' ' << x;
    std::cout << "\n";
    return series.match.value_or(false) ? 0 : 1;
}
