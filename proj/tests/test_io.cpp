#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "orbifrob/io.hpp"
#include "orbifrob/sympow.hpp"

using namespace orbifrob;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(ORBIFROB_DATA_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t parse_error_line(const std::string& text) {
    try {
        algebra_from_json(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(AlgebraJson, RoundTripIsByteStable) {
    for (const auto& a : {point(), truncated_polynomial(3), milnor_univariate({0, 0, Scalar(1, 2), Scalar(1, 3)})}) {
        const std::string text = to_json(a).dump(2);
        const auto back = algebra_from_json(text);
        EXPECT_EQ(to_json(back).dump(2), text);
        EXPECT_EQ(back.dim(), a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) EXPECT_EQ(back.product(i, j), a.product(i, j));
    }
}

TEST(AlgebraJson, FixturesLoad) {
    const auto z3 = algebra_from_json(slurp("milnor_z3.json"));
    EXPECT_EQ(z3.dim(), 2u);
    EXPECT_TRUE(verify_frobenius(z3).passed());
    const auto pt = algebra_from_json(slurp("point.json"));
    EXPECT_EQ(pt.dim(), 1u);
    EXPECT_TRUE(verify_frobenius(algebra_from_json(slurp("truncated_z3.json"))).passed());
}

TEST(AlgebraJson, BrokenAssociativityParsesButFailsVerification) {
    const auto a = algebra_from_json(slurp("broken_associativity.json"));
    const auto r = verify_frobenius(a);
    EXPECT_FALSE(r.passed());
}

TEST(AlgebraJson, CorruptedIndexReportsLineAndField) {
    const std::string text = slurp("corrupted_mult.json");
    try {
        algebra_from_json(text);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        // The offending row [1, 0, 5, "1"] sits on line 10.
        EXPECT_EQ(e.line(), 10u);
        EXPECT_NE(e.field().find("mult"), std::string::npos) << e.field();
        EXPECT_NE(std::string(e.what()).find("line 10"), std::string::npos);
    }
}

TEST(AlgebraJson, MalformedInputs) {
    EXPECT_EQ(parse_error_line("{\n  \"dim\": 1,\n  \"unit\": [\"1/0\"]\n}"), 3u);
    EXPECT_THROW(algebra_from_json("{ not json"), ParseError);
    EXPECT_THROW(algebra_from_json("{\"dim\": 1}"), ParseError);
    EXPECT_THROW(algebra_from_json("[]"), ParseError);
}

TEST(CocycleJson, RoundTrip) {
    const auto alpha = schur_cocycle_sn(4);
    const auto back = cocycle_from_json(to_json(alpha).dump());
    EXPECT_EQ(back.values(), alpha.values());
    EXPECT_EQ(back.group()->size(), 24u);

    const auto cyc = TwoCocycle::trivial(FiniteGroupTable::cyclic(3));
    EXPECT_EQ(cocycle_from_json(to_json(cyc).dump()).values(), cyc.values());
}

TEST(GFrobJson, RoundTripKeepsTables) {
    for (int p : {0, 1}) {
        const auto s = SymmetricPower::build(truncated_polynomial(2), 3, {.parity = p});
        const std::string text = to_json(s.algebra()).dump(2);
        const auto back = gfrob_from_json(text);
        std::string diff;
        EXPECT_TRUE(same_tables(back, s.algebra(), &diff)) << diff;
        EXPECT_EQ(to_json(back).dump(2), text);
    }
}

TEST(GFrobJson, CyclicGroupRoundTrip) {
    const auto ring = group_ring(FiniteGroupTable::cyclic(4));
    EXPECT_TRUE(same_tables(gfrob_from_json(to_json(ring).dump()), ring));
}

TEST(ReportJson, CarriesStatusAndWitness) {
    const auto r = verify_frobenius(algebra_from_json(slurp("broken_associativity.json")));
    const auto j = to_json(r);
    EXPECT_EQ(j["passed"], false);
    bool saw_witness = false;
    for (const auto& c : j["checks"]) {
        if (c["status"] == "fail") saw_witness = saw_witness || !c["witness"].get<std::string>().empty();
    }
    EXPECT_TRUE(saw_witness) << j.dump(2);
}
