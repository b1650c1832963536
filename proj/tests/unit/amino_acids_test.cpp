#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "latfold/amino_acids.hpp"

using namespace latfold;

TEST_CASE("lookup") {
    const AminoAcidRecord& gly = lookup("Gly");
    CHECK(gly.property == RGroupProperty::non_polar);
    CHECK(gly.weight == 75);
    CHECK(gly.synthetase_class == SynthetaseClass::II);

    const AminoAcidRecord& trp = lookup("Trp");
    CHECK(trp.property == RGroupProperty::ring);
    CHECK(trp.weight == 204);
    CHECK(trp.synthetase_class == SynthetaseClass::I);

    CHECK(lookup("ALA").code3 == "Ala");  // case-normalized
    CHECK_THROWS_AS(lookup("Xyz"), lookup_error);
    CHECK_THROWS_AS(code3_of_letter('Z'), lookup_error);
    CHECK(code3_of_letter('W') == "Trp");
}

TEST_CASE("exactly 20 records with unique codes and positive weights") {
    const auto& table = amino_acid_table();
    CHECK(table.size() == 20);
    std::set<std::string> codes;
    for (const auto& r : table) {
        codes.insert(r.code3);
        CHECK(r.weight > 0);
    }
    CHECK(codes.size() == 20);
}

TEST_CASE("two classes of 10 each; Pro in II, Cys in I") {
    auto [c1, c2] = class_partition();
    CHECK(c1.size() == 10);
    CHECK(c2.size() == 10);
    CHECK(lookup("Pro").synthetase_class == SynthetaseClass::II);
    CHECK(lookup("Cys").synthetase_class == SynthetaseClass::I);
}

TEST_CASE("properties split equally between the classes") {
    auto balance = property_balance();
    CHECK(balance.size() == 5);
    CHECK(balance[RGroupProperty::non_polar] == std::pair{3, 3});
    CHECK(balance[RGroupProperty::polar] == std::pair{3, 3});
    CHECK(balance[RGroupProperty::negative] == std::pair{1, 1});
    CHECK(balance[RGroupProperty::positive] == std::pair{1, 1});
    CHECK(balance[RGroupProperty::ring] == std::pair{2, 2});
}

TEST_CASE("class I is heavier than class II at the mean for every property") {
    auto means = weight_ordering();
    CHECK(means.size() == 5);
    for (const auto& [prop, m] : means) CHECK(m.first > m.second);
    CHECK(means[RGroupProperty::polar].first == doctest::Approx(138.6667).epsilon(1e-4));
    CHECK(means[RGroupProperty::polar].second == doctest::Approx(118.6667).epsilon(1e-4));
    CHECK(means[RGroupProperty::negative] == std::pair{147.0, 133.0});
    CHECK(means[RGroupProperty::positive] == std::pair{174.0, 146.0});

    // the mean-level statement is the right one: element-wise it fails
    // (Asn 132 in class II outweighs Cys 121 in class I)
    CHECK(lookup("Asn").weight > lookup("Cys").weight);
}

TEST_CASE("table matches the checked-in fixture byte for byte") {
    std::ifstream in(std::string(LATFOLD_TEST_DATA_DIR) + "/amino_acids.csv", std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(amino_acid_csv() == ss.str());
}
