#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "altsieve/repdata.hpp"

using namespace altsieve;
using namespace altsieve::repdata;

TEST_CASE("catalogue tables load and agree with the printed data") {
    const Data& d = Data::get();
    // simple-module inventories
    CHECK(d.catalogue(5, 2).simples.size() == 4);
    CHECK(d.catalogue(7, 5).need("13").h1 == 1);
    CHECK(d.catalogue(9, 2).need("26").h1 == 2);
    CHECK(d.catalogue(9, 2).need("26").dim == 26);
    CHECK_THROWS_AS(d.catalogue(10, 3), NotCatalogued);
    CHECK_THROWS_AS(d.catalogue(9, 2).need("999"), NotCatalogued);

    // h1 symmetry under duality across all catalogues
    for (auto [n, p] : catalogued_pairs()) {
        const auto& c = d.catalogue(n, p);
        for (const auto& s : c.simples) CHECK(c.need(s.dual_label).h1 == s.h1);
    }
}

TEST_CASE("target dimension table with characteristic corrections") {
    const Data& d = Data::get();
    CHECK(d.target("F4").vmin_dim(3) == 25);
    CHECK(d.target("F4").vmin_dim(5) == 26);
    CHECK(d.target("E6").lg_dim(3) == 77);
    CHECK(d.target("E7").lg_dim(2) == 132);
    CHECK(d.target("E7").lg_dim(5) == 133);
    CHECK(d.target("E8").lg_dim(2) == 248);
    CHECK_FALSE(d.target("E8").has_vmin());
    CHECK_THROWS_AS(d.target("G2"), NotCatalogued);
}

TEST_CASE("shipped trace patterns") {
    const Data& d = Data::get();
    const auto& f4 = d.target("F4");
    auto order2 = f4.patterns_of_order(2);
    REQUIRE(order2.size() == 2);
    // correlated pairs: vmin 2 goes with lg -4, vmin -6 with lg 20
    for (auto* p : order2) {
        long long v = p->vmin->rational_value(), l = p->lg->rational_value();
        CHECK(((v == 2 && l == -4) || (v == -6 && l == 20)));
    }
    const auto& e8 = d.target("E8");
    auto order3 = e8.patterns_of_order(3);
    std::set<long long> traces;
    for (auto* p : order3) traces.insert(p->lg->rational_value());
    CHECK(traces == std::set<long long>{-4, 5, 14, 77});
    CHECK(d.target("E7").patterns_of_order(5).size() == 1);
}

TEST_CASE("jordan tables") {
    const Data& d = Data::get();
    const auto* t5 = d.jordan_table("E8", 5);
    REQUIRE(t5);
    CHECK(t5->completeness == "nongeneric");
    CHECK(t5->lookup("lg", jordan::JordanType::parse("5^45,1^23")) == std::vector<std::string>{"A4"});
    CHECK(t5->lookup("lg", jordan::JordanType::parse("5^46,3^6")).empty());
    const auto* t4 = d.jordan_table("E8", 4);
    REQUIRE(t4);
    CHECK(t4->completeness == "order");
    CHECK(t4->lookup("lg", jordan::JordanType::parse("4^60,2^4")) == std::vector<std::string>{"2A3"});
    // every row partitions the ambient dimension
    for (const std::string name : {"E8"}) {
        for (int key : {3, 4, 5}) {
            const auto* t = d.jordan_table(name, key);
            REQUIRE(t);
            for (const auto& r : t->rows) CHECK(r.type.total() == 248);
        }
    }
    const auto* e7 = d.jordan_table("E7", 5);
    REQUIRE(e7);
    for (const auto& r : e7->rows) CHECK(r.type.total() == (r.kind == "vmin" ? 56 : 133));
}

TEST_CASE("brauer trees ship with the right invariants") {
    const Data& d = Data::get();
    const auto& c75 = d.catalogue(7, 5);
    REQUIRE(c75.trees.size() == 1);
    CHECK(c75.trees[0].edges == std::vector<std::string>{"1", "13", "8", "6"});
    CHECK(c75.trees[0].exceptional_multiplicity == 1);
    const auto& c77 = d.catalogue(7, 7);
    CHECK(c77.trees[0].edges == std::vector<std::string>{"1", "5", "10"});
    CHECK(c77.trees[0].exceptional_multiplicity == 2);
    CHECK(d.cover_trees().size() == 2);
    for (const auto& t : d.cover_trees()) CHECK(t.e() == 4);
}

TEST_CASE("identify round trip over shipped realizations") {
    const Data& d = Data::get();
    for (auto [n, p] : std::vector<std::pair<int,int>>{{5,2},{5,5},{6,5},{7,2}}) {
        const auto& c = d.catalogue(n, p);
        for (const auto& s : c.simples) {
            const auto& M = d.realized(n, p, s.label);
            CHECK(d.identify(n, p, M) == s.label);
        }
    }
}

TEST_CASE("trace file merging") {
    const Data& d = Data::get();
    auto base = d.target("F4");
    // duplicating shipped rows leaves constraints unchanged in effect
    std::string dup = Data::dir() + "/traces/F4.csv";
    auto merged = Data::merge_trace_file(base, dup);
    CHECK(merged.patterns.size() == base.patterns.size());
    CHECK_THROWS_AS(Data::merge_trace_file(base, Data::dir() + "/targets.csv"), ParseError);
}
