#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "altsieve/mtx.hpp"

using namespace altsieve;
using namespace altsieve::mtx;
using ff::Field;
using gmod::GModule;

TEST_CASE("chop of permutation modules in coprime characteristic") {
    const Field& F = Field::get(3, 1);
    auto r = chop(gmod::perm_module(5, F), 1);
    REQUIRE(r.factors.size() == 2);
    CHECK(r.total_dim() == 5);
    CHECK(r.factors[0].module.dim == 4);
    CHECK(r.factors[1].module.dim == 1);
}

TEST_CASE("chop of the uniserial permutation module in dividing characteristic") {
    const Field& F = Field::get(5, 1);
    auto r = chop(gmod::perm_module(5, F), 2);
    // 1/3/1: factors {3, 1^2}
    int dim3 = 0, dim1 = 0;
    for (auto& f : r.factors) {
        if (f.module.dim == 3) dim3 += f.multiplicity;
        if (f.module.dim == 1) dim1 += f.multiplicity;
    }
    CHECK(dim3 == 1);
    CHECK(dim1 == 2);
}

TEST_CASE("scalar extension splits a non-absolutely-irreducible factor") {
    // Lambda^2 of the 4-dimensional Alt(5)-module over GF(2) has the two
    // 2-dimensional factors which live over GF(4).
    const Field& F = Field::get(2, 1);
    auto pm = gmod::perm_module(5, F);
    auto r0 = chop(pm, 3);
    const GModule* four = nullptr;
    for (auto& f : r0.factors)
        if (f.module.dim == 4) four = &f.module;
    REQUIRE(four);
    auto r = chop(gmod::ext_square(*four), 4);
    int twos = 0, ones = 0;
    for (auto& f : r.factors) {
        if (f.module.dim == 2) {
            twos += f.multiplicity;
            CHECK(f.module.F->k == 2);  // splitting field GF(4)
        }
        if (f.module.dim == 1) ones += f.multiplicity;
    }
    CHECK(twos == 2);
    CHECK(ones == 2);
}

TEST_CASE("chop multiset is seed independent and additive on direct sums") {
    const Field& F = Field::get(2, 1);
    GModule M = gmod::perm_module(7, F);
    GModule MM = gmod::direct_sum(M, M);
    auto shape = [](const ChopResult& r) {
        std::vector<std::pair<int, int>> s;
        for (auto& f : r.factors) s.push_back({f.module.dim, f.multiplicity});
        std::sort(s.begin(), s.end());
        return s;
    };
    auto r1 = chop(M, 1);
    auto r5 = chop(M, 5);
    CHECK(shape(r1) == shape(r5));
    auto rr = chop(MM, 9);
    auto doubled = shape(r1);
    for (auto& [d, m] : doubled) m *= 2;
    CHECK(shape(rr) == doubled);
}

TEST_CASE("isomorphism detection distinguishes duals") {
    const Field& F = Field::get(2, 1);
    // Alt(7): the two 4-dimensional modules are dual to each other
    auto r = chop(gmod::perm_module_on_subsets(7, 3, F), 6);
    std::vector<const ChopFactor*> fours;
    for (auto& f : r.factors)
        if (f.module.dim == 4) fours.push_back(&f);
    if (fours.size() == 2) {
        CHECK_FALSE(is_isomorphic(fours[0]->module, fours[0]->witness, fours[1]->module));
        CHECK(is_isomorphic(fours[0]->module, fours[0]->witness, gmod::dual(fours[1]->module)));
    }
    // every simple is isomorphic to itself
    for (auto& f : r.factors) CHECK(is_isomorphic(f.module, f.witness, f.module));
}

TEST_CASE("endomorphism dimension flags absolute irreducibility") {
    const Field& F2 = Field::get(2, 1);
    auto pm = gmod::perm_module(5, F2);
    auto r = chop(pm, 3);
    for (auto& f : r.factors) CHECK(endomorphism_dim(f.module, f.witness) == 1);
}

TEST_CASE("fingerprints: trivial module and trace additivity") {
    const Field& F = Field::get(5, 1);
    auto G = perms::alt_group(5);
    std::vector<perms::ClassRep> classes;
    for (const auto& id : {"2,2", "3"}) classes.push_back(*G->find_class(id));

    GModule triv;
    triv.group = G;
    triv.F = &F;
    triv.dim = 1;
    triv.gens = {ff::Mat::identity(F, 1), ff::Mat::identity(F, 1)};
    auto fp = fingerprint(triv, classes);
    for (auto& e : fp.entries) {
        CHECK(e.eig_counts[0] == 1);
        CHECK(e.trace().rational_value() == 1);
    }

    // Brauer characters are additive on composition series: compare the
    // trace of the permutation module with the sum over its chop.
    GModule M = gmod::perm_module(5, F);
    auto r = chop(M, 11);
    for (size_t ci = 0; ci < classes.size(); ci++) {
        auto whole = fingerprint(M, {classes[ci]});
        long long total = whole.entries[0].trace().rational_value();
        long long sum = 0;
        for (auto& f : r.factors) {
            auto fp2 = fingerprint(f.module, {classes[ci]});
            sum += f.multiplicity * fp2.entries[0].trace().rational_value();
        }
        CHECK(total == sum);
    }
}

TEST_CASE("fingerprint of the 3-dimensional Alt(5) module in characteristic 5") {
    // traces: -1 at (1,2)(3,4), 0 at (1,2,3)
    const Field& F = Field::get(5, 1);
    auto r = chop(gmod::perm_module(5, F), 2);
    const GModule* three = nullptr;
    for (auto& f : r.factors)
        if (f.module.dim == 3) three = &f.module;
    REQUIRE(three);
    auto G = perms::alt_group(5);
    auto fp = fingerprint(*three, {*G->find_class("2,2"), *G->find_class("3")});
    CHECK(fp.entries[0].trace().rational_value() == -1);
    CHECK(fp.entries[1].trace().rational_value() == 0);
}

TEST_CASE("jordan partitions from the rank sequence") {
    const Field& F = Field::get(5, 1);
    GModule M = gmod::perm_module(5, F);
    auto G = perms::alt_group(5);
    auto t = jordan_partition(M, G->named_reps.at("u"));
    REQUIRE(t.size() == 1);
    CHECK(t[0] == std::pair<int, int>{5, 1});  // single block of size 5
    auto id = jordan_partition(M, perms::Perm(5));
    CHECK(id[0] == std::pair<int, int>{1, 5});
    CHECK_THROWS_AS(jordan_partition(M, G->named_reps.at("x")), PreconditionViolated);
}
