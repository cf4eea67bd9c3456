#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "altsieve/perms.hpp"

using namespace altsieve;
using namespace altsieve::perms;

TEST_CASE("named representatives carry the right cycle types") {
    auto G5 = alt_group(5);
    CHECK(G5->named_reps.count("t"));
    CHECK(G5->named_reps.count("u"));
    CHECK(G5->named_reps.count("x"));
    CHECK_FALSE(G5->named_reps.count("v"));
    CHECK_FALSE(G5->named_reps.count("z"));
    CHECK(G5->named_reps.at("t").cycle_type() == std::vector<int>{2, 2});
    CHECK(G5->named_reps.at("u").cycle_type() == std::vector<int>{5});

    auto G7 = alt_group(7);
    CHECK(G7->named_reps.count("w"));
    CHECK(G7->named_reps.count("y"));
    CHECK(G7->named_reps.at("v").cycle_type() == std::vector<int>{4, 2});
    CHECK(G7->named_reps.at("y").cycle_type() == std::vector<int>{3, 3});

    auto G9 = alt_group(9);
    CHECK(G9->named_reps.at("z").cycle_type() == std::vector<int>{9});
    CHECK(G9->order == 181440ull);

    CHECK_THROWS_AS(alt_group(4), UnsupportedDegree);
    CHECK_THROWS_AS(alt_group(11), UnsupportedDegree);
}

TEST_CASE("generators generate the whole group for n <= 8") {
    for (int n = 5; n <= 8; n++) {
        auto G = alt_group(n);
        std::set<uint64_t> seen;
        std::vector<Perm> frontier{Perm(n)};
        seen.insert(frontier[0].encode());
        for (size_t head = 0; head < frontier.size(); head++) {
            for (const auto& g : G->generators) {
                Perm nx = frontier[head] * g;
                if (seen.insert(nx.encode()).second) frontier.push_back(nx);
            }
        }
        CHECK(seen.size() == G->order);
    }
}

TEST_CASE("permutation matrices are multiplicative") {
    auto G = alt_group(7);
    const auto& F = ff::Field::get(3, 1);
    std::mt19937_64 rng(5);
    auto random_element = [&]() {
        Perm g(7);
        for (int i = 0; i < 12; i++) g = g * G->generators[rng() % 2];
        return g;
    };
    for (int t = 0; t < 15; t++) {
        Perm a = random_element(), b = random_element();
        CHECK(ff::mul(perm_matrix(a, F), perm_matrix(b, F)) == perm_matrix(a * b, F));
    }
    // fixed points show up on the diagonal
    Perm tt = Perm::from_cycles("(1,2)(3,4)", 5);
    auto M = perm_matrix(tt, ff::Field::get(2, 1));
    int diag = 0;
    for (int i = 0; i < 5; i++) diag += M.at(i, i);
    CHECK(diag == 1);
}

TEST_CASE("element words reproduce the element") {
    for (int n : {5, 6, 7, 9, 10}) {
        auto G = alt_group(n);
        std::vector<Perm> step = {G->generators[0], G->generators[1], G->generators[0].inverse(),
                                  G->generators[1].inverse()};
        for (const auto& c : G->classes) {
            const auto& w = G->element_word(c.rep);
            Perm check(n);
            for (int letter : w) check = check * step[size_t(letter)];
            CHECK(check == c.rep);
        }
    }
}

TEST_CASE("point stabilizer embedding") {
    auto e = point_stabilizer_embedding(10);
    CHECK(e.sub->order == 181440ull);
    CHECK(e.ambient->order / e.sub->order == 10);
    for (const auto& img : e.images) CHECK(img(9) == 9);  // fixes the last point

    auto e9 = point_stabilizer_embedding(9);
    for (const auto& img : e9.images) CHECK(img(8) == 8);

    // orbit of the last point under the ambient group hits all n points
    auto G = alt_group(9);
    std::set<int> orbit{8};
    std::vector<int> frontier{8};
    while (!frontier.empty()) {
        int x = frontier.back();
        frontier.pop_back();
        for (const auto& g : G->generators)
            if (orbit.insert(g(x)).second) frontier.push_back(g(x));
    }
    CHECK(orbit.size() == 9);
}

TEST_CASE("split class partners are conjugate in Sym(n) but distinct in Alt(n)") {
    auto G = alt_group(5);
    const ClassRep* a = G->find_class("5");
    const ClassRep* b = G->find_class("5'");
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->rep.cycle_type() == b->rep.cycle_type());
    CHECK_FALSE(a->rep == b->rep);
    // partner must not be reachable by conjugation with even permutations:
    // spot-check by brute force over Alt(5)
    std::set<uint64_t> conjugates;
    std::vector<Perm> all{Perm(5)};
    std::set<uint64_t> seen{Perm(5).encode()};
    for (size_t head = 0; head < all.size(); head++)
        for (const auto& g : G->generators) {
            Perm nx = all[head] * g;
            if (seen.insert(nx.encode()).second) all.push_back(nx);
        }
    for (const auto& g : all) conjugates.insert((g.inverse() * a->rep * g).encode());
    CHECK(conjugates.size() == 12);  // class size 60/5
    CHECK_FALSE(conjugates.count(b->rep.encode()));
}

TEST_CASE("coset action on a small subgroup") {
    auto G = alt_group(5);
    // V4 inside Alt(5): index 15
    std::vector<Perm> v4 = {Perm::from_cycles("(1,2)(3,4)", 5), Perm::from_cycles("(1,3)(2,4)", 5)};
    auto act = coset_action(G, v4);
    CHECK(act.subgroup_order == 4);
    CHECK(act.degree == 15);
    for (const auto& t : act.tables) {
        std::set<int> im(t.begin(), t.end());
        CHECK(im.size() == t.size());  // permutation
    }
}

TEST_CASE("subset and flag actions") {
    auto subsets = k_subsets(6, 2);
    CHECK(subsets.size() == 15);
    auto G = alt_group(6);
    auto t1 = subset_action(G->generators[0], subsets);
    auto t2 = subset_action(G->generators[1], subsets);
    // composite action matches the action of the product
    auto t12 = subset_action(G->generators[0] * G->generators[1], subsets);
    for (size_t i = 0; i < subsets.size(); i++) CHECK(t12[i] == t2[size_t(t1[i])]);

    auto fs = subset_point_flags(7, 2);
    CHECK(fs.flags.size() == 21u * 5);
}
