#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "altsieve/gmod.hpp"

using namespace altsieve;
using namespace altsieve::gmod;
using ff::Field;
using ff::Mat;

TEST_CASE("permutation modules and homomorphism property") {
    const Field& F = Field::get(2, 1);
    GModule M = perm_module(6, F);
    CHECK(M.dim == 6);
    validate(M);
    // action of an arbitrary element agrees with its permutation matrix
    auto G = M.group;
    perms::Perm g = G->named_reps.at("y");
    CHECK(M.act(g) == perms::perm_matrix(g, F));
}

TEST_CASE("dual is an involution and permutation modules are self-dual") {
    const Field& F = Field::get(3, 1);
    GModule M = perm_module(5, F);
    GModule D = dual(dual(M));
    for (size_t i = 0; i < M.gens.size(); i++) CHECK(M.gens[i] == D.gens[i]);
    // self-duality: the hom space from M to dual(M) contains an isomorphism
    auto homs = hom_space(M, dual(M));
    CHECK_FALSE(homs.empty());
}

TEST_CASE("tensor, wedge and direct sum dimensions") {
    const Field& F = Field::get(5, 1);
    GModule M = perm_module(5, F);
    CHECK(tensor(M, M).dim == 25);
    CHECK(ext_square(M).dim == 10);
    CHECK(direct_sum(M, M).dim == 10);
    // wedge of a 1-dimensional module vanishes
    GModule triv;
    triv.group = M.group;
    triv.F = &F;
    triv.dim = 1;
    triv.gens = {Mat::identity(F, 1), Mat::identity(F, 1)};
    CHECK(ext_square(triv).dim == 0);
    CHECK_THROWS_AS(tensor(M, perm_module(6, F)), IncompatibleModules);
}

TEST_CASE("hom spaces: fixed vectors of permutation modules") {
    const Field& F2 = Field::get(2, 1);
    GModule triv;
    triv.group = perms::alt_group(10);
    triv.F = &F2;
    triv.dim = 1;
    triv.gens = {Mat::identity(F2, 1), Mat::identity(F2, 1)};
    GModule M = perm_module(10, F2);
    // one fixed line even though there are two trivial composition factors
    auto homs = hom_space(triv, M);
    CHECK(homs.size() == 1);
    CHECK(fixed_vectors(M).rows == 1);

    // transitive action in coprime characteristic: one fixed line as well
    const Field& F3 = Field::get(3, 1);
    GModule M5 = perm_module(5, F3);
    CHECK(fixed_vectors(M5).rows == 1);
}

TEST_CASE("spin: generated submodules") {
    const Field& F = Field::get(5, 1);
    GModule M = perm_module(5, F);
    // the all-ones vector spans a trivial submodule (p | n gives a fixed line)
    Mat ones(F, 1, 5);
    for (int j = 0; j < 5; j++) ones.at(0, j) = 1;
    auto W = spin(M, ones);
    CHECK(W.dim() == 1);
    // spinning a basis recovers the module
    auto full = spin(M, Mat::identity(F, 5));
    CHECK(full.dim() == 5);
    // empty seed spins to zero
    auto zero = spin(M, Mat(F, 0, 5));
    CHECK(zero.dim() == 0);
}

TEST_CASE("sub and quotient actions compose to the right dimensions") {
    const Field& F = Field::get(2, 1);
    GModule M = perm_module(6, F);  // uniserial 1/4/1 in characteristic 2
    Mat ones(F, 1, 6);
    for (int j = 0; j < 6; j++) ones.at(0, j) = 1;
    auto W = spin(M, ones);
    REQUIRE(W.dim() == 1);
    GModule S = sub_action(M, W);
    GModule Q = quotient_action(M, W, nullptr);
    CHECK(S.dim == 1);
    CHECK(Q.dim == 5);
    validate(S);
    validate(Q);
}

TEST_CASE("module save/load round trip is bit exact") {
    const Field& F = Field::get(2, 2);
    GModule M = ext_square(perm_module(6, F));
    std::string text = save_text(M);
    GModule L = load_text(text);
    CHECK(save_text(L) == text);
    CHECK(L.dim == M.dim);
    for (size_t i = 0; i < M.gens.size(); i++) CHECK(L.gens[i] == M.gens[i]);
}

TEST_CASE("restriction along the point stabilizer") {
    const Field& F = Field::get(2, 1);
    GModule M = perm_module(7, F);
    auto e = perms::point_stabilizer_embedding(7);
    GModule R = restrict_along(M, e);
    CHECK(R.dim == 7);
    CHECK(R.group->n == 6);
    validate(R);
    // restricting the trivial module is trivial
    GModule triv;
    triv.group = perms::alt_group(7);
    triv.F = &F;
    triv.dim = 1;
    triv.gens = {Mat::identity(F, 1), Mat::identity(F, 1)};
    GModule Rt = restrict_along(triv, e);
    CHECK(Rt.dim == 1);
    CHECK(Rt.gens[0] == Mat::identity(F, 1));
}

TEST_CASE("hom dimension symmetric under simultaneous dualization") {
    const Field& F = Field::get(2, 1);
    std::mt19937_64 rng(11);
    GModule M = perm_module(5, F);
    GModule N = ext_square(M);
    CHECK(hom_space(M, N).size() == hom_space(dual(N), dual(M)).size());
}
