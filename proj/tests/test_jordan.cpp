#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "altsieve/jordan.hpp"
#include "altsieve/mtx.hpp"

using namespace altsieve;
using namespace altsieve::jordan;
using ff::Field;
using ff::Mat;

TEST_CASE("jordan type parsing and rendering") {
    auto t = JordanType::parse("5^26,3");
    CHECK(t.total() == 133);
    CHECK(t.to_string() == "5^26,3");
    auto t2 = JordanType::parse("4^60 2^4");
    CHECK(t2.total() == 248);
}

TEST_CASE("jordan types of permutation actions") {
    const Field& F5 = Field::get(5, 1);
    auto M = gmod::perm_module(5, F5);
    auto G = perms::alt_group(5);
    CHECK(jordan_type(M, G->named_reps.at("u")) == JordanType::parse("5"));
    CHECK(jordan_type(M, perms::Perm(5)) == JordanType::parse("1^5"));

    // additivity over direct sums on random pairs
    const Field& F2 = Field::get(2, 1);
    auto G6 = perms::alt_group(6);
    auto A = gmod::perm_module(6, F2);
    auto B = gmod::ext_square(A);
    auto v = G6->named_reps.at("t");
    auto ta = jordan_type(A, v), tb = jordan_type(B, v);
    auto tsum = jordan_type(gmod::direct_sum(A, B), v);
    JordanType expect = ta;
    expect.merge(tb);
    CHECK(tsum == expect);

    // duality invariance
    CHECK(jordan_type(gmod::dual(B), v) == tb);
}

TEST_CASE("rank-sequence formula against direct block construction") {
    // build explicit nilpotent matrices with known block structure and check
    // the partition comes back
    std::mt19937_64 rng(31);
    const Field& F = Field::get(3, 1);
    for (int trial = 0; trial < 12; trial++) {
        std::vector<int> blocks;
        int dim = 0;
        while (dim < 9) {
            int b = 1 + int(rng() % 3);
            blocks.push_back(b);
            dim += b;
        }
        Mat J(F, dim, dim);
        int at = 0;
        for (int b : blocks) {
            for (int i = 0; i + 1 < b; i++) J.at(at + i, at + i + 1) = 1;
            at += b;
        }
        // conjugate by a random invertible matrix
        Mat P = Mat::random(F, dim, dim, rng);
        while (ff::rank(P) < dim) P = Mat::random(F, dim, dim, rng);
        Mat N = ff::mul(ff::mul(P, J), ff::inverse(P));
        // rank sequence of N
        std::vector<int> r{dim};
        Mat cur = N;
        while (true) {
            int rk = ff::rank(cur);
            r.push_back(rk);
            if (rk == 0) break;
            cur = ff::mul(cur, N);
        }
        std::map<int, int> got;
        for (int s = int(r.size()) - 1; s >= 1; s--) {
            int at = (size_t(s) < r.size()) ? r[size_t(s)] : 0;
            int up1 = (size_t(s + 1) < r.size()) ? r[size_t(s + 1)] : 0;
            int mult = r[size_t(s - 1)] - 2 * at + up1;
            if (mult) got[s] = mult;
        }
        std::map<int, int> want;
        for (int b : blocks) want[b]++;
        CHECK(got == want);
    }
}

TEST_CASE("sl2 jordan blocks for restricted weights") {
    CHECK(sl2_jordan({1, 3}, 5) == JordanType::parse("2,4"));
    CHECK(sl2_jordan({0}, 7) == JordanType::parse("1"));
    CHECK(sl2_jordan({6}, 7) == JordanType::parse("7"));
    CHECK_THROWS_AS(sl2_jordan({5}, 5), NotPRestricted);
}

TEST_CASE("free action helper") {
    CHECK(JordanType::free_action(25, 5) == JordanType::parse("5^5"));
    CHECK_THROWS_AS(JordanType::free_action(26, 5), PreconditionViolated);
}
