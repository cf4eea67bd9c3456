#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "altsieve/ff.hpp"

using namespace altsieve;
using namespace altsieve::ff;

TEST_CASE("field construction and canonical generators") {
    const Field& F4 = Field::get(2, 2);
    CHECK(F4.q == 4);
    // omega^2 + omega + 1 = 0 for the generator of GF(4)
    Elt w = F4.gen;
    CHECK(F4.add(F4.add(F4.mul(w, w), w), 1) == 0);

    const Field& F25 = Field::get(5, 2);
    CHECK(F25.order(F25.gen) == 24);  // generator has full multiplicative order

    CHECK_THROWS_AS(Field::get(11, 1), UnsupportedField);
    CHECK_THROWS_AS(Field::get(2, 9), UnsupportedField);

    // same (p, k) gives the same object
    CHECK(&Field::get(3, 2) == &Field::get(3, 2));
}

TEST_CASE("zech addition beyond the table threshold matches digit arithmetic") {
    // fields above the lookup-table limit use Zech logarithms for addition
    const Field& F = Field::get(5, 4);
    std::mt19937_64 rng(8);
    auto digit_add = [&](int a, int b) {
        int out = 0, mult = 1;
        for (int i = 0; i < F.k; i++) {
            out += ((a % 5 + b % 5) % 5) * mult;
            a /= 5;
            b /= 5;
            mult *= 5;
        }
        return Elt(out);
    };
    for (int t = 0; t < 4000; t++) {
        Elt a = Elt(rng() % F.q), b = Elt(rng() % F.q);
        CHECK(F.add(a, b) == digit_add(a, b));
    }
    // distributivity samples
    for (int t = 0; t < 2000; t++) {
        Elt a = Elt(rng() % F.q), b = Elt(rng() % F.q), c = Elt(rng() % F.q);
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    }
}

TEST_CASE("field axioms on every element of the splitting fields") {
    for (auto [p, k] : {std::pair<int, int>{2, 2}, {3, 2}, {5, 2}, {7, 2}}) {
        const Field& F = Field::get(p, k);
        for (int a = 0; a < F.q; a++) {
            Elt ea = Elt(a);
            if (a) CHECK(F.mul(ea, F.inv(ea)) == 1);
            for (int b = 0; b < F.q; b++) {
                Elt eb = Elt(b);
                CHECK(F.add(ea, eb) == F.add(eb, ea));
                CHECK(F.mul(ea, eb) == F.mul(eb, ea));
                for (int c = 0; c < std::min(F.q, 12); c++) {
                    Elt ec = Elt(c);
                    CHECK(F.mul(ea, F.add(eb, ec)) == F.add(F.mul(ea, eb), F.mul(ea, ec)));
                    CHECK(F.add(ea, F.add(eb, ec)) == F.add(F.add(ea, eb), ec));
                    CHECK(F.mul(ea, F.mul(eb, ec)) == F.mul(F.mul(ea, eb), ec));
                }
            }
        }
    }
}

TEST_CASE("subfield embedding is a field homomorphism") {
    const Field& F4 = Field::get(2, 2);
    const Field& F16 = Field::get(2, 4);
    auto t = F16.embedding_table(F4);
    for (int a = 0; a < 4; a++)
        for (int b = 0; b < 4; b++) {
            CHECK(t[F4.add(Elt(a), Elt(b))] == F16.add(t[a], t[b]));
            CHECK(t[F4.mul(Elt(a), Elt(b))] == F16.mul(t[a], t[b]));
        }
}

TEST_CASE("rank and kernel dimensions") {
    const Field& F2 = Field::get(2, 1);
    Mat id4 = Mat::identity(F2, 4);
    CHECK(rank(id4) == 4);

    const Field& F5 = Field::get(5, 1);
    Mat z(F5, 3, 5);
    CHECK(rank(z) == 0);
    CHECK(kernel_basis(z).rows == 5);

    // permutation matrix of a 5-cycle minus the identity over GF(5)
    Mat c(F5, 5, 5);
    for (int i = 0; i < 5; i++) c.at(i, (i + 1) % 5) = 1;
    Mat m = sub(c, Mat::identity(F5, 5));
    CHECK(rank(m) == 4);
    Mat K = kernel_basis(m);
    REQUIRE(K.rows == 1);
    for (int j = 1; j < 5; j++) CHECK(K.at(0, j) == K.at(0, 0));  // all-ones direction
}

TEST_CASE("rank(M) + dim ker(M) = cols on random matrices") {
    std::mt19937_64 rng(7);
    for (auto [p, k] : {std::pair<int, int>{2, 1}, {2, 2}, {3, 1}, {5, 1}, {7, 2}}) {
        const Field& F = Field::get(p, k);
        for (int t = 0; t < 10; t++) {
            int r = 1 + int(rng() % 10), c = 1 + int(rng() % 10);
            Mat M = Mat::random(F, r, c, rng);
            CHECK(rank(M) + kernel_basis(M).rows == c);
        }
    }
}

TEST_CASE("rank of products and inverse round trip") {
    std::mt19937_64 rng(99);
    const Field& F = Field::get(3, 1);
    for (int t = 0; t < 20; t++) {
        Mat A = Mat::random(F, 6, 6, rng);
        Mat B = Mat::random(F, 6, 6, rng);
        int ra = rank(A), rb = rank(B);
        CHECK(rank(mul(A, B)) <= std::min(ra, rb));
    }
    for (int t = 0; t < 10; t++) {
        Mat A = Mat::random(F, 5, 5, rng);
        if (rank(A) < 5) continue;
        CHECK(mul(A, inverse(A)) == Mat::identity(F, 5));
    }
}

TEST_CASE("serial and parallel kernels agree") {
    std::mt19937_64 rng(1234);
    for (auto [p, k] : {std::pair<int, int>{2, 1}, {5, 1}, {5, 2}}) {
        const Field& F = Field::get(p, k);
        Mat A = Mat::random(F, 70, 70, rng);
        Mat B = Mat::random(F, 70, 70, rng);
        CHECK(kernels::mul_serial(A, B) == kernels::mul_parallel(A, B));
        Mat R1 = A, R2 = A;
        CHECK(kernels::rref_serial(R1) == kernels::rref_parallel(R2));
        CHECK(R1 == R2);
    }
}

TEST_CASE("kronecker product shape and multiplicativity") {
    std::mt19937_64 rng(5);
    const Field& F = Field::get(5, 1);
    Mat A = Mat::random(F, 3, 3, rng), B = Mat::random(F, 4, 4, rng);
    Mat C = Mat::random(F, 3, 3, rng), D = Mat::random(F, 4, 4, rng);
    CHECK(kron(mul(A, C), mul(B, D)) == mul(kron(A, B), kron(C, D)));
}
