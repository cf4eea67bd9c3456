#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "altsieve/poly.hpp"

using namespace altsieve;
using namespace altsieve::poly;
using altsieve::ff::Elt;
using altsieve::ff::Field;
using altsieve::ff::Mat;

namespace {

Poly random_poly(const Field& F, int deg, std::mt19937_64& rng) {
    std::vector<Elt> c(size_t(deg) + 1);
    for (auto& x : c) x = Elt(rng() % F.q);
    c[size_t(deg)] = 1;
    return Poly(F, c);
}

}  // namespace

TEST_CASE("division and gcd") {
    const Field& F = Field::get(5, 1);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; t++) {
        Poly a = random_poly(F, 2 + int(rng() % 6), rng);
        Poly b = random_poly(F, 1 + int(rng() % 4), rng);
        auto [q, r] = divmod(a, b);
        CHECK(equal(add(mul(q, b), r), a));
        CHECK((r.is_zero() || r.deg() < b.deg()));
        Poly g = gcd(mul(a, b), mul(a, random_poly(F, 2, rng)));
        // the gcd divides both arguments and is divisible by the common factor
        CHECK(divmod(mul(a, b), g).second.is_zero());
        CHECK(divmod(g, gcd(g, make_monic(a))).second.is_zero());
        CHECK(gcd(g, make_monic(a)).deg() >= 0);
    }
}

TEST_CASE("factorization recovers irreducible factors with multiplicity") {
    std::mt19937_64 rng(17);
    for (auto [p, k] : {std::pair<int, int>{2, 1}, {2, 2}, {3, 1}, {5, 1}, {7, 1}}) {
        const Field& F = Field::get(p, k);
        for (int t = 0; t < 15; t++) {
            Poly f = random_poly(F, 3 + int(rng() % 8), rng);
            auto facs = factor(f, rng);
            Poly prod = constant(F, 1);
            for (auto& [g, m] : facs) {
                CHECK(is_irreducible(g));
                for (int i = 0; i < m; i++) prod = mul(prod, g);
            }
            CHECK(equal(make_monic(f), prod));
        }
    }
}

TEST_CASE("x^q - x factors into all linear polynomials") {
    const Field& F = Field::get(7, 1);
    // x^7 - x over GF(7)
    std::vector<Elt> c(8, 0);
    c[7] = 1;
    c[1] = F.neg(1);
    Poly f(F, c);
    std::mt19937_64 rng(1);
    auto facs = factor(f, rng);
    CHECK(facs.size() == 7);
    for (auto& [g, m] : facs) {
        CHECK(g.deg() == 1);
        CHECK(m == 1);
    }
}

TEST_CASE("order polynomial annihilates the vector and divides the right bound") {
    const Field& F = Field::get(3, 1);
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; t++) {
        int n = 4 + int(rng() % 5);
        Mat M = Mat::random(F, n, n, rng);
        std::vector<Elt> v(n, 0);
        for (auto& x : v) x = Elt(rng() % F.q);
        Poly op = order_polynomial(M, v);
        CHECK(op.deg() <= n);
        // v * op(M) = 0
        Mat opM = eval_at_matrix(op, M);
        std::vector<Elt> image(size_t(n), 0);
        for (int i = 0; i < n; i++) {
            if (!v[size_t(i)]) continue;
            for (int j = 0; j < n; j++)
                image[size_t(j)] = F.add(image[size_t(j)], F.mul(v[size_t(i)], opM.at(i, j)));
        }
        for (auto x : image) CHECK(x == 0);
    }
}

TEST_CASE("cyclotomic integers") {
    // Phi_1 = x - 1, Phi_6 = x^2 - x + 1
    CHECK(cyclotomic_poly(1) == std::vector<long long>{-1, 1});
    CHECK(cyclotomic_poly(6) == std::vector<long long>{1, -1, 1});

    // 1 + zeta_3 + zeta_3^2 = 0
    auto z = cyclotomic_from_exponents(3, {1, 1, 1});
    CHECK(z.is_zero());

    // sum over a 5-cycle's eigenvalues on the permutation module = trace 0
    auto t5 = cyclotomic_from_exponents(5, {1, 1, 1, 1, 1});
    CHECK(t5.is_rational());
    CHECK(t5.rational_value() == 0);

    // golden-ratio style irrational value is not rational
    auto g = cyclotomic_from_exponents(5, {0, 1, 0, 0, 1});
    CHECK_FALSE(g.is_rational());

    // conductor lift preserves equality
    auto lifted = lift_conductor(cyclotomic_from_exponents(3, {0, 1, 0}), 6);
    auto direct = cyclotomic_from_exponents(6, {0, 0, 1, 0, 0, 0});
    CHECK(lifted == direct);
}
