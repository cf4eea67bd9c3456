#pragma once

#include <vector>

#include "altsieve/ff.hpp"

namespace altsieve::poly {

using ff::Elt;
using ff::Field;
using ff::Mat;

// Dense univariate polynomial, coefficients low -> high, normalized so the
// leading coefficient is nonzero (zero polynomial = empty vector).
struct Poly {
    const Field* F = nullptr;
    std::vector<Elt> c;

    Poly() = default;
    explicit Poly(const Field& f) : F(&f) {}
    Poly(const Field& f, std::vector<Elt> coeffs) : F(&f), c(std::move(coeffs)) { trim(); }

    void trim();
    int deg() const { return int(c.size()) - 1; }  // deg(0) = -1
    bool is_zero() const { return c.empty(); }
    Elt lead() const { return c.back(); }
    bool monic() const { return !c.empty() && c.back() == 1; }
};

Poly x_poly(const Field& F);                       // x
Poly constant(const Field& F, Elt v);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly make_monic(const Poly& a);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);
Poly pow_mod(const Poly& base, long long e, const Poly& mod);
Poly derivative(const Poly& a);
bool equal(const Poly& a, const Poly& b);

// Evaluate p(M) for a square matrix M (Horner).
Mat eval_at_matrix(const Poly& p, const Mat& M);

// Order polynomial of the vector v under M: the monic p of least degree
// with v * p(M) = 0 (row-vector convention).
Poly order_polynomial(const Mat& M, const std::vector<Elt>& v);

// Irreducible factors with multiplicity, sorted by (degree, coeffs).
std::vector<std::pair<Poly, int>> factor(const Poly& f, std::mt19937_64& rng);

bool is_irreducible(const Poly& f);

// ---- cyclotomic integers -------------------------------------------------

// Element of Z[zeta_m], stored as integer coordinates on 1, zeta, ...,
// zeta^{phi(m)-1} after reduction modulo the m-th cyclotomic polynomial.
struct Cyclotomic {
    int m = 1;
    std::vector<long long> coeffs;  // length phi(m)

    bool is_zero() const;
    bool is_rational() const;               // lies in Z
    long long rational_value() const;       // requires is_rational()
    bool operator==(const Cyclotomic& o) const { return m == o.m && coeffs == o.coeffs; }
    std::string to_string() const;
};

// Integer coefficients of the m-th cyclotomic polynomial.
std::vector<long long> cyclotomic_poly(int m);

// Build sum_j a_j zeta_m^j from exponent multiplicities.
Cyclotomic cyclotomic_from_exponents(int m, const std::vector<long long>& a);

// Lift to a common conductor so values with different m compare equal when
// they are equal as complex numbers (m' must be a multiple of m).
Cyclotomic lift_conductor(const Cyclotomic& v, int m2);

}  // namespace altsieve::poly
