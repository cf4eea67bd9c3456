#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "altsieve/gmod.hpp"
#include "altsieve/poly.hpp"

namespace altsieve::mtx {

using ff::Elt;
using ff::Field;
using ff::Mat;
using gmod::GModule;

// Element of the group algebra: a sum of scalar multiples of words in the
// generators. Coefficients are stored as integers so the same word can be
// evaluated over any field of the right characteristic.
struct AlgebraWord {
    struct Term {
        int coeff = 1;
        std::vector<int> gens;  // generator indices, empty product = identity
    };
    std::vector<Term> terms;

    Mat evaluate(const GModule& M) const;
    std::string to_string() const;
};

// Norton witness for an (absolutely) irreducible module: a word theta and a
// polynomial f with 0 != ker f(theta) and spin(any kernel vector) = module.
struct PeakWitness {
    AlgebraWord word;
    std::vector<int> factor_coeffs;  // f over the prime subfield conventions? stored as field indices
    int field_p = 0, field_k = 0;    // field the coefficients live in

    poly::Poly factor(const Field& F) const;  // coefficients mapped into F
};

struct ChopFactor {
    GModule module;  // simple, over its splitting field
    int multiplicity = 0;
    PeakWitness witness;
};

struct ChopResult {
    std::vector<ChopFactor> factors;
    std::vector<std::string> transcript;
    int input_dim = 0;

    // Total of multiplicity * dim, in input-field dimension units.
    int total_dim() const;
};

// Split a module into composition factors (randomized MeatAxe with Norton's
// irreducibility certificate; restarts with fresh algebra elements until
// certified). The multiset of factors is independent of the seed.
ChopResult chop(const GModule& M, uint64_t seed = 1);

// Certify irreducibility of M and produce a witness; returns false if a
// proper submodule is found (returned in `sub`).
bool certify_irreducible(const GModule& M, uint64_t seed, PeakWitness& witness, gmod::Submodule& sub,
                         std::vector<std::string>* transcript = nullptr);

// Basis of Hom(S, M) for S irreducible-with-witness; linear in M and cheap
// compared to the generic solver (standard-basis method).
std::vector<Mat> homs_from_simple(const GModule& S, const PeakWitness& w, const GModule& M);

// Equivariant bijection test for two certified irreducibles.
bool is_isomorphic(const GModule& S, const PeakWitness& wS, const GModule& T);
bool is_isomorphic(const GModule& S, const GModule& T);  // derives witnesses (PreconditionViolated if reducible)

// dim_F End(S); 1 means absolutely irreducible.
int endomorphism_dim(const GModule& S, const PeakWitness& w);

// ---- Brauer character fingerprints ----------------------------------------

struct FingerprintEntry {
    std::string class_id;
    int order = 1;
    std::vector<int> eig_counts;  // a_j = dim ker(rho(g) - omega^j), j = 0..order-1
    poly::Cyclotomic trace() const;
};

struct Fingerprint {
    int dim = 0;
    std::vector<FingerprintEntry> entries;  // in class-table order
    bool operator==(const Fingerprint& o) const;
    std::string to_string() const;
};

// Eigenvalue multiplicities of the catalogued p'-classes on S. Classes whose
// order is divisible by the characteristic are skipped. Scalars are extended
// internally so each class's order divides the field size minus one.
Fingerprint fingerprint(const GModule& S, const std::vector<perms::ClassRep>& classes);

// Jordan type of a p-power-order element: partition of dim(M) from the rank
// sequence of powers of (rho(g) - 1).
std::vector<std::pair<int, int>> jordan_partition(const GModule& M, const perms::Perm& g);

// Socle machinery with injected hom oracle (defaults to the generic solver).
using HomOracle = std::function<std::vector<Mat>(const GModule& simple, const GModule& target)>;
HomOracle generic_hom_oracle();

}  // namespace altsieve::mtx
