#pragma once

#include <optional>
#include <string>
#include <vector>

#include "altsieve/ff.hpp"
#include "altsieve/perms.hpp"

namespace altsieve::gmod {

using ff::Elt;
using ff::Field;
using ff::Mat;

// A module for Alt(n) over a finite field, given by one invertible matrix
// per group generator. Row-vector convention: v |-> v * rho(g).
struct GModule {
    perms::GroupPtr group;
    const Field* F = nullptr;
    int dim = 0;
    std::vector<Mat> gens;
    std::string name;

    // Action of an arbitrary group element (factored through the cached
    // generator words).
    Mat act(const perms::Perm& g) const;

    bool compatible(const GModule& o) const { return group->n == o.group->n && F->same(*o.F); }
};

// Basis of a submodule in reduced row echelon form.
struct Submodule {
    Mat basis;
    std::vector<int> pivots;
    int dim() const { return basis.rows; }
};

// Check generator matrices are invertible and have plausible orders; throws
// on failure. Construction paths inside this library are functorial, so this
// is used on load.
void validate(const GModule& M);

GModule perm_module(int n, const Field& F);
GModule perm_module_on_subsets(int n, int k, const Field& F);
GModule perm_module_on_flags(int n, int k, const Field& F);  // (k-subset, outside point)
GModule perm_module_from_tables(perms::GroupPtr G, const std::vector<std::vector<int>>& tables, const Field& F,
                                const std::string& name);

GModule dual(const GModule& M);
GModule tensor(const GModule& M, const GModule& N);
GModule ext_square(const GModule& M);
GModule direct_sum(const GModule& M, const GModule& N);
GModule direct_sum_power(const GModule& M, int copies);
GModule restrict_along(const GModule& M, const perms::SubgroupEmbedding& e);
GModule extend_scalars(const GModule& M, const Field& big);

// Basis of Hom_G(M, N): matrices X (dim M x dim N) with rho_M(g) X = X rho_N(g).
std::vector<Mat> hom_space(const GModule& M, const GModule& N);

// Smallest submodule containing the given row vectors.
Submodule spin(const GModule& M, const Mat& seeds);
Submodule whole_module(const GModule& M);

// Induced action on a submodule / on the quotient by a submodule.
GModule sub_action(const GModule& M, const Submodule& W);
GModule quotient_action(const GModule& M, const Submodule& W, std::vector<int>* complement_cols = nullptr);

// Intersection of two submodules given by row-space bases.
Submodule submodule_intersection(const Submodule& A, const Submodule& B);

// Reduce row vector v against the echelon basis; returns the residual.
std::vector<Elt> reduce_row(const Submodule& W, std::vector<Elt> v);
bool contains(const Submodule& W, const std::vector<Elt>& v);

// Sum of images of all homomorphisms from the given simples into M
// (the socle when the list exhausts the relevant simple modules).
Submodule socle_wrt(const GModule& M, const std::vector<const GModule*>& simples);

// Largest submodule all of whose composition factors lie among `simples`
// (iterated socle climbing), and the dual notion: smallest submodule whose
// quotient has all factors among `simples`.
Submodule radical_wrt(const GModule& M, const std::vector<const GModule*>& simples);
Submodule residual_wrt(const GModule& M, const std::vector<const GModule*>& simples);

// Fixed vectors of the module (hom space from the trivial module, as rows).
Mat fixed_vectors(const GModule& M);

// Text serialization; bit-exact round trip.
std::string save_text(const GModule& M);
GModule load_text(const std::string& text);
void save_file(const GModule& M, const std::string& path);
GModule load_file(const std::string& path);

}  // namespace altsieve::gmod
