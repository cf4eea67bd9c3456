#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "altsieve/ff.hpp"

namespace altsieve::perms {

// Permutation of {0, ..., n-1}; img[i] is the image of i. Products act
// left-to-right: (g*h) maps i to h[g[i]], matching the row-vector matrix
// convention ρ(g*h) = ρ(g)ρ(h).
struct Perm {
    std::vector<int> img;

    Perm() = default;
    explicit Perm(int n) : img(n) {
        for (int i = 0; i < n; i++) img[i] = i;
    }
    int degree() const { return int(img.size()); }
    int operator()(int i) const { return img[i]; }

    Perm operator*(const Perm& o) const;
    Perm inverse() const;
    bool operator==(const Perm& o) const { return img == o.img; }
    bool is_identity() const;

    bool is_even() const;
    int order() const;
    std::vector<int> cycle_type() const;  // nontrivial cycle lengths, descending
    std::string cycle_string() const;     // 1-based, e.g. "(1,2)(3,4)"
    uint64_t encode() const;              // needs degree <= 16

    // Parse 1-based cycle notation "(1,2,3)(4,5)" as a permutation of degree n.
    static Perm from_cycles(const std::string& s, int n);
};

// Conjugacy-class representative used for Brauer-character fingerprints and
// trace constraints. Split classes (even cycle type with odd-permutation
// centralizer trivial) carry a primed partner id.
struct ClassRep {
    std::string id;  // cycle-type id such as "5,3" or its partner "5,3'"
    Perm rep;
    int order = 1;
};

struct GroupData;
using GroupPtr = std::shared_ptr<const GroupData>;

struct GroupData {
    int n = 0;
    unsigned long long order = 0;  // n!/2
    std::vector<Perm> generators;  // (1,2,3) and the standard long cycle
    std::map<std::string, Perm> named_reps;
    std::vector<ClassRep> classes;

    // Factor g as a word in the generators; letters 0,1 are the generators,
    // 2,3 their inverses. Cached (breadth-first search meets in the middle).
    const std::vector<int>& element_word(const Perm& g) const;

    const ClassRep* find_class(const std::string& id) const;

  private:
    mutable std::map<uint64_t, std::vector<int>> word_cache_;
    friend GroupPtr alt_group(int);
};

// The alternating group Alt(n), 5 <= n <= 10. Generators are (1,2,3) and
// (1,2,...,n) for odd n, (1,2,3) and (2,3,...,n) for even n.
GroupPtr alt_group(int n);

struct SubgroupEmbedding {
    GroupPtr ambient;
    GroupPtr sub;
    std::vector<Perm> images;  // image in ambient of each generator of sub
};

// Alt(n-1) embedded as the stabilizer of the last point.
SubgroupEmbedding point_stabilizer_embedding(int n);

// Permutation matrix of the point action: row i has a 1 in column g(i).
ff::Mat perm_matrix(const Perm& g, const ff::Field& F);

// Combinatorial actions used to build permutation modules beyond the point
// action: k-element subsets, and (k-subset, outside point) flags.
std::vector<std::vector<int>> k_subsets(int n, int k);
std::vector<int> subset_action(const Perm& g, const std::vector<std::vector<int>>& subsets);
struct FlagSet {
    std::vector<std::pair<int, int>> flags;  // (subset index, point)
    std::vector<std::vector<int>> subsets;
};
FlagSet subset_point_flags(int n, int k);
std::vector<int> flag_action(const Perm& g, const FlagSet& fs);

unsigned long long factorial(int n);

// Action of the group generators on the right cosets of the subgroup
// generated by `subgens` (small subgroups only; the subgroup is enumerated).
struct CosetAction {
    int degree = 0;
    unsigned long long subgroup_order = 0;
    std::vector<std::vector<int>> tables;  // one permutation table per group generator
};
CosetAction coset_action(const GroupPtr& G, const std::vector<Perm>& subgens);

// Orbits of the diagonal action on pairs of points of a permutation action;
// their 0/1 adjacency matrices span the endomorphism ring of the permutation
// module over any field.
std::vector<std::vector<std::pair<int, int>>> orbitals(const std::vector<std::vector<int>>& tables, int degree);

}  // namespace altsieve::perms
