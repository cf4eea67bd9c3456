#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "altsieve/util.hpp"

namespace altsieve::blocks {

// Brauer tree of a block with cyclic defect group. For alternating groups
// every tree is a line, with exceptionality 1, or 2 with the exceptional
// vertex at an end.
struct BrauerTreeLine {
    std::string block_id;
    std::vector<std::string> edges;  // simple labels along the line
    int exceptional_end = -1;        // -1 none, 0 left end, 1 right end
    int exceptional_multiplicity = 1;
    int defect_order = 0;  // |D|

    int e() const { return int(edges.size()); }
    bool has_edge(const std::string& s) const;
    void validate() const;  // e * mult == |D| - 1, line constraints
};

// Socle-layer description of a module, top layer first (the paper's
// "A/B/C" notation reads top to socle).
struct ModuleShape {
    std::vector<FactorMultiset> layers;

    FactorMultiset factors() const;
    int dim(const std::map<std::string, int>& dims) const;
    bool uniserial() const;
    ModuleShape dual() const;  // reverse the layers
    std::string to_string() const;
    bool operator==(const ModuleShape& o) const { return layers == o.layers; }
    bool operator<(const ModuleShape& o) const { return to_string() < o.to_string(); }
};

ModuleShape simple_shape(const std::string& label);

// Projective cover structure S/(M + N)/S by the clockwise-revolution rule.
ModuleShape pim(const BrauerTreeLine& tree, const std::string& S);

// All non-projective indecomposable modules of the block; exactly
// (|D|-1) * e shapes, closed under dualization.
std::vector<ModuleShape> indecomposables(const BrauerTreeLine& tree);

// The projective covers P(T) for T adjacent to the trivial edge, filtered to
// those with no trivial in top or socle: the only indecomposables that hide
// a trivial composition factor without a trivial submodule or quotient.
std::vector<ModuleShape> trivial_hiders(const BrauerTreeLine& tree);

struct HidingCertificate {
    enum Verdict { MustFixLine, CanHide } verdict = CanHide;
    // cost in non-trivial factors consumed per hidden trivial, for reports
    FactorMultiset consumed;
    std::vector<ModuleShape> witness;  // hiders plus leftover simples
    std::string detail;
};

// Decide whether `factors` admits a module shape with every trivial factor
// buried inside a hider (disjoint projective covers), given the trees of the
// blocks that contain the trivial module. strict_parity enables the sharper
// odd-count rule for blocks whose only cohomology carrier has 2-dimensional
// first cohomology.
HidingCertificate can_hide_trivials(const FactorMultiset& factors, const std::vector<BrauerTreeLine>& trees,
                                    bool strict_parity = false,
                                    const std::map<std::string, int>* h1 = nullptr);

}  // namespace altsieve::blocks
