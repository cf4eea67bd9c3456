#pragma once

#include <optional>
#include <string>
#include <vector>

#include "altsieve/poly.hpp"
#include "altsieve/repdata.hpp"
#include "altsieve/util.hpp"

namespace altsieve::sieve {

// Allowed exact trace values for one p'-class of the acting group.
struct ClassConstraint {
    std::string h_class_id;
    int order = 0;
    std::vector<poly::Cyclotomic> allowed;
    // When false (shipped integral tables), an irrational total trace is not
    // constrained; when true the total must match a listed value exactly.
    bool complete = false;
};

// All multisets of catalogued simples with the given total dimension whose
// trace at every constrained class is admissible. Exhaustive depth-first
// search with dimension and per-class interval pruning; canonically sorted.
std::vector<FactorMultiset> enumerate_factor_sets(const repdata::Catalogue& cat, int total_dim,
                                                  const std::vector<ClassConstraint>& constraints);

struct PressureReport {
    int value = 0;
    int h1_total = 0;
    int trivial_count = 0;
    bool applicable = true;  // h1(S) = h1(S*) holds for every factor
};

PressureReport pressure(const FactorMultiset& factors, const repdata::Catalogue& cat);

enum class Verdict { FixesLine, Inconclusive };

struct RuleResult {
    Verdict verdict = Verdict::Inconclusive;
    std::string rule;
    std::string detail;
};

// Fixed line from non-positive pressure, or from a factor whose first
// cohomology exceeds the pressure. strict_parity additionally applies the
// sharper odd-trivial-count rule when the only cohomology carrier is a
// single label with two-dimensional first cohomology.
RuleResult pressure_verdict(const FactorMultiset& factors, const repdata::Catalogue& cat,
                            bool strict_parity = false);

// Counting bound for Alt(5) in characteristic 2: with a >= min_blocks_of_1
// unit Jordan blocks of an involution and a+2b trivial factors, at least
// 2a+3b two-dimensional factors are needed to avoid a fixed line.
RuleResult alt5_p2_bound(const FactorMultiset& factors, int min_blocks_of_1, const repdata::Catalogue& cat);

// Alt(8) characteristic 2, no factors of dimension 20: with n >= 1 trivials
// the multiset must contain 14^n,6^(n+1) or 14^(n+1),6^n.
RuleResult alt8_p2_no20_check(const FactorMultiset& factors, const repdata::Catalogue& cat);

}  // namespace altsieve::sieve
