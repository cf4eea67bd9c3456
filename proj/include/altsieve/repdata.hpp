#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "altsieve/blocks.hpp"
#include "altsieve/gmod.hpp"
#include "altsieve/jordan.hpp"
#include "altsieve/mtx.hpp"
#include "altsieve/poly.hpp"

namespace altsieve::repdata {

struct SimpleInfo {
    std::string label;
    int dim = 0;
    int h1 = 0;  // dim H^1(G, S)
    std::string dual_label;
    std::string out_partner;  // label of the image under the outer automorphism
    std::string block_id;
    std::string note;  // labelling convention, caveats
};

// One (n, p) catalogue: the simple modules over a splitting field, block
// trees where the defect group is cyclic, frozen fingerprints, and frozen
// unipotent Jordan data for simples and the shapes the screener uses.
struct Catalogue {
    int n = 0, p = 0;
    int field_k = 1;  // catalogue modules live over GF(p^field_k)
    std::vector<SimpleInfo> simples;
    std::vector<blocks::BrauerTreeLine> trees;
    std::vector<std::string> fingerprint_classes;            // class ids used by identify
    std::vector<std::string> sieve_classes;                  // p'-classes of order 2,3,5
    std::map<std::string, mtx::Fingerprint> fingerprints;    // label -> frozen fingerprint
    // (item, class id) -> Jordan type; item is a simple label or a shape string
    std::map<std::pair<std::string, std::string>, jordan::JordanType> unipotent;

    const SimpleInfo* find(const std::string& label) const;
    const SimpleInfo& need(const std::string& label) const;
    int dim_of(const std::string& label) const;
    std::map<std::string, int> dims() const;
    std::map<std::string, int> h1_map() const;
    // Brauer character value of `label` at a catalogued class.
    poly::Cyclotomic trace_of(const std::string& label, const std::string& class_id) const;
    bool cyclic_blocks() const { return !trees.empty(); }
    const blocks::BrauerTreeLine* tree_containing(const std::string& label) const;
};

// Trace constraint pattern for one semisimple class of the target group.
struct TargetPattern {
    std::string class_id;
    int order = 0;
    std::optional<poly::Cyclotomic> vmin;  // absent for E8
    std::optional<poly::Cyclotomic> lg;
};

struct TargetGroupInfo {
    std::string name;  // F4, E6, E7, E8
    int vmin_base = 0, vmin_delta_p = 0;
    int lg_base = 0, lg_delta_p = 0;
    std::vector<TargetPattern> patterns;
    std::set<int> shipped_orders;  // orders with shipped (integral) trace data

    bool has_vmin() const { return vmin_base > 0; }
    int vmin_dim(int p) const { return vmin_base - (p == vmin_delta_p ? 1 : 0); }
    int lg_dim(int p) const { return lg_base - (p == lg_delta_p ? 1 : 0); }
    // Allowed trace sets per module kind and element order.
    std::vector<const TargetPattern*> patterns_of_order(int order) const;
};

struct JordanRow {
    std::string class_name;
    std::string kind;  // "vmin" or "lg"
    jordan::JordanType type;
};

struct JordanTable {
    std::string target;
    int key = 0;                // characteristic, or 4 for the order-4 table in characteristic 2
    std::string completeness;   // "order" (all classes of this order), "nongeneric", "partial"
    std::vector<JordanRow> rows;

    // Classes acting with exactly this type on the given module kind.
    std::vector<std::string> lookup(const std::string& kind, const jordan::JordanType& t) const;
    const JordanRow* row(const std::string& class_name, const std::string& kind) const;
};

// Extra counting constants quoted from unipotent class data: minimal number
// of size-1 Jordan blocks of an involution on the given module.
struct BespokeBound {
    std::string target;
    int p = 0;
    std::string kind;
    int min_unit_blocks = 0;
};

class Data {
  public:
    // Loads (once) from the data directory; checksums verified against the
    // manifest. Directory resolution: set_dir() > ALTSIEVE_DATA env > built-in.
    static const Data& get();
    static void set_dir(const std::string& dir);
    static std::string dir();

    bool has_catalogue(int n, int p) const;
    const Catalogue& catalogue(int n, int p) const;  // throws NotCatalogued
    const TargetGroupInfo& target(const std::string& name) const;
    std::vector<std::string> target_names() const;
    const JordanTable* jordan_table(const std::string& target, int key) const;
    int min_unit_blocks(const std::string& target, int p, const std::string& kind) const;

    // Realized module for a catalogued simple (loaded from the shipped module
    // files, cached). Shape strings name the few shipped non-simple modules.
    const gmod::GModule& realized(int n, int p, const std::string& item) const;
    bool has_realized(int n, int p, const std::string& item) const;

    // identify: unique catalogued label whose fingerprint matches S.
    std::string identify(int n, int p, const gmod::GModule& S) const;
    // Identified factor multiset of a chop result.
    FactorMultiset identify_factors(int n, int p, const mtx::ChopResult& r) const;

    // Labeled socle series via the realized simples.
    std::vector<FactorMultiset> socle_series(const gmod::GModule& M) const;

    // Merge a user trace file into a copy of the target info (see README for
    // the CSV schema). Throws ParseError with line numbers.
    static TargetGroupInfo merge_trace_file(const TargetGroupInfo& base, const std::string& path);

  private:
    friend struct DataBuilder;
    std::map<std::pair<int, int>, Catalogue> catalogues_;
    std::map<std::string, TargetGroupInfo> targets_;
    std::vector<JordanTable> jordan_;
    std::vector<BespokeBound> bespoke_;
    std::vector<blocks::BrauerTreeLine> cover_trees_;  // faithful blocks of covers, by block_id
    mutable std::map<std::string, gmod::GModule> module_cache_;

  public:
    const std::vector<blocks::BrauerTreeLine>& cover_trees() const { return cover_trees_; }
};

// ---- catalogue build (the shipped, re-runnable derivation step) ------------

struct BuiltCatalogue {
    int n = 0, p = 0;
    // label -> realized module (simples plus a few shapes)
    std::map<std::string, gmod::GModule> modules;
    std::map<std::string, mtx::PeakWitness> witnesses;
    std::vector<std::string> log;
};

// Construct and label all simple modules of the (n, p) catalogue from
// permutation modules and functors; deterministic.
BuiltCatalogue build_catalogue(int n, int p);

// Regenerate the derived data files (fingerprints, unipotent tables, module
// files, manifest) under the given data directory.
void write_derived_data(const std::string& dir, const std::vector<std::pair<int, int>>& which);

// Rebuild everything and compare against the shipped files; returns a list
// of discrepancies (empty = clean audit).
std::vector<std::string> audit(const std::string& dir);

// All catalogued (n, p) pairs, in build order.
std::vector<std::pair<int, int>> catalogued_pairs();

}  // namespace altsieve::repdata
